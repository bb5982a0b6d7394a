"""Costing of the encoded resource states against published costs."""

from __future__ import annotations

from dataclasses import dataclass

from .cost.diagram import encoded_diagram
from .cost.schedule import lower_bound, validate_schedule
from .cost.search import optimize_schedule
from .graphs import ResourceFamily, ShorCode, apply_shor_encoding, build_base_state

# (family, code, published 3GHZ cost)
TABLE1 = (
    (ResourceFamily.FOUR_STAR, ShorCode(2, 2), 256),
    (ResourceFamily.SIX_RING, ShorCode(2, 2), 1520),
    (ResourceFamily.EIGHT_LD, ShorCode(2, 2), 1120),
    (ResourceFamily.FOUR_STAR, ShorCode(7, 4), 12928),
    (ResourceFamily.SIX_RING, ShorCode(7, 4), 66560),
    (ResourceFamily.EIGHT_LD, ShorCode(7, 4), 52480),
)
FLAG_RATIO = 1.10


@dataclass(frozen=True)
class CostRow:
    family: str
    code: str
    qubits: int
    lower_bound: int
    cost: int
    gap_percent: float      # cost above the bound, relative to the bound
    method: str
    target_matched: bool | None
    budget: int
    seed: int


def gap_percent(cost: int, bound: int) -> float:
    return round(100.0 * (cost - bound) / bound, 2)


def cost_encoded_state(family: ResourceFamily, code: ShorCode, edges=None, budget: int = 200_000,
                       seed: int = 0, validate: bool = True) -> CostRow:
    base = build_base_state(family, edges)
    diagram = encoded_diagram(base, code)
    res = optimize_schedule(diagram, search_budget=budget, seed=seed)
    matched = None
    if validate:
        matched = validate_schedule(res.tree, apply_shor_encoding(base, code))
    S = base.num_qubits * code.size
    lb = lower_bound(S)
    return CostRow(family.value, str(code), S, lb, res.cost, gap_percent(res.cost, lb),
                   res.method, matched, budget, seed)


@dataclass(frozen=True)
class Table1Row:
    row: CostRow
    published_cost: int

    @property
    def ratio(self) -> float:
        return self.row.cost / self.published_cost

    @property
    def flagged(self) -> bool:
        return self.row.cost > FLAG_RATIO * self.published_cost

    @property
    def published_gap_percent(self) -> float:
        return gap_percent(self.published_cost, self.row.lower_bound)


def report_table1(budget: int = 200_000, seed: int = 0, validate: bool = True, progress=None) -> list[Table1Row]:
    out = []
    for fam, code, published in TABLE1:
        r = Table1Row(cost_encoded_state(fam, code, budget=budget, seed=seed, validate=validate), published)
        if progress:
            progress(r)
        out.append(r)
    return out
