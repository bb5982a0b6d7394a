"""Published loss-per-photon thresholds, embedded so the tool runs offline."""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass
from fractions import Fraction

from .graphs import ResourceFamily, ShorCode

# method | ref | network | unencoded state | encoding | qubits | lppt | boosting
_TABLE = """\
Exposure based adaptivity|DBA,FusionComplexes|LoopyDiamond|8-LD|{2,1}|16|3.9|unboosted
Exposure based adaptivity|DBA,FusionComplexes|LoopyDiamond|8-LD|{2,2}|32|9.0|unboosted
Exposure based adaptivity|DBA,FusionComplexes|LoopyDiamond|8-LD|{4,3}|96|15.4|unboosted
Exposure based adaptivity|DBA,FusionComplexes|LoopyDiamond|8-LD|{7,4}|224|18.8|unboosted
Exposure based adaptivity|DBA|6ring|6ring|{2,1}|12|2.6|unboosted
Exposure based adaptivity|DBA|6ring|6ring|{2,2}|24|7.5|unboosted
Exposure based adaptivity|DBA|6ring|6ring|{4,3}|72|13.9|unboosted
Exposure based adaptivity|DBA|6ring|6ring|{7,4}|168|17.4|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{2,2}|16|2.6|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{2,3}|24|5.0|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{2,4}|32|5.7|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{3,3}|36|7.5|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{4,3}|48|8.3|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{4,4}|64|9.7|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{5,4}|80|10.9|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{6,4}|96|11.7|unboosted
Local adaptivity|pankovich|4star dual|{2,1}-BP|{7,4}|112|12.2|unboosted
Local adaptivity|bell2023optimizing|6 ring|6 ring|4-qubit OGC|24|5.7|boosted
Local adaptivity|bell2023optimizing|6 ring|6 ring|6-qubit OGC|36|6.8|unboosted
Local adaptivity|bell2023optimizing|6 ring|6 ring|8-qubit OGC|48|9.2|unboosted
Local adaptivity|bell2023optimizing|6 ring|6 ring|10-qubit OGC|60|10.5|unboosted
Local adaptivity|songetal|4star|4 star|{2,2}|16|2.9|unboosted
Local adaptivity|songetal|4star|4 star|{2,3}|24|4.0|unboosted
Local adaptivity|songetal|4star|4 star|{2,4}|32|4.4|unboosted
Local adaptivity|songetal|4star|4 star|{3,3}|36|6.1|unboosted
Local adaptivity|songetal|4star|4 star|{4,3}|48|7.9|unboosted
Local adaptivity|songetal|4star|4 star|{5,3}|60|8.8|unboosted
Local adaptivity|songetal|4star|4 star|{6,3}|72|9.1|unboosted
Local adaptivity|songetal|4star|4 star|{5,4}|80|9.9|unboosted
Local adaptivity|songetal|4star|4 star|{6,4}|96|10.7|unboosted
Local adaptivity|songetal|4star|4 star|{7,4}|112|11.4|unboosted
Local adaptivity|songetal|4star|4 star|{10,4}|160|12.8|unboosted
Local adaptivity|songetal|4star|4 star|{9,6}|216|11.9|unboosted
Local adaptivity|songetal|4star|4 star|{17,4}|272|14.0|unboosted
Local adaptivity|songetal|4star|4 star|{14,6}|336|13.3|unboosted
Local adaptivity|songetal|6ring|6 ring|{2,2}|24|4.8|unboosted
Local adaptivity|songetal|6ring|6 ring|{2,3}|36|6.7|unboosted
Local adaptivity|songetal|6ring|6 ring|{4,2}|48|7.5|unboosted
Local adaptivity|songetal|6ring|6 ring|{3,3}|54|9.1|unboosted
Local adaptivity|songetal|6ring|6 ring|{4,3}|72|10.7|unboosted
Local adaptivity|songetal|6ring|6 ring|{5,3}|90|11.5|unboosted
Local adaptivity|songetal|6ring|6 ring|{6,3}|108|11.9|unboosted
Local adaptivity|songetal|6ring|6 ring|{5,4}|120|12.5|unboosted
Local adaptivity|songetal|6ring|6 ring|{6,4}|144|13.3|unboosted
Local adaptivity|songetal|6ring|6 ring|{7,4}|168|14.0|unboosted
Local adaptivity|songetal|6ring|6 ring|{10,4}|240|14.0|unboosted
Local adaptivity|songetal|6ring|6 ring|{9,6}|324|14.0|unboosted
Local adaptivity|songetal|6ring|6 ring|{17,4}|408|12.4|unboosted
Local adaptivity|songetal|6ring|6 ring|{12,7}|504|13.9|unboosted
Static bias arrangement|uncited|6ring|6 ring|{2,3}|36|5.1|unboosted
Static bias arrangement|uncited|6ring|6 ring|{3,4}|72|7.7|unboosted
Static bias arrangement|uncited|6ring|6 ring|{4,7}|168|11.3|unboosted
Static bias arrangement|uncited|6ring|6 ring|{5,20}|600|16.7|unboosted
Static bias arrangement|uncited|6ring|6 ring|{7,100}|4200|20.8|unboosted
Static bias arrangement|uncited|6ring|6 ring|{10,1000}|60000|23.6|unboosted
Static bias arrangement|uncited|6ring|6 ring|{13,10000}|780000|24.9|unboosted
Static bias arrangement|uncited|6ring|6 ring|{16,100000}|9600000|25.6|unboosted
Randomized failure|FBQC|6ring|6 ring|{2,2}|24|2.7|boosted
Randomized failure|FBQC|6ring|6 ring|{2,3}|36|3.5|boosted
Randomized failure|FBQC|6ring|6 ring|{3,4}|72|4.8|boosted
Randomized failure|FBQC|6ring|6 ring|{4,7}|168|5.9|boosted
Randomized failure|FBQC|6ring|6 ring|{5,20}|600|8.1|unboosted
Randomized failure|FBQC|6ring|6 ring|{7,100}|4200|11.0|unboosted
Randomized failure|FBQC|6ring|6 ring|{10,1000}|60000|13.1|unboosted
Randomized failure|FBQC|6ring|6 ring|{13,10000}|780000|13.9|unboosted
Randomized failure|FBQC|6ring|6 ring|{16,100000}|9600000|14.3|unboosted
"""

# theory limits drawn as guides on the figure
LIMIT_LINES = {"29.3%": 0.293, "38.2%": 0.382, "50%": 0.5}

_BP_PREFIX = re.compile(r"^\{(\d+),(\d+)\}-BP$")


@dataclass(frozen=True)
class ReferenceRow:
    adaptivity_method: str
    source_ref: str
    fusion_network: str
    unencoded_state: str
    local_encoding: str
    qubit_count: int
    lppt: Fraction
    boosted: bool

    @property
    def code(self) -> ShorCode | None:
        """The Shor code, or None for opaque encodings."""
        try:
            return ShorCode.parse(self.local_encoding)
        except ValueError:
            return None

    @property
    def base_size(self) -> int | None:
        m = _BP_PREFIX.match(self.unencoded_state)
        if m:
            # an encoded Bell pair
            return 2 * int(m.group(1)) * int(m.group(2))
        try:
            return ResourceFamily.parse(self.unencoded_state).base_size
        except ValueError:
            return None

    @property
    def photons(self) -> int:
        return self.qubit_count

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lppt"] = float(self.lppt)
        return d


def _parse(line: str) -> ReferenceRow:
    method, ref, net, state, enc, qubits, lppt, boost = line.split("|")
    return ReferenceRow(method, ref, net, state, enc, int(qubits),
                        Fraction(lppt) / 100, boost == "boosted")


def load_reference_table() -> list[ReferenceRow]:
    return [_parse(ln) for ln in _TABLE.splitlines() if ln.strip()]


def _match(row: ReferenceRow, key: str, want: str) -> bool:
    if not hasattr(row, key):
        raise KeyError(f"unknown reference field {key!r}")
    have = getattr(row, key)
    if isinstance(have, bool):
        return have == (want.lower() in ("1", "true", "yes", "boosted"))
    if isinstance(have, int):
        return have == int(want)
    if isinstance(have, Fraction):
        return have == Fraction(want)
    norm = lambda s: re.sub(r"[\s{}]", "", s).lower()
    return norm(have) == norm(want)


def filter_rows(rows, **criteria) -> list[ReferenceRow]:
    """Rows whose fields equal every ``key=value`` given (spaces and braces ignored)."""
    return [r for r in rows if all(_match(r, k, str(v)) for k, v in criteria.items())]


def audit_qubit_counts(rows=None) -> list[ReferenceRow]:
    """Shor rows whose qubit count disagrees with base size times n*m."""
    bad = []
    for r in rows if rows is not None else load_reference_table():
        code = r.code
        if code is None:
            continue
        base = r.base_size
        if base is None or base * code.size != r.qubit_count:
            bad.append(r)
    return bad
