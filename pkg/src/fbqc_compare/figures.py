"""Threshold-versus-photons scatter data and its SVG rendering."""

from __future__ import annotations

import io
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .reference import LIMIT_LINES, ReferenceRow  # noqa: E402


@dataclass(frozen=True)
class FigurePoint:
    series: str
    photons: int
    lppt: float
    label: str = ""


def series_key(row: ReferenceRow) -> str:
    # one series per scheme: method, source and network together
    return f"{row.adaptivity_method} [{row.source_ref}] {row.fusion_network}"


def pareto_envelope(points) -> list[FigurePoint]:
    """Points not beaten by another point with no more photons and at least the same threshold."""
    keep = []
    for p in points:
        dominated = any(
            q.photons <= p.photons and q.lppt >= p.lppt and (q.photons < p.photons or q.lppt > p.lppt)
            for q in points)
        if not dominated:
            keep.append(p)
    return keep


def figure_data(rows, computed_points=(), envelope: bool = False) -> dict[str, list[FigurePoint]]:
    data: dict[str, list[FigurePoint]] = {}
    for r in rows:
        data.setdefault(series_key(r), []).append(
            FigurePoint(series_key(r), r.photons, float(r.lppt), r.local_encoding))
    for p in computed_points:
        data.setdefault(p.series, []).append(p)
    out = {}
    for key in sorted(data):
        pts = sorted(data[key], key=lambda p: (p.photons, p.lppt))
        out[key] = pareto_envelope(pts) if envelope else pts
    return out


def render_svg(data: dict[str, list[FigurePoint]], title: str = "") -> bytes:
    """SVG bytes; identical input gives identical bytes."""
    with plt.rc_context({"svg.hashsalt": "fbqc-compare", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        markers = "osD^v<>ph*"
        for i, (key, pts) in enumerate(data.items()):
            if not pts:
                continue
            ax.plot([p.photons for p in pts], [100 * p.lppt for p in pts],
                    marker=markers[i % len(markers)], linestyle="-", label=key)
        for name, val in LIMIT_LINES.items():
            ax.axhline(100 * val, color="0.6", linestyle=":", linewidth=1)
            ax.text(1.0, 100 * val, name, transform=ax.get_yaxis_transform(), fontsize=7,
                    va="bottom", ha="right", color="0.4")
        ax.set_xscale("log")
        ax.set_xlim(8, 2e7)
        ax.set_ylim(0, 55)
        ax.set_xlabel("photons per resource state")
        ax.set_ylabel("loss per photon threshold (%)")
        if title:
            ax.set_title(title)
        if any(data.values()):
            ax.legend(fontsize=6, loc="upper left")
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
        plt.close(fig)
    return buf.getvalue()


def emit_figure_data(rows, computed_points=(), envelope: bool = False, title: str = ""):
    """Scatter dataset keyed by series, plus the SVG rendering of it."""
    data = figure_data(rows, computed_points, envelope)
    return data, render_svg(data, title)
