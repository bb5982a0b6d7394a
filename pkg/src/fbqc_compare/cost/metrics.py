"""Photons per encoded fusion: a headline metric that depends on bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..graphs import ResourceFamily, ShorCode

REPRESENTATION_WARNING = (
    "photons per encoded fusion depends on which concatenation level is called "
    "the resource state and ignores the resource state's size"
)


@dataclass(frozen=True)
class PhotonMetric:
    value: Fraction
    warning: str = REPRESENTATION_WARNING


def photons_per_encoded_fusion(family: ResourceFamily | None, code: ShorCode) -> PhotonMetric:
    """``n*m`` photons on each side of an encoded fusion, two sides.

    ``family`` is accepted for symmetry with the cost functions and is
    deliberately ignored: the metric cannot see the resource state.
    """
    return PhotonMetric(Fraction(2 * code.n * code.m))
