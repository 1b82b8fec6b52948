"""Modularity of the solutions of the Kaneko-Koike equation as a function of k.

Write ``r = (k+1)/6 = n/m`` in lowest terms.  Then

* ``2 <= m <= 5``: two independent modular solutions, invariance group Gamma(m);
* ``m == 1``: no modular pair, ``eta^(2k+2) y1`` is quasi-modular of weight k+1, depth 1;
* ``m == 6`` with integral k (k = 0, 4 mod 6): at most a one-dimensional modular space;
* anything else: no pair of independent modular solutions.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import NonPositiveR
from .series import Scalar


class Tag(str, Enum):
    FULLY_MODULAR = "FullyModular"
    PARTIALLY_MODULAR = "PartiallyModular"
    QUASI_MODULAR = "QuasiModular"
    NO_FULL_MODULARITY = "NoFullModularity"


@dataclass(frozen=True)
class ModularityClass:
    tag: Tag
    k: Fraction
    n: int
    m: int
    level: int | None = None
    weight: Fraction | None = None
    depth: int | None = None

    @property
    def r(self) -> Fraction:
        return Fraction(self.n, self.m)

    @property
    def group(self) -> str | None:
        return None if self.level is None else f"Gamma({self.level})"

    def to_dict(self) -> dict:
        out = {
            "tag": self.tag.value,
            "m": self.m,
            "n": self.n,
            "level": self.level,
            "r": str(self.r),
            "k": str(self.k),
        }
        if self.tag is Tag.QUASI_MODULAR:
            out["weight"] = str(self.weight)
            out["depth"] = self.depth
        return out


def classify(k: Scalar) -> ModularityClass:
    k = Fraction(k)
    r = (k + 1) / 6
    if r <= 0:
        raise NonPositiveR(f"k = {k} gives r = {r} <= 0")
    n, m = r.numerator, r.denominator
    if 2 <= m <= 5:
        return ModularityClass(Tag.FULLY_MODULAR, k, n, m, level=m)
    if m == 1:
        return ModularityClass(Tag.QUASI_MODULAR, k, n, m, weight=k + 1, depth=1)
    if m == 6 and k.denominator == 1:
        return ModularityClass(Tag.PARTIALLY_MODULAR, k, n, m)
    return ModularityClass(Tag.NO_FULL_MODULARITY, k, n, m)


def level5_ks(bound: int) -> list[Fraction]:
    """``k = 6n/5 - 1`` for ``1 <= n <= bound`` with ``5`` not dividing ``n``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    return [Fraction(6 * n, 5) - 1 for n in range(1, bound + 1) if n % 5]
