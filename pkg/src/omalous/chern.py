"""Chern classes and Chern characters of line bundles and their formal sums.

A :class:`BundleChernData` carries rank, total Chern class and Chern
character together. The two are propagated independently (the total class
multiplicatively, the character additively) and cross-checked on
construction through ``ch2 = (c1^2 - 2 c2)/2``, so a bookkeeping slip in
either route surfaces immediately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Union

from .chow import (
    BlowupPlane,
    CICY3Fold,
    GradedClass,
    Hypersurface3Fold,
    ProductPP,
    VarietySpec,
    truncated_inverse,
)
from .errors import OmalousError, VarietyMismatchError

__all__ = [
    "BundleChernData",
    "LineBundleClass",
    "canonical_class",
    "character_from_chern",
    "line_bundle_data",
    "tangent_data",
    "trivial_data",
    "whitney_quotient",
    "whitney_sum",
]


@dataclass(frozen=True)
class LineBundleClass:
    """A line bundle ``O(D)``, recorded by its integral divisor class ``D``."""

    divisor: GradedClass

    def __post_init__(self):
        d = self.divisor
        if not isinstance(d, GradedClass):
            raise TypeError("divisor must be a GradedClass")
        if d.degrees() - {1}:
            raise OmalousError(f"line bundle divisor must be homogeneous of degree 1, got {d}")
        if not d.is_integral():
            raise OmalousError(f"line bundle divisor must have integer coefficients, got {d}")

    @property
    def variety(self) -> VarietySpec:
        return self.divisor.variety

    def __str__(self):
        return str(self.divisor)


def _as_divisor(D: Union[LineBundleClass, GradedClass]) -> LineBundleClass:
    return D if isinstance(D, LineBundleClass) else LineBundleClass(D)


def character_from_chern(rank: int, total: GradedClass) -> GradedClass:
    """Chern character from rank and total Chern class via Newton's identities.

    With ``e_k = c_k`` the power sums satisfy
    ``p_k = (-1)^(k-1) k e_k + sum_{i<k} (-1)^(k-1+i) e_(k-i) p_i``
    and ``ch = rank + sum p_k / k!``.
    """
    X = total.variety
    dim = X.dimension()
    e = [total.part(k) for k in range(dim + 1)]
    p = [None]
    ch = X.scalar(rank)
    for k in range(1, dim + 1):
        pk = e[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            if e[k - i] and p[i]:
                pk = pk + (e[k - i] * p[i]) * ((-1) ** (k - 1 + i))
        p.append(pk)
        ch = ch + pk / math.factorial(k)
    return ch


@dataclass(frozen=True)
class BundleChernData:
    """Rank, total Chern class and Chern character of a (virtual) bundle."""

    rank: int
    total_chern: GradedClass
    character: GradedClass

    def __post_init__(self):
        c, ch = self.total_chern, self.character
        if c.variety != ch.variety:
            raise VarietyMismatchError("total Chern class and character on different varieties")
        if self.rank < 0:
            raise OmalousError(f"rank must be non-negative, got {self.rank}")
        if c.constant() != 1:
            raise OmalousError("total Chern class must have constant term 1")
        if ch.constant() != self.rank:
            raise OmalousError(f"character rank part {ch.constant()} != rank {self.rank}")
        if ch.part(1) != c.part(1):
            raise OmalousError("character degree-1 part differs from c1")
        c1, c2 = c.part(1), c.part(2)
        if ch.part(2) != (c1 * c1 - 2 * c2) / 2:
            raise OmalousError("ch2 != (c1^2 - 2 c2)/2")

    @property
    def variety(self) -> VarietySpec:
        return self.total_chern.variety

    def chern(self, k: int) -> GradedClass:
        return self.total_chern.part(k)

    @property
    def c1(self) -> GradedClass:
        return self.total_chern.part(1)

    @property
    def c2(self) -> GradedClass:
        return self.total_chern.part(2)

    @property
    def ch2(self) -> GradedClass:
        return self.character.part(2)

    @classmethod
    def from_chern_classes(cls, rank: int, total: GradedClass) -> "BundleChernData":
        return cls(rank, total, character_from_chern(rank, total))

    def with_rank(self, rank: int) -> "BundleChernData":
        """Same Chern classes, different rank (adding or removing trivial summands)."""
        if rank < 0:
            raise OmalousError(f"rank must be non-negative, got {rank}")
        # Only the constant of ch moves, so the verified invariants still hold.
        return BundleChernData._trusted(rank, self.total_chern, self.character + (rank - self.rank))

    @classmethod
    def _trusted(cls, rank: int, total: GradedClass, character: GradedClass) -> "BundleChernData":
        # Skips the consistency checks; for results of the Whitney operations,
        # which preserve them when their inputs satisfy them.
        if rank < 0:
            raise OmalousError(f"rank must be non-negative, got {rank}")
        out = object.__new__(cls)
        object.__setattr__(out, "rank", rank)
        object.__setattr__(out, "total_chern", total)
        object.__setattr__(out, "character", character)
        return out


def trivial_data(variety: VarietySpec, rank: int) -> BundleChernData:
    return BundleChernData(rank, variety.one(), variety.scalar(rank))


def line_bundle_data(D: Union[LineBundleClass, GradedClass]) -> BundleChernData:
    """Chern data of ``O(D)``: ``c = 1 + D`` and ``ch = exp(D)`` truncated."""
    return _line_bundle_data(_as_divisor(D).divisor)


@lru_cache(maxsize=4096)
def _line_bundle_data(D: GradedClass) -> BundleChernData:
    X = D.variety
    ch = X.one()
    power = X.one()
    for k in range(1, X.dimension() + 1):
        power = power * D
        if power.is_zero():
            break
        ch = ch + power / math.factorial(k)
    return BundleChernData(1, D + 1, ch)


@lru_cache(maxsize=4096)
def _power(c: GradedClass, k: int) -> GradedClass:
    # c = 1 + x with x nilpotent, so the binomial series stops at x^dim
    x = c - 1
    X = c.variety
    out = X.one()
    term = X.one()
    for j in range(1, min(k, X.dimension()) + 1):
        term = term * x
        if term.is_zero():
            break
        out = out + term * math.comb(k, j)
    return out


def whitney_sum(parts: Iterable[tuple[BundleChernData, int]]) -> BundleChernData:
    """Chern data of a direct sum ``⊕ part^mult``.

    Total Chern classes multiply, characters and ranks add.
    """
    parts = list(parts)
    if not parts:
        raise OmalousError("whitney_sum needs at least one part to fix the variety")
    X = parts[0][0].variety
    rank = 0
    total = X.one()
    ch = X.zero()
    for data, mult in parts:
        if data.variety != X:
            raise VarietyMismatchError("whitney_sum parts live on different varieties")
        if not isinstance(mult, int) or mult < 0:
            raise OmalousError(f"multiplicity must be a non-negative integer, got {mult!r}")
        if mult == 0:
            continue
        rank += mult * data.rank
        total = total * _power(data.total_chern, mult)
        ch = ch + data.character * mult
    return BundleChernData._trusted(rank, total, ch)


def whitney_quotient(total: BundleChernData, sub: BundleChernData) -> BundleChernData:
    """Chern data of ``total / sub`` for a short exact sequence ``0 -> sub -> total -> Q -> 0``."""
    if total.variety != sub.variety:
        raise VarietyMismatchError("whitney_quotient operands live on different varieties")
    rank = total.rank - sub.rank
    if rank < 0:
        raise OmalousError(f"quotient rank would be negative ({total.rank} - {sub.rank})")
    if sub.total_chern.constant() == 1 and len(sub.total_chern.coeffs) == 1 and sub.character == sub.rank:
        return total.with_rank(rank)
    return BundleChernData._trusted(
        rank,
        total.total_chern * truncated_inverse(sub.total_chern),
        total.character - sub.character,
    )


def _projective_tangent_restricted(X: VarietySpec, ambient_dim: int) -> BundleChernData:
    # Euler sequence 0 -> O -> O(1)^(N+1) -> T P^N -> 0, restricted to X.
    hyperplane = line_bundle_data(X.gen("H"))
    return whitney_quotient(whitney_sum([(hyperplane, ambient_dim + 1)]), trivial_data(X, 1))


def tangent_data(variety: VarietySpec) -> BundleChernData:
    """Chern data of the tangent bundle ``TX``.

    Hypersurfaces and complete intersections use the normal-bundle sequence
    over the restricted Euler sequence, i.e. ``(1+H)^(N+1) / prod(1 + d_i H)``.
    The blown-up plane uses ``c1 = 3H - sum E_i`` and ``c2 = (3+n) pt``.
    Products use the Euler sequence
    ``0 -> O^2 -> O(1,0)^(n+1) + O(0,1)^(m+1) -> TX -> 0``.
    """
    X = variety
    if isinstance(X, (Hypersurface3Fold, CICY3Fold)):
        ambient = 4 if isinstance(X, Hypersurface3Fold) else X.n
        degrees = (X.d,) if isinstance(X, Hypersurface3Fold) else X.degrees
        normal = whitney_sum([(line_bundle_data(X.gen("H") * d), 1) for d in degrees])
        return whitney_quotient(_projective_tangent_restricted(X, ambient), normal)
    if isinstance(X, BlowupPlane):
        c1 = 3 * X.gen("H") - sum((X.gen(f"E{i}") for i in range(1, X.n + 1)), X.zero())
        c2 = X.gen("pt") * (3 + X.n)
        return BundleChernData.from_chern_classes(2, 1 + c1 + c2)
    if isinstance(X, ProductPP):
        ambient = whitney_sum(
            [
                (line_bundle_data(X.gen("h1")), X.n + 1),
                (line_bundle_data(X.gen("h2")), X.m + 1),
            ]
        )
        return whitney_quotient(ambient, trivial_data(X, 2))
    raise OmalousError(f"unsupported variety {variety!r}")


def canonical_class(variety: VarietySpec) -> LineBundleClass:
    """Canonical divisor ``K_X`` from the adjunction/blow-up formulas."""
    X = variety
    if isinstance(X, Hypersurface3Fold):
        return LineBundleClass(X.gen("H") * (X.d - 5))
    if isinstance(X, CICY3Fold):
        return LineBundleClass(X.gen("H") * (sum(X.degrees) - X.n - 1))
    if isinstance(X, BlowupPlane):
        K = -3 * X.gen("H")
        for i in range(1, X.n + 1):
            K = K + X.gen(f"E{i}")
        return LineBundleClass(K)
    if isinstance(X, ProductPP):
        return LineBundleClass(X.gen("h1") * (-X.n - 1) + X.gen("h2") * (-X.m - 1))
    raise OmalousError(f"unsupported variety {variety!r}")


def euler_number(variety: VarietySpec) -> Fraction:
    """Topological Euler characteristic, the degree of the top Chern class."""
    return tangent_data(variety).chern(variety.dimension()).integrate()
