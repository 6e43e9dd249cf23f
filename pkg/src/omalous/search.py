"""The omality predicate and the solvers for each omalous family.

A bundle ``E`` is omalous when ``c2(E) = c2(TX)`` and ``det(E*) = omega_X``.
All four Picard groups here are torsion-free, so the determinant condition
is exactly ``c1(E) = -K_X``. The difference ``c2(E) - c2(TX)`` is reported as
the defect class; nothing is said about its effectivity.

Stability is never computed. Tags are looked up from published theorems and
always carry a citation; anything outside those cases is ``unknown``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .chern import BundleChernData, canonical_class, tangent_data
from .chow import CICY3Fold, GradedClass, ProductPP, VarietySpec
from .errors import HypothesisError, OmalousError, VarietyMismatchError
from .monad import (
    MonadSpec,
    TermSpec,
    blowup_monad,
    cicy_monad,
    cohomology_data,
    cokernel_data,
    linear_monad,
)

__all__ = [
    "CICY_CITATION",
    "CICY_VARIETIES",
    "LINEAR_SEMISTABLE_CITATION",
    "LINEAR_STABLE_CITATION",
    "PRODUCT_CITATION",
    "OmalityReport",
    "Stability",
    "StabilityTag",
    "blowup_family",
    "cicy_catalog",
    "hypersurface_closed_form",
    "hypersurface_scan",
    "hypersurface_solutions",
    "is_omalous",
    "product_cokernel_monad",
    "product_solutions",
]


class Stability(enum.Enum):
    STABLE = "stable"
    SEMISTABLE = "semi-stable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class StabilityTag:
    kind: Stability
    citation: str = ""

    def __post_init__(self):
        if self.kind is not Stability.UNKNOWN and not self.citation:
            raise OmalousError("a stability claim needs a citation")

    @classmethod
    def unknown(cls) -> "StabilityTag":
        return cls(Stability.UNKNOWN)

    def to_json(self) -> dict:
        return {"stability": self.kind.value, "citation": self.citation}


@dataclass(frozen=True)
class OmalityReport:
    variety: VarietySpec
    rank: int
    c1_target: GradedClass
    c1_actual: GradedClass
    c2_target: GradedClass
    c2_actual: GradedClass
    defect: GradedClass
    omalous: bool

    def __post_init__(self):
        assert self.omalous == (self.c1_actual == self.c1_target and self.defect.is_zero())

    def to_json(self) -> dict:
        return {
            "schema": "1",
            "variety": self.variety.to_json(),
            "rank": self.rank,
            "c1_target": str(self.c1_target),
            "c1_actual": str(self.c1_actual),
            "c2_target": str(self.c2_target),
            "c2_actual": str(self.c2_actual),
            "defect": str(self.defect),
            "omalous": self.omalous,
        }


@lru_cache(maxsize=None)
def _targets(variety: VarietySpec) -> tuple[GradedClass, GradedClass]:
    tangent = tangent_data(variety)
    minus_k = -canonical_class(variety).divisor
    assert minus_k == tangent.c1
    return minus_k, tangent.c2


def is_omalous(bundle: BundleChernData, variety: VarietySpec) -> OmalityReport:
    if bundle.variety != variety:
        raise VarietyMismatchError(
            f"bundle lives on {bundle.variety.label()}, not {variety.label()}"
        )
    c1_target, c2_target = _targets(variety)
    c1, c2 = bundle.c1, bundle.c2
    defect = c2 - c2_target
    return OmalityReport(
        variety=variety,
        rank=bundle.rank,
        c1_target=c1_target,
        c1_actual=c1,
        c2_target=c2_target,
        c2_actual=c2,
        defect=defect,
        omalous=c1 == c1_target and defect.is_zero(),
    )


# --------------------------------------------------------------------------
# Threefold hypersurfaces
# --------------------------------------------------------------------------

# Citations name the published result each tag relies on.
LINEAR_STABLE_CITATION = "stability of rank-3 linear monad cohomology on threefolds of Picard rank one"
LINEAR_SEMISTABLE_CITATION = "semistability of linear monad cohomology on Calabi-Yau threefolds"
CICY_CITATION = "stability of rank-2 monad cohomology on Calabi-Yau complete intersections"
PRODUCT_CITATION = "stability of cokernel bundles on P^n x P^m with respect to O(1,1)"

_HYPERSURFACE_TAGS = {
    (3, 2, 1): StabilityTag(Stability.STABLE, LINEAR_STABLE_CITATION),
    (4, 1, 5): StabilityTag(Stability.STABLE, LINEAR_STABLE_CITATION),
    (5, 0, 10): StabilityTag(Stability.SEMISTABLE, LINEAR_SEMISTABLE_CITATION),
}


def hypersurface_tag(d: int, l: int, c: int) -> StabilityTag:
    return _HYPERSURFACE_TAGS.get((d, l, c), StabilityTag.unknown())


def hypersurface_scan(d_max: int) -> list[tuple[int, int, int]]:
    """Scan degrees ``1..d_max``: impose ``l = 5 - d`` and the ``c2`` equation
    ``d^2 - 5d + 10 = c + (5-d)(6-d)/2``, then confirm with the monad's Chern data.
    """
    found = []
    for d in range(1, d_max + 1):
        l = 5 - d
        twice_c = 2 * (d * d - 5 * d + 10) - (5 - d) * (6 - d)
        if twice_c < 0 or twice_c % 2:
            continue
        c = twice_c // 2
        monad = linear_monad(d, l, c)
        if is_omalous(cohomology_data(monad), monad.variety).omalous:
            found.append((d, l, c))
    return found


def hypersurface_closed_form(d_max: int) -> list[tuple[int, int, int]]:
    """Odd ``k >= 7`` gives ``d = (k-1)/2``, ``l = (11-k)/2``, ``c = (k^2-41)/8``."""
    out = []
    k = 7
    while (k - 1) // 2 <= d_max:
        out.append(((k - 1) // 2, (11 - k) // 2, (k * k - 41) // 8))
        k += 2
    return out


def hypersurface_solutions(d_max: int) -> list[tuple[int, int, int, StabilityTag]]:
    """Omalous linear monads on threefolds of degree ``<= d_max``, in order of ``d``."""
    scanned = hypersurface_scan(d_max)
    closed = hypersurface_closed_form(d_max)
    if scanned != closed:
        raise AssertionError(f"scan {scanned} disagrees with closed form {closed}")
    for d, l, c in scanned:
        # c solves the quadratic d^2 + d - (10 + 2c) = 0
        assert d == (math.isqrt(41 + 8 * c) - 1) // 2 and d * d + d == 10 + 2 * c
    return [(d, l, c, hypersurface_tag(d, l, c)) for d, l, c in scanned]


# --------------------------------------------------------------------------
# Complete intersection Calabi-Yau threefolds
# --------------------------------------------------------------------------

CICY_VARIETIES = (
    CICY3Fold(4, (5,)),
    CICY3Fold(5, (3, 3)),
    CICY3Fold(5, (4, 2)),
    CICY3Fold(6, (2, 2, 3)),
    CICY3Fold(7, (2, 2, 2, 2)),
)

_CICY_TAG = StabilityTag(Stability.STABLE, CICY_CITATION)


def cicy_catalog() -> list[tuple[CICY3Fold, int, MonadSpec, StabilityTag]]:
    rows = []
    for X in CICY_VARIETIES:
        monad = cicy_monad(X)
        c = monad.m0.rank
        closed = sum(d * d for d in X.degrees) - (X.n + 1)
        if 2 * c != closed:
            raise AssertionError(f"{X.label()}: c = {c} but closed form gives {closed}/2")
        report = is_omalous(cohomology_data(monad), X)
        if not report.omalous:
            raise AssertionError(f"{X.label()}: monad cohomology is not omalous")
        rows.append((X, c, monad, _CICY_TAG))
    return rows


# --------------------------------------------------------------------------
# Blown-up plane
# --------------------------------------------------------------------------


def blowup_family(n: int, r: int) -> tuple[MonadSpec, OmalityReport]:
    monad = blowup_monad(n, r)
    data = cohomology_data(monad)
    report = is_omalous(data, monad.variety)
    if not report.omalous or data.rank != r:
        raise AssertionError(f"blow-up monad (n={n}, r={r}) fails omality")
    return monad, report


# --------------------------------------------------------------------------
# P^n x P^m
# --------------------------------------------------------------------------

_PRODUCT_TAG = StabilityTag(Stability.STABLE, PRODUCT_CITATION)


def product_cokernel_monad(X: ProductPP, a: int, b: int, c: int) -> MonadSpec:
    """``O^a -> O(1,0)^b + O(0,1)^c`` as a monad with empty last term."""
    h1, h2 = X.gen("h1"), X.gen("h2")
    return MonadSpec(
        TermSpec(X, ((X.zero(), a),)),
        TermSpec(X, ((h1, b), (h2, c))),
        TermSpec(X, ()),
        f"cokernel of O^{a} -> O(1,0)^{b} + O(0,1)^{c}",
    )


def product_tag(a: int) -> StabilityTag:
    # a = 0 is the split sum O(1,0)^b + O(0,1)^c, which is not stable.
    return _PRODUCT_TAG if a >= 1 else StabilityTag.unknown()


def product_solutions(n: int, m: int, bound: int) -> list[tuple[int, int, int, StabilityTag]]:
    """All ``(a, b, c)`` with ``b, c <= bound`` and ``a < b + c`` whose cokernel is omalous.

    Ordered lexicographically in ``(b, c, a)``.
    """
    if bound < n + m + 2:
        raise HypothesisError(f"product search requires bound >= n + m + 2 = {n + m + 2}")
    X = ProductPP(n, m)
    h1, h2 = X.gen("h1"), X.gen("h2")
    trivial_terms = [TermSpec(X, ((X.zero(), a),)) for a in range(2 * bound)]
    out = []
    for b in range(bound + 1):
        for c in range(bound + 1):
            total = TermSpec(X, ((h1, b), (h2, c)))
            for a in range(b + c):
                quotient = cokernel_data(trivial_terms[a], total)
                if is_omalous(quotient, X).omalous:
                    out.append((a, b, c, product_tag(a)))
    expected = [(a, n + 1, m + 1) for a in range(n + m + 2)]
    if [row[:3] for row in out] != expected:
        raise AssertionError(f"product solutions {out} differ from {expected}")
    return out
