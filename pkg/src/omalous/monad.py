"""Class-level monads ``M0 -> M1 -> M2`` and the bundles they produce.

Only the terms are modelled; the maps are not. Chern data of the cohomology
``ker(beta)/im(alpha)`` follows from exactness at the two ends:
``c(E) = c(M1) / (c(M0) c(M2))`` and ``ch(E) = ch(M1) - ch(M0) - ch(M2)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Union

from .chern import (
    BundleChernData,
    LineBundleClass,
    line_bundle_data,
    tangent_data,
    trivial_data,
    whitney_quotient,
    whitney_sum,
)
from .chow import (
    BlowupPlane,
    CICY3Fold,
    GradedClass,
    Hypersurface3Fold,
    VarietySpec,
    parse_class,
    variety_from_json,
)
from .errors import HypothesisError, OmalousError, VarietyMismatchError
from .riemann_roch import monad_dimensions

__all__ = [
    "MonadFamily",
    "MonadSpec",
    "TermSpec",
    "blowup_monad",
    "build_family",
    "cicy_monad",
    "cohomology_data",
    "cokernel_data",
    "linear_monad",
    "monad_from_json",
    "monad_to_json",
    "quintic_monad",
]


@dataclass(frozen=True)
class TermSpec:
    """A formal direct sum of line bundles with multiplicities.

    Zero multiplicities are dropped; the empty term has rank 0.
    """

    variety: VarietySpec
    summands: tuple = ()

    def __post_init__(self):
        kept = []
        for D, mult in self.summands:
            D = D if isinstance(D, LineBundleClass) else LineBundleClass(D)
            if D.variety != self.variety:
                raise VarietyMismatchError(f"summand {D} does not live on {self.variety.label()}")
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 0:
                raise OmalousError(f"multiplicity must be a non-negative integer, got {mult!r}")
            if mult:
                kept.append((D, mult))
        object.__setattr__(self, "summands", tuple(kept))

    @classmethod
    def of(cls, variety: VarietySpec, *summands: tuple[Union[str, GradedClass], int]) -> "TermSpec":
        """Build from ``(divisor, mult)`` pairs where divisors may be strings."""
        return cls(
            variety,
            tuple(
                (parse_class(variety, D) if isinstance(D, str) else D, mult)
                for D, mult in summands
            ),
        )

    @property
    def rank(self) -> int:
        return sum(mult for _, mult in self.summands)

    def chern_data(self) -> BundleChernData:
        data = self.__dict__.get("_chern_data")
        if data is None:
            data = _term_data(self)
            object.__setattr__(self, "_chern_data", data)
        return data

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(mult for _, mult in self.summands)

    def to_json(self) -> list[dict]:
        return [{"divisor": str(D), "mult": mult} for D, mult in self.summands]


@lru_cache(maxsize=8192)
def _term_data(term: TermSpec) -> BundleChernData:
    if not term.summands:
        return trivial_data(term.variety, 0)
    return whitney_sum([(line_bundle_data(D), mult) for D, mult in term.summands])


@dataclass(frozen=True)
class MonadSpec:
    """Three terms over a common variety, plus a provenance note."""

    m0: TermSpec
    m1: TermSpec
    m2: TermSpec
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        X = self.m1.variety
        if self.m0.variety != X or self.m2.variety != X:
            raise VarietyMismatchError("monad terms live on different varieties")
        if self.cohomology_rank < 0:
            raise OmalousError(
                f"cohomology rank would be negative: {self.m1.rank} - {self.m0.rank} - {self.m2.rank}"
            )

    @property
    def variety(self) -> VarietySpec:
        return self.m1.variety

    @property
    def cohomology_rank(self) -> int:
        return self.m1.rank - self.m0.rank - self.m2.rank

    def total_ranks(self) -> tuple[int, int, int]:
        return self.m0.rank, self.m1.rank, self.m2.rank


def cohomology_data(monad: MonadSpec) -> BundleChernData:
    """Chern data of ``ker(beta) / im(alpha)``."""
    kernel = whitney_quotient(monad.m1.chern_data(), monad.m2.chern_data())
    return whitney_quotient(kernel, monad.m0.chern_data())


def kernel_data(monad: MonadSpec) -> BundleChernData:
    return whitney_quotient(monad.m1.chern_data(), monad.m2.chern_data())


def cokernel_data(sub: TermSpec, total: TermSpec) -> BundleChernData:
    """Chern data of ``Q`` in ``0 -> sub -> total -> Q -> 0``."""
    if sub.variety != total.variety:
        raise VarietyMismatchError("cokernel terms live on different varieties")
    if sub.rank > total.rank:
        raise OmalousError(f"rank underflow: sub has rank {sub.rank} > {total.rank}")
    return whitney_quotient(total.chern_data(), sub.chern_data())


# --------------------------------------------------------------------------
# Builders
# --------------------------------------------------------------------------


class MonadFamily(enum.Enum):
    QUINTIC = "quintic"
    LINEAR = "linear"
    CICY = "cicy"
    BLOWUP = "blowup"


def _linear_terms(X: VarietySpec, a: int, b: int, c: int, provenance: str) -> MonadSpec:
    H = X.gen("H")
    return MonadSpec(
        TermSpec(X, ((-H, a),)),
        TermSpec(X, ((X.zero(), b),)),
        TermSpec(X, ((H, c),)),
        provenance,
    )


def quintic_monad() -> MonadSpec:
    """``O(-1)^10 -> O^22 -> O(1)^10`` on the quintic threefold."""
    return _linear_terms(
        Hypersurface3Fold(5), 10, 22, 10, "rank-2 instanton-type monad on the quintic"
    )


def linear_monad(d: int, l: int, c: int) -> MonadSpec:
    """``O(-1)^(c+l) -> O^(3+2c+l) -> O(1)^c`` on a degree-``d`` threefold in P^4."""
    if c < 0:
        raise HypothesisError(f"linear monad requires c >= 0, got c={c}")
    if c + l < 0:
        raise HypothesisError(f"linear monad requires c + l >= 0, got {c + l}")
    return _linear_terms(
        Hypersurface3Fold(d), c + l, 3 + 2 * c + l, c, f"rank-3 linear monad (d={d}, l={l}, c={c})"
    )


def cicy_monad(variety: CICY3Fold) -> MonadSpec:
    """``O(-1)^c -> O^(2+2c) -> O(1)^c`` with ``c`` read off ``c2(TX) = c H^2``."""
    if not isinstance(variety, CICY3Fold):
        raise HypothesisError("CICY monad requires a complete intersection Calabi-Yau threefold")
    c2 = tangent_data(variety).c2
    c = c2["H^2"]
    if c2 != variety.gen("H") ** 2 * c or not isinstance(c, int) or c < 0:
        raise OmalousError(f"unexpected tangent c2 {c2} on {variety.label()}")
    return _linear_terms(variety, c, 2 + 2 * c, c, f"rank-2 monad on {variety.label()} (c={c})")


def blowup_monad(n: int, r: int) -> MonadSpec:
    """Monad ``⊕ K_i(-H+E_i) -> W ⊗ O -> ⊕ L_i(H-E_i)`` on the plane blown up at n points.

    ``E_0 := 0``; the dimensions of ``K_i, L_i, W`` come from Riemann-Roch.
    """
    dims = monad_dimensions(n, r)
    X = BlowupPlane(n)
    H = X.gen("H")
    E = [X.zero()] + [X.gen(f"E{i}") for i in range(1, n + 1)]
    m0 = TermSpec(X, tuple((-H + E[i], dims.dim_k[i]) for i in range(n + 1)))
    m1 = TermSpec(X, ((X.zero(), dims.dim_w),))
    m2 = TermSpec(X, tuple((H - E[i], dims.dim_l[i]) for i in range(n + 1)))
    return MonadSpec(m0, m1, m2, f"omalous monad on Bl_{n} P2, rank {r}")


def build_family(family: Union[MonadFamily, str], **params) -> MonadSpec:
    family = MonadFamily(family)
    if family is MonadFamily.QUINTIC:
        return quintic_monad()
    if family is MonadFamily.LINEAR:
        return linear_monad(params["d"], params["l"], params["c"])
    if family is MonadFamily.CICY:
        return cicy_monad(params["variety"])
    return blowup_monad(params["n"], params["r"])


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def monad_to_json(monad: MonadSpec) -> dict:
    return {
        "schema": "1",
        "variety": monad.variety.to_json(),
        "m0": monad.m0.to_json(),
        "m1": monad.m1.to_json(),
        "m2": monad.m2.to_json(),
        "provenance": monad.provenance,
    }


def _term_from_json(X: VarietySpec, data) -> TermSpec:
    if not isinstance(data, list):
        raise OmalousError("monad term must be a list of {divisor, mult} objects")
    summands = []
    for item in data:
        if not isinstance(item, dict) or set(item) - {"divisor", "mult"} or "divisor" not in item:
            raise OmalousError(f"bad summand {item!r}")
        mult = item.get("mult", 1)
        if not isinstance(mult, int) or isinstance(mult, bool):
            raise OmalousError(f"multiplicity must be an integer, got {mult!r}")
        summands.append((parse_class(X, item["divisor"]), mult))
    return TermSpec(X, tuple(summands))


def monad_from_json(data) -> MonadSpec:
    if not isinstance(data, dict):
        raise OmalousError("monad document must be a JSON object")
    if data.get("schema", "1") != "1":
        raise OmalousError(f"unsupported schema {data.get('schema')!r}")
    if "variety" not in data:
        raise OmalousError("monad document lacks 'variety'")
    X = variety_from_json(data["variety"])
    terms = [_term_from_json(X, data.get(key, [])) for key in ("m0", "m1", "m2")]
    provenance = data.get("provenance", "")
    if not isinstance(provenance, str):
        raise OmalousError("provenance must be a string")
    return MonadSpec(*terms, provenance)


def permuted(term: TermSpec, order: Iterable[int]) -> TermSpec:
    s = term.summands
    return TermSpec(term.variety, tuple(s[i] for i in order))
