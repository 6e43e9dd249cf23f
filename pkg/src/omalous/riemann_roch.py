"""Riemann-Roch on the plane blown up at ``n`` points.

A sheaf is recorded by ``(r, a, a_vec, k)`` with Chern character
``r + (aH + sum a_i E_i) - (k - (a^2 - |a_vec|^2)/2) pt``, so ``k`` is its
second Chern class. A twist ``(p, q_vec)`` is the line bundle
``O(pH + sum q_i E_i)``.

:func:`euler_char` evaluates the closed formula; :func:`todd_euler_char`
integrates ``ch * td`` in the Chow ring and serves as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import BlowupPlane, GradedClass
from .errors import HypothesisError, OmalousError, VanishingAssumptionError

__all__ = [
    "BlowupSheafData",
    "MonadDimensions",
    "TwistSpec",
    "VANISHING_NOTE",
    "euler_char",
    "h1_under_vanishing",
    "monad_dimensions",
    "omalous_sheaf",
    "todd_euler_char",
]

VANISHING_NOTE = "dimension valid under cohomology vanishing (h^0 = h^2 = 0)"


@dataclass(frozen=True)
class BlowupSheafData:
    r: int
    a: int
    a_vec: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "a_vec", tuple(self.a_vec))
        if self.r < 1:
            raise OmalousError(f"rank must be >= 1, got {self.r}")

    @property
    def n(self) -> int:
        return len(self.a_vec)

    def dual(self) -> "BlowupSheafData":
        # ch(E*) = r - c1 + ch2: c1 flips sign, c1^2 and ch2 are unchanged, so k is too.
        return BlowupSheafData(self.r, -self.a, tuple(-x for x in self.a_vec), self.k)

    def character(self, X: BlowupPlane) -> GradedClass:
        _check_length(X.n, self.a_vec, "a_vec")
        c1 = _divisor(X, self.a, self.a_vec)
        ch2 = Fraction(self.a**2 - sum(x * x for x in self.a_vec), 2) - self.k
        return c1 + self.r + X.gen("pt") * ch2


@dataclass(frozen=True)
class TwistSpec:
    p: int
    q_vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "q_vec", tuple(self.q_vec))

    @classmethod
    def zero(cls, n: int) -> "TwistSpec":
        return cls(0, (0,) * n)


def _check_length(n: int, vec, name: str) -> None:
    if len(vec) != n:
        raise OmalousError(f"{name} has length {len(vec)}, expected n = {n}")


def _divisor(X: BlowupPlane, p: int, q_vec) -> GradedClass:
    D = X.gen("H") * p
    for i, q in enumerate(q_vec, start=1):
        if q:
            D = D + X.gen(f"E{i}") * q
    return D


def euler_char(sheaf: BlowupSheafData, twist: TwistSpec) -> int:
    """``chi(E(p, q_vec))`` by the closed Riemann-Roch formula on Bl_n P^2."""
    _check_length(sheaf.n, twist.q_vec, "q_vec")
    r, a, k, p = sheaf.r, sheaf.a, sheaf.k, twist.p
    discriminant = Fraction(k) - Fraction(a * (a + 3), 2) + Fraction(
        sum(x * (x - 1) for x in sheaf.a_vec), 2
    )
    twist_part = Fraction(r, 2) * (
        (p + 1) * (p + 2) - sum(q * (q - 1) for q in twist.q_vec)
    )
    cross = a * p - sum(x * q for x, q in zip(sheaf.a_vec, twist.q_vec))
    chi = -discriminant + twist_part + cross
    assert chi.denominator == 1, f"non-integral Euler characteristic {chi}"
    return int(chi)


def todd_euler_char(sheaf: BlowupSheafData, twist: TwistSpec) -> Fraction:
    """``chi`` as ``integral of ch(E) ch(O(D)) td(X)`` in the Chow ring.

    ``td = 1 - K/2 + (K^2 + e)/12 pt`` with ``K = -3H + sum E_i`` and
    Euler number ``e = 3 + n``.
    """
    X = BlowupPlane(sheaf.n)
    _check_length(X.n, twist.q_vec, "q_vec")
    K = _divisor(X, -3, (1,) * X.n)
    pt = X.gen("pt")
    todd = 1 - K / 2 + pt * Fraction((K * K).integrate() + 3 + X.n, 12)
    D = _divisor(X, twist.p, twist.q_vec)
    exp_D = 1 + D + (D * D) / 2
    return (sheaf.character(X) * exp_D * todd).integrate()


def h1_under_vanishing(sheaf: BlowupSheafData, twist: TwistSpec) -> int:
    """``h^1 = -chi``, assuming ``h^0`` and ``h^2`` vanish."""
    chi = euler_char(sheaf, twist)
    if chi > 0:
        raise VanishingAssumptionError(
            f"vanishing assumption violated: chi = {chi} > 0 cannot equal -h^1"
        )
    return -chi


def omalous_sheaf(n: int, r: int) -> BlowupSheafData:
    """Data with ``c1 = 3H - sum E_i = -K`` and ``c2 = 3 + n``."""
    return BlowupSheafData(r, 3, (-1,) * n, n + 3)


@dataclass(frozen=True)
class MonadDimensions:
    n: int
    r: int
    dim_k: tuple
    dim_l: tuple
    dim_w: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "K": list(self.dim_k),
            "L": list(self.dim_l),
            "W": self.dim_w,
            "note": VANISHING_NOTE,
        }


def _unit_twist(n: int, i: int) -> TwistSpec:
    q = [0] * n
    if i:
        q[i - 1] = 1
    return TwistSpec(-1, tuple(q))


def monad_dimensions(n: int, r: int) -> MonadDimensions:
    """Dimensions of ``K_i, L_i, W`` in the monad of an omalous rank-``r`` bundle.

    ``K_0 = H^1(E*(-1,0))``, ``K_i = L_0 = H^1(E(-1,0))`` and
    ``L_i = H^1(E(-1,E_i))`` for ``i >= 1``; each is recomputed by Riemann-Roch
    and checked against ``K = [n, 2n-3, ...]``, ``L = [2n-3, 2n-4, ...]``.
    ``W`` closes the rank count and equals ``4n(n-1) - 3 + r``.
    """
    if not isinstance(n, int) or n < 3:
        raise HypothesisError(f"blow-up monad requires n >= 3, got n={n}")
    if not isinstance(r, int) or r <= 3:
        raise HypothesisError(f"blow-up monad requires r > 3, got r={r}")
    E = omalous_sheaf(n, r)
    untwisted = _unit_twist(n, 0)
    dim_k = [h1_under_vanishing(E.dual(), untwisted)]
    dim_k += [h1_under_vanishing(E, untwisted)] * n
    dim_l = [h1_under_vanishing(E, untwisted)]
    dim_l += [h1_under_vanishing(E, _unit_twist(n, i)) for i in range(1, n + 1)]

    expected_k = [n] + [2 * n - 3] * n
    expected_l = [2 * n - 3] + [2 * n - 4] * n
    if dim_k != expected_k or dim_l != expected_l:
        raise AssertionError(f"Riemann-Roch dimensions {dim_k}, {dim_l} disagree with closed forms")
    dim_w = sum(dim_k) + sum(dim_l) + r
    if dim_w != 4 * n * (n - 1) - 3 + r:
        raise AssertionError(f"dim W = {dim_w} disagrees with 4n(n-1) - 3 + r")
    return MonadDimensions(n, r, tuple(dim_k), tuple(dim_l), dim_w)
