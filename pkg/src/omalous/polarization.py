"""Degrees and slopes with respect to a polarization.

``deg_L(F) = integral of c1(F) * c1(L)^(dim X - 1)`` and ``mu_L = deg_L / rk``.
Nothing here decides stability; that would require ranging over subsheaves.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .chern import BundleChernData, LineBundleClass
from .chow import (
    BlowupPlane,
    CICY3Fold,
    GradedClass,
    Hypersurface3Fold,
    ProductPP,
    VarietySpec,
)
from .errors import OmalousError, VarietyMismatchError

__all__ = [
    "default_polarization",
    "degree",
    "l_coefficient",
    "l_coefficient_as_printed",
    "product_degree_closed_form",
    "slope",
]


def default_polarization(variety: VarietySpec) -> LineBundleClass:
    if isinstance(variety, ProductPP):
        return LineBundleClass(variety.gen("h1") + variety.gen("h2"))
    return LineBundleClass(variety.gen("H"))


def _check_ample(variety: VarietySpec, pol: GradedClass) -> None:
    if isinstance(variety, (Hypersurface3Fold, CICY3Fold)):
        ok = pol.homogeneous_degree() == 1 and pol["H"] >= 1
    elif isinstance(variety, BlowupPlane):
        ok = pol == variety.gen("H")
    elif isinstance(variety, ProductPP):
        ok = (
            pol.homogeneous_degree() == 1
            and pol["h1"] >= 1
            and pol["h2"] >= 1
        )
    else:
        ok = False
    if not ok:
        raise OmalousError(f"polarization {pol} is not an accepted ample class on {variety.label()}")


def degree(
    c1: GradedClass,
    variety: VarietySpec,
    pol: Union[LineBundleClass, GradedClass, None] = None,
) -> Fraction:
    """``integral of c1 * pol^(dim - 1)``."""
    if pol is None:
        pol = default_polarization(variety)
    L = pol.divisor if isinstance(pol, LineBundleClass) else pol
    if c1.variety != variety or L.variety != variety:
        raise VarietyMismatchError("degree: classes and variety disagree")
    _check_ample(variety, L)
    if c1.degrees() - {1}:
        raise OmalousError(f"degree expects a divisor class, got {c1}")
    return (c1 * L ** (variety.dimension() - 1)).integrate()


def slope(
    bundle: BundleChernData,
    variety: VarietySpec,
    pol: Union[LineBundleClass, GradedClass, None] = None,
) -> Fraction:
    if bundle.rank == 0:
        raise OmalousError("slope is undefined for rank 0")
    return degree(bundle.c1, variety, pol) / bundle.rank


def l_coefficient(n: int, m: int) -> int:
    """Coefficient of ``h1^(n-1) h2^m`` in ``(h1 + h2)^(n+m-1)`` on P^n x P^m.

    Read off the ring expansion; it equals ``C(n+m-1, n-1)``.
    """
    if n < 1 or m < 1:
        raise OmalousError("l_coefficient needs n, m >= 1")
    X = ProductPP(n, m)
    power = (X.gen("h1") + X.gen("h2")) ** (n + m - 1)
    return power.coeffs.get((n - 1, m), 0)


def l_coefficient_as_printed(n: int, m: int) -> Fraction:
    """The product ``n(n+1)...(n+m+1)/m!`` in its commonly printed form.

    Kept for comparison only: it disagrees with :func:`l_coefficient`.
    """
    return Fraction(math.prod(range(n, n + m + 2)), math.factorial(m))


def product_degree_closed_form(n: int, m: int, p: int, q: int) -> Fraction:
    """``l(n,m) * (p + (m/n) q)``: the (h1+h2)-degree of a class ``p h1 + q h2``."""
    return l_coefficient(n, m) * (p + Fraction(m, n) * q)
