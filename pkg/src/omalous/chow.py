"""Exact graded-ring arithmetic for the Chow rings of the supported varieties.

Four families are supported:

* :class:`Hypersurface3Fold` -- a smooth threefold of degree ``d`` in P^4,
* :class:`CICY3Fold` -- a complete intersection Calabi-Yau threefold in P^n,
* :class:`BlowupPlane` -- the blow-up of P^2 at ``n`` distinct points,
* :class:`ProductPP` -- the product P^n x P^m.

For the two threefold families the ring is the restriction of the ambient
ring, ``Z[H]/(H^4)``, with ``H^3`` integrating to the degree of the embedding.
On the blown-up plane every degree-2 product collapses onto the point class
``pt`` through the intersection form ``H^2 = 1, E_i^2 = -1`` and all other
products zero. On P^n x P^m the ring is ``Z[h1, h2]/(h1^(n+1), h2^(m+1))``.

Monomials are exponent tuples over the family's generators; on the blown-up
plane the point class is stored as the tuple for ``H^2``. Coefficients are
Python ints, or :class:`fractions.Fraction` when not integral, so no floating
point ever enters a computation.

>>> X = BlowupPlane(2)
>>> K = X.parse("-3*H + E1 + E2")
>>> str(K * K)
'7*pt'
>>> K.integrate(K)
Fraction(7, 1)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import OmalousError, VarietyMismatchError

Coefficient = Union[int, Fraction]
Monomial = tuple

__all__ = [
    "BlowupPlane",
    "CICY3Fold",
    "GradedClass",
    "Hypersurface3Fold",
    "ProductPP",
    "VarietySpec",
    "add",
    "integrate",
    "mul",
    "normalize",
    "truncated_inverse",
    "variety_from_json",
]


def normalize(x: Coefficient) -> Coefficient:
    """Return ``x`` as an int when it is integral, else as a Fraction."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise TypeError(f"exact coefficient expected, got {type(x).__name__}")


def format_coefficient(x: Coefficient) -> str:
    x = normalize(x)
    return str(x)


# --------------------------------------------------------------------------
# Varieties
# --------------------------------------------------------------------------


class VarietySpec:
    """Common interface of the four variety families.

    Subclasses provide the basis of the Chow ring, the product of two basis
    monomials and the integration normalization of the top-degree class.
    """

    family: str

    def dimension(self) -> int:
        raise NotImplementedError

    def generators(self) -> dict[str, Monomial]:
        raise NotImplementedError

    def basis(self) -> list[Monomial]:
        raise NotImplementedError

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(mono)

    def multiply_monomials(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """Product of two basis monomials as ``(sign, monomial)`` or None for zero."""
        raise NotImplementedError

    def top_class(self) -> tuple[Monomial, int]:
        """The top-degree basis monomial and the value of its integral."""
        raise NotImplementedError

    def render_monomial(self, mono: Monomial) -> str:
        raise NotImplementedError

    def monomial_sort_key(self, mono: Monomial) -> tuple:
        raise NotImplementedError

    def unit_monomial(self) -> Monomial:
        try:
            return self.__dict__["_unit_monomial"]
        except KeyError:
            unit = (0,) * len(self.generators_order())
            self.__dict__["_unit_monomial"] = unit
            return unit

    def product_of(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """Memoized :meth:`multiply_monomials`."""
        table = self.__dict__.setdefault("_products", {})
        try:
            return table[a, b]
        except KeyError:
            res = table[a, b] = self.multiply_monomials(a, b)
            return res

    def generators_order(self) -> tuple[str, ...]:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def label(self) -> str:
        raise NotImplementedError

    # convenience constructors -------------------------------------------

    def one(self) -> "GradedClass":
        return GradedClass._raw(self, {self.unit_monomial(): 1})

    def zero(self) -> "GradedClass":
        return GradedClass._raw(self, {})

    def scalar(self, value: Coefficient) -> "GradedClass":
        value = normalize(value)
        return GradedClass._raw(self, {self.unit_monomial(): value} if value else {})

    def gen(self, name: str) -> "GradedClass":
        try:
            mono = self.generators()[name]
        except KeyError:
            raise OmalousError(f"unknown generator {name!r} on {self.label()}") from None
        return GradedClass(self, {mono: 1})

    def divisor(self, coefficients: Mapping[str, int]) -> "GradedClass":
        """Degree-1 class from generator coefficients, e.g. ``{"H": 3, "E1": -1}``."""
        total = self.zero()
        for name, value in coefficients.items():
            if not isinstance(value, int) or isinstance(value, bool):
                raise OmalousError("divisor coefficients must be integers")
            cls = self.gen(name)
            if cls.homogeneous_degree() != 1:
                raise OmalousError(f"{name} is not a divisor class")
            total = total + value * cls
        return total

    def parse(self, text: str) -> "GradedClass":
        return parse_class(self, text)


def _render_power(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


@dataclass(frozen=True)
class Hypersurface3Fold(VarietySpec):
    """Smooth threefold ``X_d`` of degree ``d`` in P^4."""

    d: int
    family = "hypersurface"

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise OmalousError(f"hypersurface degree must be an integer >= 1, got {self.d!r}")

    def dimension(self) -> int:
        return 3

    def generators_order(self):
        return ("H",)

    def generators(self):
        return {"H": (1,)}

    def basis(self):
        return [(j,) for j in range(4)]

    def multiply_monomials(self, a, b):
        j = a[0] + b[0]
        return (1, (j,)) if j <= 3 else None

    def top_class(self):
        return (3,), self.embedding_degree()

    def embedding_degree(self) -> int:
        return self.d

    def render_monomial(self, mono):
        return "1" if mono[0] == 0 else _render_power("H", mono[0])

    def monomial_sort_key(self, mono):
        return (mono[0],)

    def to_json(self):
        return {"family": "hypersurface", "d": self.d}

    def label(self):
        return f"X_{self.d} in P4"


@dataclass(frozen=True)
class CICY3Fold(VarietySpec):
    """Complete intersection Calabi-Yau threefold in P^n cut out by ``degrees``."""

    n: int
    degrees: tuple
    family = "cicy"

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if any(not isinstance(x, int) or x < 2 for x in self.degrees):
            raise OmalousError(f"CICY degrees must be integers >= 2, got {self.degrees}")
        if len(self.degrees) != self.n - 3:
            raise OmalousError(
                f"a threefold in P^{self.n} needs {self.n - 3} equations, got {len(self.degrees)}"
            )
        if sum(self.degrees) != self.n + 1:
            raise OmalousError(
                f"Calabi-Yau condition fails: sum of degrees {sum(self.degrees)} != n+1 = {self.n + 1}"
            )

    def dimension(self) -> int:
        return 3

    def generators_order(self):
        return ("H",)

    def generators(self):
        return {"H": (1,)}

    def basis(self):
        return [(j,) for j in range(4)]

    def multiply_monomials(self, a, b):
        j = a[0] + b[0]
        return (1, (j,)) if j <= 3 else None

    def top_class(self):
        return (3,), self.embedding_degree()

    def embedding_degree(self) -> int:
        return math.prod(self.degrees)

    def render_monomial(self, mono):
        return "1" if mono[0] == 0 else _render_power("H", mono[0])

    def monomial_sort_key(self, mono):
        return (mono[0],)

    def to_json(self):
        return {"family": "cicy", "n": self.n, "degrees": list(self.degrees)}

    def label(self):
        return f"CICY({','.join(map(str, self.degrees))}) in P{self.n}"


@dataclass(frozen=True)
class BlowupPlane(VarietySpec):
    """Blow-up of P^2 at ``n`` distinct points.

    Basis: ``1``, ``H``, ``E1..En`` and the point class ``pt``; monomials are
    exponent tuples over ``(H, E1, ..., En)`` and ``pt`` is stored as ``H^2``.
    """

    n: int
    family = "blowup"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise OmalousError(f"number of blown-up points must be >= 0, got {self.n!r}")

    def dimension(self) -> int:
        return 2

    def generators_order(self):
        return ("H",) + tuple(f"E{i}" for i in range(1, self.n + 1))

    def _unit(self, i: int) -> Monomial:
        v = [0] * (self.n + 1)
        v[i] = 1
        return tuple(v)

    @property
    def point(self) -> Monomial:
        return (2,) + (0,) * self.n

    def generators(self):
        gens = {name: self._unit(i) for i, name in enumerate(self.generators_order())}
        gens["pt"] = self.point
        return gens

    def basis(self):
        return [self.unit_monomial()] + [self._unit(i) for i in range(self.n + 1)] + [self.point]

    def multiply_monomials(self, a, b):
        da, db = sum(a), sum(b)
        if da + db > 2:
            return None
        if da == 0:
            return 1, b
        if db == 0:
            return 1, a
        i, j = a.index(1), b.index(1)
        if i != j:
            return None
        return (1 if i == 0 else -1), self.point

    def top_class(self):
        return self.point, 1

    def render_monomial(self, mono):
        d = sum(mono)
        if d == 0:
            return "1"
        if d == 2:
            return "pt"
        i = mono.index(1)
        return "H" if i == 0 else f"E{i}"

    def monomial_sort_key(self, mono):
        d = sum(mono)
        return (d, mono.index(1) if d == 1 else 0)

    def to_json(self):
        return {"family": "blowup", "n": self.n}

    def label(self):
        return f"Bl_{self.n} P2"


@dataclass(frozen=True)
class ProductPP(VarietySpec):
    """The product P^n x P^m with hyperplane pullbacks ``h1`` and ``h2``."""

    n: int
    m: int
    family = "product"

    def __post_init__(self):
        for name in ("n", "m"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise OmalousError(f"product factor dimension {name} must be >= 1, got {v!r}")

    def dimension(self) -> int:
        return self.n + self.m

    def generators_order(self):
        return ("h1", "h2")

    def generators(self):
        return {"h1": (1, 0), "h2": (0, 1)}

    def basis(self):
        return [(a, b) for a in range(self.n + 1) for b in range(self.m + 1)]

    def multiply_monomials(self, a, b):
        x, y = a[0] + b[0], a[1] + b[1]
        if x > self.n or y > self.m:
            return None
        return 1, (x, y)

    def top_class(self):
        return (self.n, self.m), 1

    def render_monomial(self, mono):
        parts = [_render_power(g, e) for g, e in zip(("h1", "h2"), mono) if e]
        return "*".join(parts) if parts else "1"

    def monomial_sort_key(self, mono):
        return (sum(mono), -mono[0])

    def to_json(self):
        return {"family": "product", "n": self.n, "m": self.m}

    def label(self):
        return f"P{self.n} x P{self.m}"


def variety_from_json(data: Mapping) -> VarietySpec:
    """Inverse of :meth:`VarietySpec.to_json`."""
    if not isinstance(data, Mapping) or "family" not in data:
        raise OmalousError("variety must be an object with a 'family' key")
    family = data["family"]
    try:
        if family == "hypersurface":
            return Hypersurface3Fold(_int(data["d"]))
        if family == "cicy":
            return CICY3Fold(_int(data["n"]), tuple(_int(x) for x in data["degrees"]))
        if family == "blowup":
            return BlowupPlane(_int(data["n"]))
        if family == "product":
            return ProductPP(_int(data["n"]), _int(data["m"]))
    except KeyError as exc:
        raise OmalousError(f"variety {family!r} is missing field {exc}") from None
    raise OmalousError(f"unknown variety family {family!r}")


def _int(x) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise OmalousError(f"integer expected, got {x!r}")
    return x


# --------------------------------------------------------------------------
# Graded classes
# --------------------------------------------------------------------------


class GradedClass:
    """An element of the Chow ring of ``variety`` with exact coefficients.

    Instances are immutable; all arithmetic returns new objects. Zero
    coefficients are never stored.
    """

    __slots__ = ("variety", "_coeffs", "_hash", "_parts")

    def __init__(self, variety: VarietySpec, coeffs: Mapping[Monomial, Coefficient] = ()):
        data = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for mono, value in items:
            value = normalize(value)
            if value:
                data[tuple(mono)] = data.get(tuple(mono), 0) + value
        self.variety = variety
        self._coeffs = {k: normalize(v) for k, v in data.items() if v}
        self._hash = None
        self._parts = None

    @classmethod
    def _raw(cls, variety, coeffs: dict) -> "GradedClass":
        # Trusted path: coeffs already normalized and free of zeros.
        obj = cls.__new__(cls)
        obj.variety = variety
        obj._coeffs = coeffs
        obj._hash = None
        obj._parts = None
        return obj

    @property
    def coeffs(self) -> dict[Monomial, Coefficient]:
        return dict(self._coeffs)

    def items(self) -> Iterator[tuple[Monomial, Coefficient]]:
        key = self.variety.monomial_sort_key
        return iter(sorted(self._coeffs.items(), key=lambda kv: key(kv[0])))

    def rendered_coeffs(self) -> dict[str, Coefficient]:
        return {self.variety.render_monomial(m): c for m, c in self.items()}

    def __getitem__(self, name: str) -> Coefficient:
        """Coefficient of the basis monomial rendered as ``name``."""
        for mono, c in self._coeffs.items():
            if self.variety.render_monomial(mono) == name:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: "GradedClass") -> None:
        if self.variety is not other.variety and self.variety != other.variety:
            raise VarietyMismatchError(
                f"classes live on different varieties: {self.variety.label()} vs {other.variety.label()}"
            )

    def _coerce(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.variety.scalar(other)
        return NotImplemented

    def __add__(self, other):
        if type(other) is int:
            # shifting the constant term is by far the most common int case
            unit = self.variety.unit_monomial()
            out = dict(self._coeffs)
            v = out.get(unit, 0) + other
            if v:
                out[unit] = v
            else:
                out.pop(unit, None)
            return GradedClass._raw(self.variety, out)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for mono, c in other._coeffs.items():
            v = normalize(out.get(mono, 0) + c)
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return GradedClass._raw(self.variety, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass._raw(self.variety, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, factor: Coefficient) -> "GradedClass":
        factor = normalize(factor)
        if not factor:
            return self.variety.zero()
        return GradedClass._raw(
            self.variety, {m: normalize(c * factor) for m, c in self._coeffs.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        self._check(other)
        unit = self.variety.unit_monomial()
        if self._coeffs == {unit: 1}:
            return other
        if other._coeffs == {unit: 1}:
            return self
        product = self.variety.product_of
        out: dict = {}
        for ma, ca in self._coeffs.items():
            for mb, cb in other._coeffs.items():
                res = product(ma, mb)
                if res is None:
                    continue
                sign, mono = res
                out[mono] = out.get(mono, 0) + sign * ca * cb
        return GradedClass._raw(
            self.variety, {m: normalize(c) for m, c in out.items() if c}
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "GradedClass":
        if not isinstance(exponent, int) or exponent < 0:
            raise OmalousError("only non-negative integer powers are defined; use truncated_inverse")
        result = self.variety.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, GradedClass):
            return self.variety == other.variety and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            coeffs = self._coeffs
            if not other:
                return not coeffs
            return len(coeffs) == 1 and coeffs.get(self.variety.unit_monomial()) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variety, frozenset(self._coeffs.items())))
        return self._hash

    # graded structure ---------------------------------------------------

    def part(self, degree: int) -> "GradedClass":
        if self._parts is None:
            deg = self.variety.monomial_degree
            split: dict[int, dict] = {}
            for m, c in self._coeffs.items():
                split.setdefault(deg(m), {})[m] = c
            self._parts = {k: GradedClass._raw(self.variety, v) for k, v in split.items()}
        found = self._parts.get(degree)
        return found if found is not None else GradedClass._raw(self.variety, {})

    def constant(self) -> Coefficient:
        return self._coeffs.get(self.variety.unit_monomial(), 0)

    def degrees(self) -> set[int]:
        self.part(0)
        return set(self._parts)

    def homogeneous_degree(self) -> int | None:
        """The degree if the class is nonzero and homogeneous, else None."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._coeffs.values())

    def integrate(self, other: "GradedClass | None" = None) -> Fraction:
        """Degree of the top-dimensional part, optionally of ``self * other``."""
        cls = self if other is None else self * other
        top, value = cls.variety.top_class()
        return Fraction(cls._coeffs.get(top, 0) * value)

    def __str__(self) -> str:
        return render_class(self)

    def __repr__(self) -> str:
        return f"GradedClass({self.variety.label()}: {render_class(self)})"


def render_class(u: GradedClass) -> str:
    """Canonical rendering, e.g. ``"3*H - E1 - E2"`` or ``"3/2*h1^2 + h1*h2"``."""
    pieces = []
    for mono, c in u.items():
        name = u.variety.render_monomial(mono)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if name == "1":
            body = format_coefficient(mag)
        elif mag == 1:
            body = name
        else:
            body = f"{format_coefficient(mag)}*{name}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")
_FACTOR = re.compile(r"^([A-Za-z][A-Za-z0-9]*?)(?:\^(\d+))?$")


def parse_class(variety: VarietySpec, text: str) -> GradedClass:
    """Parse the canonical rendering (spaces optional) back into a class."""
    if not isinstance(text, str):
        raise OmalousError(f"class must be given as a string, got {text!r}")
    src = text.strip()
    if not src:
        raise OmalousError("empty class expression")
    total = variety.zero()
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise OmalousError(f"cannot parse class {text!r}")
        sign, body = m.group(1), m.group(2).strip()
        if sign is None and not first:
            raise OmalousError(f"missing operator in {text!r}")
        first = False
        term = variety.one()
        for factor in body.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                term = term.scale(Fraction(factor))
                continue
            fm = _FACTOR.match(factor)
            if not fm:
                raise OmalousError(f"bad factor {factor!r} in {text!r}")
            term = term * variety.gen(fm.group(1)) ** int(fm.group(2) or 1)
        total = total - term if sign == "-" else total + term
        pos = m.end()
    return total


# --------------------------------------------------------------------------
# Functional surface
# --------------------------------------------------------------------------


def add(u: GradedClass, v: GradedClass) -> GradedClass:
    u._check(v)
    return u + v


def mul(u: GradedClass, v: GradedClass) -> GradedClass:
    u._check(v)
    return u * v


def integrate(u: GradedClass) -> Fraction:
    return u.integrate()


def truncated_inverse(u: GradedClass) -> GradedClass:
    """Inverse of a class with constant term 1 in the (nilpotent) truncated ring.

    Writing ``u = 1 + x`` with ``x`` nilpotent, the inverse is the finite
    geometric series ``sum((-x)**k for k <= dim X)``.
    """
    if u.constant() != 1:
        raise OmalousError(f"truncated_inverse needs constant term 1, got {u.constant()}")
    x = u - 1
    if x.is_zero():
        return u
    result = u.variety.one()
    power = u.variety.one()
    for _ in range(u.variety.dimension()):
        power = power * (-x)
        if power.is_zero():
            break
        result = result + power
    return result


def total_degree_classes(variety: VarietySpec, degree: int) -> Iterable[Monomial]:
    return [m for m in variety.basis() if variety.monomial_degree(m) == degree]
