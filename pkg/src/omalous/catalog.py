"""A catalog of every omalous construction the package knows how to build.

The catalog is a single JSON document with a stable layout; regenerating it
with the same ranges yields byte-identical output.

Ranges default to ``d_max=10, blowup_n=3:6, blowup_r=4:6, product_n=1:3,
product_m=1:3`` and may be overridden through the ``OMALOUS_CATALOG_RANGES``
environment variable, a comma-separated list of ``key=value`` pairs where a
range is written ``lo:hi`` (inclusive), e.g. ``d_max=6,blowup_n=3:4``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .chern import tangent_data
from .chow import ProductPP, VarietySpec
from .errors import OmalousError
from .monad import MonadSpec, cohomology_data, linear_monad, monad_to_json, quintic_monad
from .polarization import default_polarization, slope
from .riemann_roch import monad_dimensions
from .search import (
    CICY_CITATION,
    OmalityReport,
    Stability,
    StabilityTag,
    blowup_family,
    cicy_catalog,
    hypersurface_solutions,
    is_omalous,
    product_cokernel_monad,
    product_tag,
)

__all__ = ["CatalogEntry", "CatalogRanges", "build_catalog", "catalog_json", "json_number"]

ENV_VAR = "OMALOUS_CATALOG_RANGES"


def json_number(x) -> int | str:
    """Integers stay integers; other rationals become ``"p/q"`` strings."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class CatalogRanges:
    d_max: int = 10
    blowup_n: tuple = (3, 6)
    blowup_r: tuple = (4, 6)
    product_n: tuple = (1, 3)
    product_m: tuple = (1, 3)

    @classmethod
    def parse(cls, text: str, base: "CatalogRanges | None" = None) -> "CatalogRanges":
        values: dict[str, Any] = {}
        for chunk in filter(None, (c.strip() for c in text.split(","))):
            key, sep, raw = chunk.partition("=")
            key = key.strip()
            if not sep or key not in cls.__dataclass_fields__:
                raise OmalousError(f"bad catalog range setting {chunk!r}")
            try:
                if key == "d_max":
                    values[key] = int(raw)
                else:
                    lo, _, hi = raw.partition(":")
                    values[key] = (int(lo), int(hi or lo))
            except ValueError:
                raise OmalousError(f"bad catalog range value {chunk!r}") from None
        base = base or cls()
        return cls(**{**base.__dict__, **values})

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> "CatalogRanges":
        environ = os.environ if environ is None else environ
        text = environ.get(ENV_VAR, "")
        return cls.parse(text) if text else cls()


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    variety: VarietySpec
    monad: MonadSpec
    report: OmalityReport
    tag: StabilityTag
    provenance: str
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.report.omalous:
            raise AssertionError(f"catalog entry {self.id} is not omalous")
        if not self.provenance:
            raise AssertionError(f"catalog entry {self.id} lacks provenance")

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "variety": self.variety.to_json(),
            "monad": monad_to_json(self.monad),
            "report": self.report.to_json(),
            "tags": self.tag.to_json(),
            "provenance": self.provenance,
        }
        out.update(self.extra)
        return out


def _entry(id_, monad, tag, provenance, **extra) -> CatalogEntry:
    report = is_omalous(cohomology_data(monad), monad.variety)
    return CatalogEntry(id_, monad.variety, monad, report, tag, provenance, extra)


def _inclusive(bounds) -> range:
    return range(bounds[0], bounds[1] + 1)


def build_catalog(ranges: CatalogRanges | None = None) -> list[CatalogEntry]:
    ranges = ranges or CatalogRanges()
    entries = [
        _entry(
            "quintic",
            quintic_monad(),
            StabilityTag(Stability.STABLE, CICY_CITATION),
            "rank-2 monad O(-1)^10 -> O^22 -> O(1)^10 on the quintic",
        )
    ]
    for d, l, c, tag in hypersurface_solutions(ranges.d_max):
        entries.append(
            _entry(
                f"linear-d{d}",
                linear_monad(d, l, c),
                tag,
                "rank-3 linear monad, odd-k parametrization d=(k-1)/2",
                parameters={"d": d, "l": l, "c": c},
            )
        )
    for X, c, monad, tag in cicy_catalog():
        entries.append(
            _entry(
                f"cicy-P{X.n}-{'-'.join(map(str, X.degrees))}",
                monad,
                tag,
                "rank-2 monad on a complete intersection Calabi-Yau threefold",
                parameters={"c": c},
            )
        )
    for n in _inclusive(ranges.blowup_n):
        for r in _inclusive(ranges.blowup_r):
            monad, _ = blowup_family(n, r)
            entries.append(
                _entry(
                    f"blowup-n{n}-r{r}",
                    monad,
                    StabilityTag.unknown(),
                    "monad of an omalous bundle with semistable direct image on Bl_n P2",
                    dimensions=monad_dimensions(n, r).to_json(),
                )
            )
    for n in _inclusive(ranges.product_n):
        for m in _inclusive(ranges.product_m):
            X = ProductPP(n, m)
            monad = product_cokernel_monad(X, 2, n + 1, m + 1)
            data = cohomology_data(monad)
            entries.append(
                _entry(
                    f"product-n{n}-m{m}",
                    monad,
                    product_tag(2),
                    "cokernel of O^2 -> O(1,0)^(n+1) + O(0,1)^(m+1): deformation of TX",
                    slope=json_number(slope(data, X, default_polarization(X))),
                    tangent_slope=json_number(slope(tangent_data(X), X)),
                )
            )
    return entries


def catalog_json(ranges: CatalogRanges | None = None) -> str:
    doc = {"schema": "1", "entries": [e.to_json() for e in build_catalog(ranges)]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
