"""Spectral input data for compact hyperbolic quotients.

A manifold here is the data the trace formula consumes, nothing more:
dimension, a volume factor, Betti numbers, and a truncated geodesic
length spectrum with per-class weights.  Actual group-theoretic origins
(which lattice, which holonomies) stay outside; lengths are inputs.

Files use a versioned JSON layout documented in docs/manifold-format.md.
Unknown keys are rejected so a typo cannot silently drop a weight.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from .exact import binomial

__all__ = [
    "GeodesicClass",
    "ManifoldData",
    "ManifoldFormatError",
    "load_manifold",
    "save_manifold",
    "manifold_to_dict",
    "trivial_holonomy_c",
    "synth_spectrum",
    "FORMAT_VERSION",
]

FORMAT_VERSION = 1


class ManifoldFormatError(ValueError):
    """Manifold file rejected; message names the violated rule and field."""

    def __init__(self, message: str, *, line: int | None = None, field_path: str | None = None):
        loc = []
        if field_path:
            loc.append(f"field {field_path}")
        if line is not None:
            loc.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(loc)})" if loc else message)
        self.line = line
        self.field_path = field_path


def trivial_holonomy_c(n: int, t: float) -> float:
    """Conjugacy-class weight C for trivial holonomy at geodesic length t.

    With trivial holonomy the adjoint acts on the n-1 dimensional nilpotent
    piece with every eigenvalue e^t, so the determinant in the definition of
    C collapses and

        C(t) = e^(-rho0*t) * (1 - e^(-t))^(-(n-1)),   rho0 = (n-1)/2.

    Derivation recorded in docs/manifold-format.md.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("odd dimensions out of scope")
    if t <= 0:
        raise ValueError("length must be positive")
    rho0 = (n - 1) / 2.0
    return math.exp(-rho0 * t) * (1.0 - math.exp(-t)) ** (-(n - 1))


@dataclass(frozen=True)
class GeodesicClass:
    """One closed-geodesic conjugacy class in the length spectrum.

    ``power`` is the iterate index j >= 1 (the class is a j-th power of a
    primitive).  ``holonomy`` is either None, meaning trivial holonomy with
    characters C(n-1, p), or an explicit tuple of character values indexed
    by form order p = 0..n-1.
    """

    length: float
    power: int = 1
    c_value: float | None = None
    chi: float = 1.0
    holonomy: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not (isinstance(self.length, (int, float)) and math.isfinite(self.length)):
            raise ValueError("length must be a finite number")
        if self.length <= 0:
            raise ValueError("length must be positive")
        if not isinstance(self.power, int) or self.power < 1:
            raise ValueError("power must be a positive integer")
        if self.c_value is not None and self.c_value <= 0:
            raise ValueError("c must be positive")
        if self.holonomy is not None:
            object.__setattr__(self, "holonomy", tuple(float(x) for x in self.holonomy))
            if self.c_value is None:
                raise ValueError("c must be supplied explicitly for nontrivial holonomy")

    def c_factor(self, n: int) -> float:
        """The C weight: stored value if given, else the trivial-holonomy formula."""
        if self.c_value is not None:
            return self.c_value
        return trivial_holonomy_c(n, self.length)

    def character(self, n: int, p: int) -> float:
        """Holonomy character for the p-form sector, chi_{sigma_p}(m)."""
        if not 0 <= p <= n - 1:
            raise ValueError(f"form order p={p} outside 0..{n - 1}")
        if self.holonomy is None:
            return float(binomial(n - 1, p))
        if len(self.holonomy) != n:
            raise ValueError("holonomy character list must have length n (orders 0..n-1)")
        return self.holonomy[p]


@dataclass(frozen=True)
class ManifoldData:
    """Everything the heat-trace and zeta routines need about a quotient."""

    dimension: int
    volume: float
    betti: tuple[int, ...]
    geodesics: tuple[GeodesicClass, ...] = ()
    chi_one: float = 1.0
    radius: float = 1.0

    def __post_init__(self) -> None:
        n = self.dimension
        if not isinstance(n, int) or n % 2 != 0 or n < 2:
            raise ValueError("odd dimensions out of scope")
        if not (math.isfinite(self.volume) and self.volume > 0):
            raise ValueError("volume must be positive")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        betti = tuple(self.betti)
        if len(betti) != n + 1:
            raise ValueError("betti must list b_0..b_n (length dimension+1)")
        if any((not isinstance(b, int)) or b < 0 for b in betti):
            raise ValueError("betti entries must be nonnegative integers")
        object.__setattr__(self, "betti", betti)
        # keep the spectrum sorted so truncation bounds can use the last entry
        geos = tuple(sorted(self.geodesics, key=lambda g: g.length))
        object.__setattr__(self, "geodesics", geos)

    @property
    def max_length(self) -> float | None:
        return self.geodesics[-1].length if self.geodesics else None


# --- JSON serialization -----------------------------------------------------

_TOP_KEYS = {"format_version", "dimension", "volume", "betti", "geodesics", "chi_one", "radius"}
_GEO_KEYS = {"length", "power", "c", "chi", "holonomy"}


def _geodesic_from_dict(obj: dict, idx: int) -> GeodesicClass:
    path = f"geodesics[{idx}]"
    if not isinstance(obj, dict):
        raise ManifoldFormatError("geodesic entry must be an object", field_path=path)
    unknown = set(obj) - _GEO_KEYS
    if unknown:
        raise ManifoldFormatError(
            f"unknown field {sorted(unknown)[0]!r}", field_path=path
        )
    if "length" not in obj:
        raise ManifoldFormatError("length is required", field_path=path)
    hol = obj.get("holonomy", "trivial")
    if hol == "trivial":
        holonomy = None
    elif isinstance(hol, list):
        holonomy = tuple(float(x) for x in hol)
    else:
        raise ManifoldFormatError(
            'holonomy must be "trivial" or a list of character values', field_path=path
        )
    c_raw = obj.get("c")
    try:
        return GeodesicClass(
            length=float(obj["length"]),
            power=obj.get("power", 1),
            c_value=None if c_raw is None else float(c_raw),
            chi=float(obj.get("chi", 1.0)),
            holonomy=holonomy,
        )
    except (TypeError, ValueError) as exc:
        raise ManifoldFormatError(str(exc), field_path=path) from exc


def _manifold_from_dict(doc: dict) -> ManifoldData:
    if not isinstance(doc, dict):
        raise ManifoldFormatError("top level must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ManifoldFormatError(f"unknown field {sorted(unknown)[0]!r}")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ManifoldFormatError(
            f"format_version must be {FORMAT_VERSION}", field_path="format_version"
        )
    for key in ("dimension", "volume", "betti"):
        if key not in doc:
            raise ManifoldFormatError(f"{key} is required", field_path=key)
    geos = doc.get("geodesics", [])
    if not isinstance(geos, list):
        raise ManifoldFormatError("geodesics must be an array", field_path="geodesics")
    classes = tuple(_geodesic_from_dict(g, i) for i, g in enumerate(geos))
    betti = doc["betti"]
    if not isinstance(betti, list):
        raise ManifoldFormatError("betti must be an array", field_path="betti")
    try:
        return ManifoldData(
            dimension=doc["dimension"],
            volume=float(doc["volume"]),
            betti=tuple(betti),
            geodesics=classes,
            chi_one=float(doc.get("chi_one", 1.0)),
            radius=float(doc.get("radius", 1.0)),
        )
    except ValueError as exc:
        raise ManifoldFormatError(str(exc)) from exc


def load_manifold(path) -> ManifoldData:
    """Read and validate a manifold file; see docs/manifold-format.md."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifoldFormatError(f"not valid JSON: {exc.msg}", line=exc.lineno) from exc
    return _manifold_from_dict(doc)


def manifold_to_dict(data: ManifoldData) -> dict:
    geos = []
    for g in data.geodesics:
        entry: dict = {"length": g.length, "power": g.power}
        if g.c_value is not None:
            entry["c"] = g.c_value
        if g.chi != 1.0:
            entry["chi"] = g.chi
        entry["holonomy"] = "trivial" if g.holonomy is None else list(g.holonomy)
        geos.append(entry)
    return {
        "format_version": FORMAT_VERSION,
        "dimension": data.dimension,
        "volume": data.volume,
        "chi_one": data.chi_one,
        "radius": data.radius,
        "betti": list(data.betti),
        "geodesics": geos,
    }


def save_manifold(data: ManifoldData, path) -> None:
    """Write a manifold file that load_manifold reads back equal."""
    Path(path).write_text(
        json.dumps(manifold_to_dict(data), indent=2) + "\n", encoding="utf-8"
    )


def synth_spectrum(
    seed: int, count: int, min_length: float, max_power: int, n: int
) -> list[GeodesicClass]:
    """Deterministic synthetic length spectrum for exercising hyperbolic sums.

    Draws ``count`` primitive lengths uniformly from [min_length,
    min_length + 10) and expands each into iterates j = 1..max_power with
    length j * t and power j.  Holonomy is trivial throughout and the C
    weight is stored explicitly (computed from the trivial-holonomy formula)
    so saved spectra are self-contained.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if min_length <= 0:
        raise ValueError("length must be positive")
    if max_power < 1:
        raise ValueError("max_power must be at least 1")
    if n < 2 or n % 2 != 0:
        raise ValueError("odd dimensions out of scope")
    rng = random.Random(seed)
    classes = []
    for _ in range(count):
        t_prim = min_length + 10.0 * rng.random()
        for j in range(1, max_power + 1):
            t = j * t_prim
            classes.append(
                GeodesicClass(
                    length=t,
                    power=j,
                    c_value=trivial_holonomy_c(n, t),
                    chi=1.0,
                    holonomy=None,
                )
            )
    return sorted(classes, key=lambda g: g.length)
