"""Neumann Laplacian spectra on balls, and ingestion of user-supplied spectra.

On the unit disk the distinct eigenvalues are 0 (constants) together with the
squares of the positive roots of J_l'(x) = 0 over all angular indices l; the
eigenspace for a root with l >= 1 is one copy of the rotation-l irreducible
(real dimension 2), and trivial of dimension 1 for l = 0.  On the N-ball with
N >= 3 the package evaluates only the stated radial test
J_nu'(x) - (nu/x) J_nu(x) = 0 with nu = (N-2)/2, which characterises the
eigenvalues whose eigenspace is a trivial SO(N)-representation; full spectra
for N >= 3 (or for other invariant domains) are supplied by the user as
structured documents.

Root finding is sign-change bracketing on a pi/8 grid followed by bisection;
two structurally different Bessel evaluation paths (ascending series vs.
backward recurrence) back the production kernels, and the test suite runs an
independent series-based oracle against every root.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import (
    ConvergenceError,
    DomainError,
    InsufficientSpectrum,
    SchemaError,
    UnsupportedDomain,
    ValidationError,
)
from .euler import SO2Rep

__all__ = [
    "MERGE_REL",
    "ROOT_XTOL",
    "GRID_STEP",
    "RepDescriptor",
    "SpectrumEntry",
    "RootCache",
    "bessel_j",
    "bessel_j_prime",
    "radial_condition",
    "neumann_radial_roots",
    "radial_roots_up_to",
    "disk_spectrum",
    "ball_rep_nontrivial",
    "load_custom_spectrum",
    "DiskDomain",
    "BallDomain",
    "CustomDomain",
    "domain_from_json",
]

#: relative tolerance at which two nearby eigenvalues are one logical eigenvalue
MERGE_REL = 1e-8
#: absolute width to which root brackets are refined
ROOT_XTOL = 1e-10
#: grid step for sign-change bracketing
GRID_STEP = math.pi / 8.0


def close(a: float, b: float, rel: float = MERGE_REL) -> bool:
    """Tolerant equality used for eigenvalue merging and spectral matching."""
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def _beyond_coverage(alpha_max: float, coverage: float, rel: float) -> bool:
    # slack mirrors the matching margin so boundary-exact requests succeed
    return alpha_max > coverage * (1.0 + 20.0 * rel) + 1e-12


# ---------------------------------------------------------------------------
# representation descriptors and spectrum entries
# ---------------------------------------------------------------------------


@dataclass(eq=True)
class RepDescriptor:
    """Isotypic description of an eigenspace of the domain's symmetry group.

    ``irreducibles`` maps an integer label of a nontrivial irreducible to its
    multiplicity; for the disk the label is the rotation number (so the
    descriptor specialises losslessly to :class:`symbif.euler.SO2Rep`), for
    the N-ball the spherical-harmonic degree.  Zero multiplicities are pruned,
    so equality of descriptors is equality of contents.
    """

    trivial_dim: int = 0
    irreducibles: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not isinstance(self.trivial_dim, int) or isinstance(self.trivial_dim, bool) or self.trivial_dim < 0:
            raise ValidationError(f"trivial_dim must be a nonnegative integer, got {self.trivial_dim!r}")
        out: dict[int, int] = {}
        for label, mult in self.irreducibles.items():
            if not isinstance(label, int) or isinstance(label, bool) or label < 1:
                raise ValidationError(f"irreducible label {label!r} must be an integer >= 1")
            if not isinstance(mult, int) or isinstance(mult, bool):
                raise ValidationError(f"multiplicity {mult!r} for label {label} must be an integer")
            if mult < 0:
                raise ValidationError(f"label {label} has negative multiplicity {mult}")
            if mult:
                out[label] = mult
        self.irreducibles = out

    @classmethod
    def zero(cls) -> "RepDescriptor":
        return cls(0, {})

    @classmethod
    def trivial(cls, dim: int) -> "RepDescriptor":
        return cls(dim, {})

    @classmethod
    def irr(cls, label: int, mult: int = 1) -> "RepDescriptor":
        return cls(0, {label: mult})

    def is_zero(self) -> bool:
        return self.trivial_dim == 0 and not self.irreducibles

    def has_nontrivial(self) -> bool:
        return bool(self.irreducibles)

    def direct_sum(self, other: "RepDescriptor") -> "RepDescriptor":
        irr = dict(self.irreducibles)
        for label, mult in other.irreducibles.items():
            irr[label] = irr.get(label, 0) + mult
        return RepDescriptor(self.trivial_dim + other.trivial_dim, irr)

    __add__ = direct_sum

    def scaled(self, n: int) -> "RepDescriptor":
        """Direct sum of ``n`` copies (n >= 0)."""
        if n < 0:
            raise ValidationError(f"cannot take {n} copies of a representation")
        return RepDescriptor(n * self.trivial_dim, {k: n * m for k, m in self.irreducibles.items()})

    def total_dim(self, irr_dims: Mapping[int, int] | None = None, default_irr_dim: int = 2) -> int:
        """Real dimension; nontrivial labels default to dimension 2 (disk)."""
        dim = self.trivial_dim
        for label, mult in self.irreducibles.items():
            per = default_irr_dim if irr_dims is None else irr_dims.get(label, default_irr_dim)
            dim += per * mult
        return dim

    def equiv_mod_even_trivial(self, other: "RepDescriptor") -> bool:
        """Equal up to adding even-dimensional trivial summands on either side."""
        return (
            self.irreducibles == other.irreducibles
            and self.trivial_dim % 2 == other.trivial_dim % 2
        )

    def to_so2_rep(self) -> SO2Rep:
        """Disk specialisation: labels become rotation numbers."""
        return SO2Rep(self.trivial_dim, dict(self.irreducibles))

    def describe(self) -> str:
        parts = []
        if self.trivial_dim:
            parts.append(f"{self.trivial_dim}*triv")
        for label in sorted(self.irreducibles):
            parts.append(f"{self.irreducibles[label]}*irr({label})")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"trivial": self.trivial_dim, "irr": {str(k): m for k, m in sorted(self.irreducibles.items())}}

    @classmethod
    def from_json(cls, doc) -> "RepDescriptor":
        if not isinstance(doc, dict):
            raise SchemaError(f"representation descriptor must be an object, got {doc!r}")
        keys = set(doc)
        if keys - {"trivial", "irr", "rot"}:
            raise SchemaError(f"unknown keys in representation descriptor: {sorted(keys - {'trivial', 'irr', 'rot'})}")
        if "irr" in keys and "rot" in keys:
            raise SchemaError("representation descriptor carries both 'irr' and 'rot'")
        table = doc.get("irr", doc.get("rot", {}))
        if not isinstance(table, dict):
            raise SchemaError("irreducible table must be an object")
        try:
            irr = {int(k): m for k, m in table.items()}
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad irreducible label: {exc}") from exc
        trivial = doc.get("trivial", 0)
        if not isinstance(trivial, int) or isinstance(trivial, bool):
            raise SchemaError(f"trivial dimension must be an integer, got {trivial!r}")
        return cls(trivial, irr)


@dataclass(eq=True)
class SpectrumEntry:
    """One distinct Neumann eigenvalue with the isotypic type of its eigenspace.

    ``root_index`` is the 1-based index of the radial root producing the
    eigenvalue; the injected zero eigenvalue (constants) carries None there.
    """

    eigenvalue: float
    rep: RepDescriptor
    angular_index: int | None = None
    root_index: int | None = None

    def __post_init__(self) -> None:
        self.eigenvalue = float(self.eigenvalue)
        if not (self.eigenvalue >= 0.0):
            raise ValidationError(f"eigenvalue must be nonnegative, got {self.eigenvalue!r}")

    def to_json(self) -> dict:
        return {
            "eigenvalue": self.eigenvalue,
            "angular_index": self.angular_index,
            "root_index": self.root_index,
            "rep": self.rep.to_json(),
        }

    @classmethod
    def from_json(cls, doc) -> "SpectrumEntry":
        if not isinstance(doc, dict):
            raise SchemaError(f"spectrum entry must be an object, got {doc!r}")
        unknown = set(doc) - {"eigenvalue", "angular_index", "root_index", "rep"}
        if unknown:
            raise SchemaError(f"unknown keys in spectrum entry: {sorted(unknown)}")
        if "eigenvalue" not in doc or "rep" not in doc:
            raise SchemaError("spectrum entry needs 'eigenvalue' and 'rep'")
        ev = doc["eigenvalue"]
        if not isinstance(ev, (int, float)) or isinstance(ev, bool):
            raise SchemaError(f"eigenvalue must be a number, got {ev!r}")
        if ev < 0:
            raise ValidationError(f"eigenvalue must be nonnegative, got {ev!r}")
        for key in ("angular_index", "root_index"):
            v = doc.get(key)
            if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
                raise SchemaError(f"{key} must be a nonnegative integer or null, got {v!r}")
        return cls(float(ev), RepDescriptor.from_json(doc["rep"]), doc.get("angular_index"), doc.get("root_index"))


# ---------------------------------------------------------------------------
# Bessel evaluation wrappers
# ---------------------------------------------------------------------------


def _check_order(order: float) -> float:
    nu = float(order)
    if nu < 0.0 or 2.0 * nu != math.floor(2.0 * nu):
        raise DomainError(f"order must be a nonnegative integer or half-integer, got {order!r}")
    return nu


def bessel_j(order: float, x: float) -> float:
    """Bessel function of the first kind, J_order(x), for x >= 0.

    Orders are nonnegative integers or half-integers.  Accuracy is within
    1e-13 * max(1, |J|) for x <= 200 (see ``symbif._kernels``).
    """
    nu = _check_order(order)
    x = float(x)
    if x < 0.0 or math.isnan(x):
        raise DomainError(f"bessel_j needs x >= 0, got {x!r}")
    return _kernels._bessel_j(nu, x)


def bessel_j_prime(order: float, x: float) -> float:
    """Derivative J_order'(x) via (J_{order-1} - J_{order+1})/2, J_0' = -J_1."""
    nu = _check_order(order)
    x = float(x)
    if x < 0.0 or math.isnan(x):
        raise DomainError(f"bessel_j_prime needs x >= 0, got {x!r}")
    if x == 0.0 and nu != math.floor(nu):
        raise DomainError("derivative of a half-integer order is singular at x = 0")
    return _kernels._bessel_j_prime(nu, x)


def radial_condition(angular_index: int, dim: int, x: float) -> float:
    """Value of the radial Neumann condition at x > 0.

    Disk (dim == 2): J_l'(x).  Ball (dim >= 3, l == 0 only): the trivial-type
    radial test J_nu'(x) - (nu/x) J_nu(x), nu = (dim-2)/2.
    """
    _check_radial_family(angular_index, dim)
    x = float(x)
    if x <= 0.0 or math.isnan(x):
        raise DomainError(f"radial condition needs x > 0, got {x!r}")
    return _kernels._radial_condition(angular_index, dim, x)


def _check_radial_family(angular_index: int, dim: int) -> None:
    if not isinstance(dim, int) or dim < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {dim!r}")
    if not isinstance(angular_index, int) or angular_index < 0:
        raise DomainError(f"angular index must be a nonnegative integer, got {angular_index!r}")
    if dim >= 3 and angular_index != 0:
        raise UnsupportedDomain(
            "for dim >= 3 only the angular_index == 0 radial test is available; "
            "supply spectra for other types explicitly"
        )


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------

_GAP_SUSPECT = math.pi * 1.05
_MAX_RESCAN_DEPTH = 3


def _refine(l: int, dim: int, a: float, fa: float, b: float, fb: float, xtol: float) -> float:
    x = _kernels._bisect_radial(l, dim, a, fa, b, fb, xtol)
    if math.isnan(x):
        raise ConvergenceError(
            f"bisection failed to refine bracket [{a!r}, {b!r}] for (l={l}, dim={dim})"
        )
    return x


def _scan_interval(l: int, dim: int, lo: float, hi: float, step: float, xtol: float) -> list[float]:
    """Roots of the radial condition strictly inside (lo, hi], by bracketing."""
    if hi <= lo:
        return []
    n = int(math.ceil((hi - lo) / step))
    grid = np.linspace(lo, hi, n + 1)
    roots: list[float] = []
    fa = _kernels._radial_condition(l, dim, float(grid[0])) if lo > 0.0 else None
    a = float(grid[0])
    for xb in grid[1:]:
        b = float(xb)
        fb = _kernels._radial_condition(l, dim, b)
        if math.isnan(fb):
            raise ConvergenceError(f"radial condition evaluated to NaN at x={b!r} (l={l}, dim={dim})")
        if fa is not None:
            if fa == 0.0:
                roots.append(a)
            elif fb != 0.0 and (fa > 0.0) != (fb > 0.0):
                roots.append(_refine(l, dim, a, fa, b, fb, xtol))
        a, fa = b, fb
    if fa == 0.0:
        roots.append(a)
    return roots


def _lattice_scan(l: int, dim: int, x_max: float, step: float, xtol: float) -> list[float]:
    """Roots in (0, x_max] bracketed on the fixed lattice step, 2*step, ...

    Brackets never depend on x_max, so a root's refined value is identical for
    every range that contains it (the prefix-stability guarantee).
    """
    roots: list[float] = []
    prev_x = 0.0
    prev_f: float | None = None
    i = 1
    while prev_x <= x_max:
        x = i * step
        f = _kernels._radial_condition(l, dim, x)
        if math.isnan(f):
            raise ConvergenceError(f"radial condition evaluated to NaN at x={x!r} (l={l}, dim={dim})")
        if f == 0.0:
            roots.append(x)
        elif prev_f is not None and prev_f != 0.0 and (prev_f > 0.0) != (f > 0.0):
            roots.append(_refine(l, dim, prev_x, prev_f, x, f, xtol))
        prev_x, prev_f = x, f
        i += 1
    return [r for r in roots if r <= x_max]


def _scan_roots(l: int, dim: int, x_max: float, step: float, xtol: float) -> list[float]:
    """All positive roots <= x_max, with a halved-step rescan of suspect gaps.

    A gap wider than pi between consecutive detected roots is rescanned at
    half the step (to depth 3) in case a sign-change pair slipped between grid
    points; x = 0 is never reported as a root.
    """
    roots = _lattice_scan(l, dim, x_max, step, xtol)
    out: list[float] = []
    for i, r in enumerate(roots):
        if i > 0:
            prev = out[-1]
            gap = r - prev
            finer = step
            depth = 0
            while gap > _GAP_SUSPECT and depth < _MAX_RESCAN_DEPTH:
                finer *= 0.5
                depth += 1
                missed = [
                    x
                    for x in _scan_interval(l, dim, prev + xtol, r - xtol, finer, xtol)
                    if not close(x, prev, 1e-9) and not close(x, r, 1e-9)
                ]
                if missed:
                    out.extend(missed)
                    break
        out.append(r)
    out.sort()
    return out


def radial_roots_up_to(
    angular_index: int,
    dim: int,
    x_max: float,
    *,
    xtol: float = ROOT_XTOL,
    step: float = GRID_STEP,
    cache: "RootCache | None" = None,
) -> list[float]:
    """All positive roots of the radial condition not exceeding ``x_max``."""
    _check_radial_family(angular_index, dim)
    if x_max <= 0.0:
        return []
    if cache is not None:
        cached = cache.get(dim, angular_index)
        if cached and x_max <= cached[-1]:
            return [r for r in cached if r <= x_max]
    roots = _scan_roots(angular_index, dim, x_max, step, xtol)
    if cache is not None:
        cached = cache.get(dim, angular_index)
        if len(roots) >= len(cached):
            cache.put(dim, angular_index, roots)
    return roots


def neumann_radial_roots(
    angular_index: int,
    dim: int = 2,
    count: int = 1,
    *,
    xtol: float = ROOT_XTOL,
    step: float = GRID_STEP,
    cache: "RootCache | None" = None,
) -> list[float]:
    """First ``count`` positive roots of the radial Neumann condition.

    x = 0 is excluded by convention; the zero eigenvalue is injected once by
    the spectrum builders, not reported as a radial root.
    """
    _check_radial_family(angular_index, dim)
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count!r}")
    if cache is not None:
        cached = cache.get(dim, angular_index)
        if len(cached) >= count:
            return cached[:count]
    # roots sit near l + (k + dim/2) * pi; scan a window and extend if short
    x_max = angular_index + dim + (count + 2) * math.pi
    for _ in range(64):
        roots = radial_roots_up_to(angular_index, dim, x_max, xtol=xtol, step=step, cache=cache)
        if len(roots) >= count:
            return roots[:count]
        x_max *= 1.5
    raise ConvergenceError(
        f"could not locate {count} roots for (l={angular_index}, dim={dim}); "
        f"search stalled at x <= {x_max!r}"
    )


# ---------------------------------------------------------------------------
# root cache
# ---------------------------------------------------------------------------


@dataclass
class RootCache:
    """On-disk memo of radial roots, keyed by the tolerances that built it.

    The record list for each (dim, l) pair is always a complete prefix of the
    true root sequence, so cached data can serve any request whose range it
    covers.  A file whose tolerance metadata disagrees with the requested
    tolerances is discarded and regenerated.
    """

    xtol: float = ROOT_XTOL
    step: float = GRID_STEP
    records: dict[tuple[int, int], list[float]] = field(default_factory=dict)

    def get(self, dim: int, l: int) -> list[float]:
        return self.records.get((dim, l), [])

    def put(self, dim: int, l: int, roots: Sequence[float]) -> None:
        self.records[(dim, l)] = list(roots)

    def to_json(self) -> dict:
        recs = []
        for (dim, l) in sorted(self.records):
            for i, x in enumerate(self.records[(dim, l)], start=1):
                recs.append([dim, l, i, x])
        return {
            "schema_version": 1,
            "tolerances": {"xtol": self.xtol, "step": self.step},
            "records": recs,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), sort_keys=True) + "\n", encoding="utf-8")

    @classmethod
    def load(
        cls, path: str | Path, *, xtol: float = ROOT_XTOL, step: float = GRID_STEP
    ) -> tuple["RootCache", bool]:
        """Load a cache; returns (cache, stale) where stale means regenerated."""
        fresh = cls(xtol=xtol, step=step)
        p = Path(path)
        if not p.exists():
            return fresh, False
        try:
            doc = json.loads(p.read_text(encoding="utf-8"))
            tol = doc["tolerances"]
            if tol["xtol"] != xtol or tol["step"] != step:
                return fresh, True
            for dim, l, idx, x in doc["records"]:
                key = (int(dim), int(l))
                fresh.records.setdefault(key, []).append(float(x))
            for key, roots in fresh.records.items():
                roots.sort()
            return fresh, False
        except (KeyError, TypeError, ValueError, json.JSONDecodeError):
            return cls(xtol=xtol, step=step), True


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


def _merge_entries(entries: Iterable[SpectrumEntry], merge_rel: float) -> list[SpectrumEntry]:
    """Sort ascending and fuse near-coincident eigenvalues, summing their reps."""
    ordered = sorted(entries, key=lambda e: e.eigenvalue)
    merged: list[SpectrumEntry] = []
    for e in ordered:
        if merged and close(merged[-1].eigenvalue, e.eigenvalue, merge_rel):
            prev = merged[-1]
            merged[-1] = SpectrumEntry(
                prev.eigenvalue,
                prev.rep + e.rep,
                prev.angular_index if prev.angular_index == e.angular_index else None,
                prev.root_index if prev.root_index == e.root_index else None,
            )
        else:
            merged.append(e)
    return merged


def disk_spectrum(
    max_eigenvalue: float,
    *,
    xtol: float = ROOT_XTOL,
    step: float = GRID_STEP,
    merge_rel: float = MERGE_REL,
    cache: RootCache | None = None,
) -> list[SpectrumEntry]:
    """Distinct Neumann eigenvalues of the unit disk up to ``max_eigenvalue``.

    The zero eigenvalue (constants, trivial of dimension 1) is always present;
    each positive eigenvalue is the square of a root of J_l' and carries one
    copy of the rotation-l irreducible (trivial of dimension 1 when l = 0).
    """
    if not max_eigenvalue > 0.0:
        raise ValidationError(f"max_eigenvalue must be positive, got {max_eigenvalue!r}")
    x_max = math.sqrt(max_eigenvalue)
    entries = [SpectrumEntry(0.0, RepDescriptor.trivial(1), angular_index=0, root_index=None)]
    l = 0
    while l <= x_max + 1.0:
        roots = radial_roots_up_to(l, 2, x_max, xtol=xtol, step=step, cache=cache)
        if not roots and l >= 1:
            break  # first roots increase with l, so higher l find nothing
        rep = RepDescriptor.trivial(1) if l == 0 else RepDescriptor.irr(l)
        for i, x in enumerate(roots, start=1):
            alpha = x * x
            if alpha <= max_eigenvalue:
                entries.append(SpectrumEntry(alpha, rep, angular_index=l, root_index=i))
        l += 1
    return _merge_entries(entries, merge_rel)


def ball_rep_nontrivial(
    entry: SpectrumEntry,
    dim: int,
    *,
    xtol: float = ROOT_XTOL,
    step: float = GRID_STEP,
    match_rel: float = MERGE_REL,
    cache: RootCache | None = None,
) -> bool:
    """Whether the eigenspace is a nontrivial SO(dim)-representation, dim >= 3.

    True iff sqrt(eigenvalue) is NOT a root of the trivial-type radial test.
    The constants (eigenvalue 0) are trivial; a declared angular index >= 1
    short-circuits the numeric test.
    """
    if not isinstance(dim, int) or dim < 3:
        raise DomainError(f"ball_rep_nontrivial needs dim >= 3, got {dim!r}")
    if close(entry.eigenvalue, 0.0, match_rel):
        return False
    if entry.angular_index is not None:
        return entry.angular_index >= 1
    x = math.sqrt(entry.eigenvalue)
    roots = radial_roots_up_to(0, dim, x + math.pi, xtol=xtol, step=step, cache=cache)
    return not any(close(entry.eigenvalue, r * r, match_rel) for r in roots)


def _entries_from_docs(raw, merge_rel: float) -> list[SpectrumEntry]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError("'entries' must be a nonempty array of spectrum entries")
    entries = [SpectrumEntry.from_json(item) for item in raw]
    for prev, nxt in zip(entries, entries[1:]):
        if nxt.eigenvalue < prev.eigenvalue and not close(prev.eigenvalue, nxt.eigenvalue, merge_rel):
            raise ValidationError(
                f"entries must be listed in ascending eigenvalue order "
                f"({nxt.eigenvalue!r} after {prev.eigenvalue!r})"
            )
    merged = _merge_entries(entries, merge_rel)
    zero = [e for e in merged if e.eigenvalue == 0.0]
    if not zero:
        raise ValidationError("a Neumann spectrum must contain the eigenvalue 0 (constants)")
    z = zero[0]
    if z.rep.has_nontrivial() or z.rep.trivial_dim != 1:
        raise ValidationError(
            f"the zero eigenspace consists of the constants: trivial of dimension 1, got {z.rep.describe()}"
        )
    if z.angular_index not in (None, 0):
        raise ValidationError("the zero eigenvalue has angular index 0")
    return merged


def load_custom_spectrum(source, *, merge_rel: float = MERGE_REL) -> list[SpectrumEntry]:
    """Validate a custom-spectrum document: ``{"domain": "custom", "entries": [...]}``.

    Accepts a parsed document, a JSON string, or a path to a JSON file.
    Entries must be ascending; near-coincident eigenvalues are merged with
    their representations summed.
    """
    doc = source
    if isinstance(source, (str, Path)):
        text = str(source)
        if isinstance(source, Path):
            text = source.read_text(encoding="utf-8")
        else:
            try:
                if Path(source).exists():
                    text = Path(source).read_text(encoding="utf-8")
            except (OSError, ValueError):
                pass  # not a usable path; treat as inline JSON
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"custom spectrum document must be an object, got {type(doc).__name__}")
    unknown = set(doc) - {"domain", "entries"}
    if unknown:
        raise SchemaError(f"unknown keys in custom spectrum document: {sorted(unknown)}")
    if doc.get("domain") != "custom":
        raise SchemaError("custom spectrum document needs \"domain\": \"custom\"")
    return _entries_from_docs(doc.get("entries"), merge_rel)


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------


@dataclass
class DiskDomain:
    """Unit disk; the spectrum is computed on demand (and memoised).

    ``bound``, when set, caps how far the spectrum may be extended; requests
    beyond it raise :class:`InsufficientSpectrum`.
    """

    bound: float | None = None
    xtol: float = ROOT_XTOL
    step: float = GRID_STEP
    merge_rel: float = MERGE_REL
    cache: RootCache | None = field(default=None, repr=False, compare=False)
    _memo: list[SpectrumEntry] = field(default_factory=list, init=False, repr=False, compare=False)
    _memo_bound: float = field(default=-1.0, init=False, repr=False, compare=False)

    kind = "disk"
    dim = 2
    is_disk = True

    def irr_dims(self) -> None:
        return None  # rotation irreducibles all have real dimension 2

    def entries_up_to(self, alpha_max: float) -> list[SpectrumEntry]:
        alpha_max = max(0.0, float(alpha_max))
        if self.bound is not None and _beyond_coverage(alpha_max, self.bound, self.merge_rel):
            raise InsufficientSpectrum(
                f"need eigenvalues up to {alpha_max!r} but the spectrum bound is {self.bound!r}"
            )
        if alpha_max > self._memo_bound:
            target = max(alpha_max, 1.0)
            self._memo = disk_spectrum(
                target, xtol=self.xtol, step=self.step, merge_rel=self.merge_rel, cache=self.cache
            )
            self._memo_bound = target
        return [e for e in self._memo if e.eigenvalue <= alpha_max]

    def first_entries(self, k: int) -> list[SpectrumEntry]:
        if k < 1:
            raise ValidationError(f"need k >= 1, got {k!r}")
        target = max(self._memo_bound, 25.0)
        for _ in range(64):
            if self.bound is not None:
                target = min(target, self.bound)
            entries = self.entries_up_to(target)
            if len(entries) >= k:
                return entries[:k]
            if self.bound is not None and target >= self.bound:
                raise InsufficientSpectrum(
                    f"only {len(entries)} distinct eigenvalues below the bound {self.bound!r}, need {k}"
                )
            target *= 2.0
        raise InsufficientSpectrum(f"could not collect {k} eigenvalues")  # pragma: no cover


@dataclass
class _SuppliedDomain:
    """Base for domains whose spectrum is user-supplied and finite."""

    entries: list[SpectrumEntry]

    def __post_init__(self) -> None:
        if not self.entries or self.entries[0].eigenvalue != 0.0:
            raise ValidationError("supplied spectra must start at the zero eigenvalue")

    @property
    def coverage(self) -> float:
        return self.entries[-1].eigenvalue

    def entries_up_to(self, alpha_max: float) -> list[SpectrumEntry]:
        alpha_max = max(0.0, float(alpha_max))
        if _beyond_coverage(alpha_max, self.coverage, getattr(self, "merge_rel", MERGE_REL)):
            raise InsufficientSpectrum(
                f"need eigenvalues up to {alpha_max!r} but the supplied spectrum stops at {self.coverage!r}"
            )
        return [e for e in self.entries if e.eigenvalue <= alpha_max]

    def first_entries(self, k: int) -> list[SpectrumEntry]:
        if k < 1:
            raise ValidationError(f"need k >= 1, got {k!r}")
        if k > len(self.entries):
            raise InsufficientSpectrum(f"supplied spectrum has {len(self.entries)} entries, need {k}")
        return self.entries[:k]


@dataclass
class BallDomain(_SuppliedDomain):
    """Unit ball of dimension >= 3 with a user-supplied spectrum."""

    dim: int = 3
    xtol: float = ROOT_XTOL
    step: float = GRID_STEP
    merge_rel: float = MERGE_REL

    kind = "ball"
    is_disk = False

    def __post_init__(self) -> None:
        super().__post_init__()
        if not isinstance(self.dim, int) or self.dim < 3:
            raise ValidationError(f"ball dimension must be an integer >= 3, got {self.dim!r}")

    def irr_dims(self) -> None:
        return None  # harmonic dimension tables are out of scope; callers may override

    def rep_nontrivial(self, entry: SpectrumEntry) -> bool:
        return ball_rep_nontrivial(
            entry, self.dim, xtol=self.xtol, step=self.step, match_rel=self.merge_rel
        )


@dataclass
class CustomDomain(_SuppliedDomain):
    """Arbitrary invariant domain with a user-supplied spectrum.

    ``irr_dim_table`` optionally gives the real dimension of each labelled
    irreducible (default 2), used for linearization multiplicities.
    """

    irr_dim_table: dict[int, int] | None = None
    merge_rel: float = MERGE_REL

    kind = "custom"
    dim = None
    is_disk = False

    def irr_dims(self) -> dict[int, int] | None:
        return self.irr_dim_table


def domain_from_json(
    doc,
    *,
    spectrum_bound: float | None = None,
    xtol: float = ROOT_XTOL,
    step: float = GRID_STEP,
    merge_rel: float = MERGE_REL,
    cache: RootCache | None = None,
):
    """Build a domain from its document form ``{"type": "disk"|"ball"|"custom", ...}``."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise SchemaError(f"domain document must be an object with a 'type', got {doc!r}")
    kind = doc["type"]
    if kind == "disk":
        unknown = set(doc) - {"type", "max_eigenvalue"}
        if unknown:
            raise SchemaError(f"unknown keys in disk domain: {sorted(unknown)}")
        bound = doc.get("max_eigenvalue", spectrum_bound)
        return DiskDomain(bound=bound, xtol=xtol, step=step, merge_rel=merge_rel, cache=cache)
    if kind == "ball":
        unknown = set(doc) - {"type", "dim", "entries"}
        if unknown:
            raise SchemaError(f"unknown keys in ball domain: {sorted(unknown)}")
        if "dim" not in doc:
            raise SchemaError("ball domain needs 'dim'")
        entries = _entries_from_docs(doc.get("entries"), merge_rel)
        return BallDomain(entries, dim=doc["dim"], xtol=xtol, step=step, merge_rel=merge_rel)
    if kind == "custom":
        unknown = set(doc) - {"type", "entries", "irr_dims"}
        if unknown:
            raise SchemaError(f"unknown keys in custom domain: {sorted(unknown)}")
        entries = _entries_from_docs(doc.get("entries"), merge_rel)
        table = doc.get("irr_dims")
        if table is not None:
            try:
                table = {int(k): int(v) for k, v in dict(table).items()}
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"bad irr_dims table: {exc}") from exc
        return CustomDomain(entries, irr_dim_table=table, merge_rel=merge_rel)
    raise SchemaError(f"unknown domain type {kind!r}")
