"""Finite-dimensional gradient degree from certified critical-orbit data.

The degree of an invariant gradient map around a union of special
non-degenerate critical orbits is read off coordinatewise: the class of an
orbit's isotropy group receives (-1)^(Morse index of the normal block).  The
package does not find orbits or verify Morse conditions; it consumes orbit
data the caller certifies.

When the slice group H sits in a larger group G so that distinct classes of
subgroups of H stay distinct in G (an admissible pair), the slice-level
degree transports coordinate-by-coordinate along an injective class table,
and inequality of slice degrees decides inequality of the full degrees.
Class labels are opaque strings; conjugacy itself is the caller's business.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import MissingClass, NonInjectiveTable, SchemaError, ValidationError
from .euler import EulerSO2

__all__ = [
    "OrbitDatum",
    "degree_from_orbits",
    "lift_degree",
    "compare_orbit_degrees",
    "orbit_data_from_json",
    "class_table_from_json",
    "so2_class_map_to_euler",
]


@dataclass(eq=True, frozen=True)
class OrbitDatum:
    """One special non-degenerate critical orbit: isotropy class and the
    Morse index of its normal block (the tangential block carries none by
    the specialness assumption, which is trusted, not checked)."""

    isotropy_class: str
    morse_index: int

    def __post_init__(self) -> None:
        if not isinstance(self.isotropy_class, str) or not self.isotropy_class:
            raise ValidationError(f"isotropy class must be a nonempty string, got {self.isotropy_class!r}")
        if not isinstance(self.morse_index, int) or isinstance(self.morse_index, bool) or self.morse_index < 0:
            raise ValidationError(f"morse_index must be a nonnegative integer, got {self.morse_index!r}")


def degree_from_orbits(data: Iterable[OrbitDatum]) -> dict[str, int]:
    """Per-class signed orbit counts; zero net coefficients are pruned.

    Classes absent from the result have coefficient 0, so pruning keeps
    structural equality of maps equal to semantic equality of degrees.
    """
    out: dict[str, int] = {}
    for datum in data:
        out[datum.isotropy_class] = out.get(datum.isotropy_class, 0) + (-1) ** datum.morse_index
    return {c: v for c, v in out.items() if v != 0}


def _check_table(table: Mapping[str, str]) -> None:
    seen: dict[str, str] = {}
    for h_class, g_class in table.items():
        if g_class in seen.values():
            clashing = sorted(h for h, g in table.items() if g == g_class)
            raise NonInjectiveTable(
                f"classes {clashing} share the target {g_class!r}; the pair is not admissible"
            )
        seen[h_class] = g_class


def lift_degree(deg: Mapping[str, int], table: Mapping[str, str]) -> dict[str, int]:
    """Transport a slice-level degree along an injective class table.

    Coefficients are preserved under the relabelling.  Raises MissingClass if
    a class with nonzero coefficient has no table entry, NonInjectiveTable if
    the table merges classes (the transported map would be meaningless).
    """
    _check_table(table)
    out: dict[str, int] = {}
    for h_class, coeff in deg.items():
        if coeff == 0:
            continue
        if h_class not in table:
            raise MissingClass(f"class {h_class!r} is absent from the class table")
        out[table[h_class]] = coeff
    return out


def compare_orbit_degrees(a: Mapping[str, int], b: Mapping[str, int], table: Mapping[str, str]) -> bool:
    """True iff the degrees differ (then the lifted degrees differ too).

    Both maps must be liftable through the same table; comparison ignores
    explicit zero coefficients.
    """
    return lift_degree(a, table) != lift_degree(b, table)


def orbit_data_from_json(doc) -> list[OrbitDatum]:
    """Parse ``[{"class": str, "morse_index": int}, ...]``."""
    if not isinstance(doc, list):
        raise SchemaError(f"orbit data must be an array, got {type(doc).__name__}")
    out = []
    for item in doc:
        if not isinstance(item, dict) or set(item) != {"class", "morse_index"}:
            raise SchemaError(f"orbit entry must be {{class, morse_index}}, got {item!r}")
        out.append(OrbitDatum(item["class"], item["morse_index"]))
    return out


def class_table_from_json(doc) -> dict[str, str]:
    """Parse ``{"h_class": "g_class", ...}`` (injectivity checked at use)."""
    if not isinstance(doc, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in doc.items()
    ):
        raise SchemaError("class table must map strings to strings")
    return dict(doc)


def so2_class_map_to_euler(deg: Mapping[str, int], *, full_label: str = "SO2", cyclic_prefix: str = "Z") -> EulerSO2:
    """Re-express a class map over SO(2) labels as an Euler-ring element.

    Labels: ``full_label`` for the class of the full group, ``Z<k>`` for the
    finite cyclic classes.
    """
    unit = 0
    cyclic: dict[int, int] = {}
    for label, coeff in deg.items():
        if label == full_label:
            unit = coeff
        elif label.startswith(cyclic_prefix) and label[len(cyclic_prefix):].isdigit():
            cyclic[int(label[len(cyclic_prefix):])] = coeff
        else:
            raise ValidationError(f"label {label!r} is not an SO(2) class label")
    return EulerSO2(unit, cyclic)
