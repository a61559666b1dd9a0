"""Godsil-McKay and WQH switching: validation, classification, application.

A GM spec is a family of disjoint even cells C_1..C_t; the graph must induce
a constant number of neighbors from each cell into each cell (per vertex of
the source cell), and every outside vertex must see 0, half, or all of each
cell.  Switching complements the adjacency between each cell and its
half-seeing outside vertices.

A WQH spec is a pair of disjoint equal-size cells C_1, C_2 such that one
global constant c equals (neighbors in own cell) - (neighbors in the other
cell) for every vertex of C_1 u C_2, and every outside vertex either sees
all of C_1 and none of C_2, or none of C_1 and all of C_2, or equally many
in both.  Switching complements the adjacency between the first two kinds of
outside vertices and all of C_1 u C_2.

Both operations preserve the characteristic polynomial and are involutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graphcore import Graph, vertex_set

__all__ = [
    "GmSpec",
    "WqhSpec",
    "Violation",
    "ValidationReport",
    "InvalidSpecError",
    "validate_gm",
    "validate_wqh",
    "validate",
    "apply_gm",
    "apply_wqh",
    "apply_switching",
    "classify_outside_vertex",
    "spec_to_json_dict",
    "spec_from_json_dict",
]


class InvalidSpecError(ValueError):
    """A switching spec that fails its structural or graph-side conditions."""


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class GmSpec:
    """Disjoint cells of even size; vertices are indices into a host graph."""

    cells: tuple[tuple[int, ...], ...]

    def __init__(self, cells: Sequence[Sequence[int]]):
        norm = tuple(tuple(sorted(int(v) for v in c)) for c in cells)
        if not norm:
            raise InvalidSpecError("a GM spec needs at least one cell")
        seen = set()
        for i, c in enumerate(norm):
            if len(c) < 2 or len(c) % 2:
                raise InvalidSpecError(f"cell {i} has size {len(c)}; cells must be even, >= 2")
            if len(set(c)) != len(c):
                raise InvalidSpecError(f"cell {i} repeats a vertex")
            if seen & set(c):
                raise InvalidSpecError(f"cell {i} overlaps an earlier cell")
            seen |= set(c)
        object.__setattr__(self, "cells", norm)

    def all_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for c in self.cells for v in c))


@dataclass(frozen=True)
class WqhSpec:
    """Two disjoint cells of equal size."""

    c1: tuple[int, ...]
    c2: tuple[int, ...]

    def __init__(self, c1: Sequence[int], c2: Sequence[int]):
        a = tuple(sorted(int(v) for v in c1))
        b = tuple(sorted(int(v) for v in c2))
        if not a or len(a) != len(set(a)) or len(b) != len(set(b)):
            raise InvalidSpecError("cells must be nonempty and duplicate-free")
        if len(a) != len(b):
            raise InvalidSpecError(f"cells have sizes {len(a)} != {len(b)}")
        if set(a) & set(b):
            raise InvalidSpecError("cells overlap")
        object.__setattr__(self, "c1", a)
        object.__setattr__(self, "c2", b)

    def all_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.c1 + self.c2))


@dataclass(frozen=True)
class Violation:
    condition: str  # "gm-i" | "gm-ii" | "wqh-ii" | "wqh-iii"
    message: str
    vertex: int | None = None
    cell: int | None = None

    def to_json_dict(self) -> dict:
        out = {"condition": self.condition, "message": self.message}
        if self.vertex is not None:
            out["vertex"] = self.vertex
        if self.cell is not None:
            out["cell"] = self.cell
        return out


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]
    wqh_constant: int | None = None
    outside_classes: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "valid": self.valid,
            "violations": [v.to_json_dict() for v in self.violations],
        }
        if self.wqh_constant is not None:
            out["wqh_constant"] = self.wqh_constant
        classes = {}
        for v, tag in self.outside_classes.items():
            classes[str(v)] = list(tag) if isinstance(tag, tuple) else tag
        out["outside_classes"] = classes
        return out


def _check_spec_range(g: Graph, vertices) -> None:
    for v in vertices:
        if not 0 <= v < g.n:
            raise InvalidSpecError(f"spec vertex {v} out of range for n={g.n}")


def validate_gm(g: Graph, spec: GmSpec) -> ValidationReport:
    """Check both GM conditions; never raises on a merely-invalid spec."""
    _check_spec_range(g, spec.all_vertices())
    rows = g.rows
    cmasks = [_mask(c) for c in spec.cells]
    inside = _mask(spec.all_vertices())
    violations = []
    for i, ci in enumerate(spec.cells):
        for j, mj in enumerate(cmasks):
            counts = {(rows[v] & mj).bit_count() for v in ci}
            if len(counts) > 1:
                violations.append(Violation(
                    "gm-i",
                    f"vertices of cell {i} have {sorted(counts)} neighbors in cell {j}",
                    cell=i,
                ))
    outside_classes = {}
    for v in range(g.n):
        if (inside >> v) & 1:
            continue
        tags = []
        for j, (cj, mj) in enumerate(zip(spec.cells, cmasks)):
            cnt = (rows[v] & mj).bit_count()
            size = len(cj)
            if cnt == 0:
                tags.append("gm-zero")
            elif cnt == size:
                tags.append("gm-full")
            elif 2 * cnt == size:
                tags.append("gm-half")
            else:
                tags.append(None)
                violations.append(Violation(
                    "gm-ii",
                    f"vertex {v} has {cnt} neighbors in cell {j} of size {size}",
                    vertex=v,
                    cell=j,
                ))
        outside_classes[v] = tuple(tags)
    return ValidationReport(not violations, tuple(violations), None, outside_classes)


def validate_wqh(g: Graph, spec: WqhSpec) -> ValidationReport:
    """Check the WQH constant and outside classes."""
    _check_spec_range(g, spec.all_vertices())
    rows = g.rows
    m1, m2 = _mask(spec.c1), _mask(spec.c2)
    inside = m1 | m2
    violations = []
    c = None
    for own, other, cell in ((m1, m2, spec.c1), (m2, m1, spec.c2)):
        for v in cell:
            d = (rows[v] & own).bit_count() - (rows[v] & other).bit_count()
            if c is None:
                c = d
            elif d != c:
                violations.append(Violation(
                    "wqh-ii",
                    f"vertex {v} has own-minus-other neighbor difference {d}, expected {c}",
                    vertex=v,
                ))
    size = len(spec.c1)
    outside_classes = {}
    for v in range(g.n):
        if (inside >> v) & 1:
            continue
        n1 = (rows[v] & m1).bit_count()
        n2 = (rows[v] & m2).bit_count()
        if n1 == size and n2 == 0:
            tag = "full-c1"
        elif n1 == 0 and n2 == size:
            tag = "full-c2"
        elif n1 == n2:
            tag = "balanced"
        else:
            tag = None
            violations.append(Violation(
                "wqh-iii",
                f"vertex {v} has ({n1},{n2}) neighbors in (C1,C2) of size {size}",
                vertex=v,
            ))
        outside_classes[v] = tag
    return ValidationReport(not violations, tuple(violations), c, outside_classes)


def validate(g: Graph, spec) -> ValidationReport:
    if isinstance(spec, GmSpec):
        return validate_gm(g, spec)
    if isinstance(spec, WqhSpec):
        return validate_wqh(g, spec)
    raise TypeError(f"unknown spec type {type(spec).__name__}")


def classify_outside_vertex(g: Graph, spec, v: int):
    """The class tag validation assigns to an outside vertex v.

    GM: tuple of gm-zero/gm-half/gm-full per cell.  WQH: full-c1, full-c2,
    or balanced.  Raises if v lies in a cell or matches no class.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if v in spec.all_vertices():
        raise ValueError(f"vertex {v} is inside a switching cell")
    report = validate(g, spec)
    tag = report.outside_classes[v]
    if tag is None or (isinstance(tag, tuple) and None in tag):
        raise InvalidSpecError(f"vertex {v} falls outside every switching class")
    return tag


def apply_gm(g: Graph, spec: GmSpec, report: ValidationReport | None = None) -> Graph:
    """GM-switched graph; refuses invalid specs."""
    if report is None:
        report = validate_gm(g, spec)
    if not report.valid:
        raise InvalidSpecError(
            f"GM conditions fail: {report.violations[0].message}"
            + (f" (+{len(report.violations) - 1} more)" if len(report.violations) > 1 else "")
        )
    rows = list(g.rows)
    for j, cj in enumerate(spec.cells):
        mj = _mask(cj)
        flip = 0
        for v, tags in report.outside_classes.items():
            if tags[j] == "gm-half":
                flip |= 1 << v
        if not flip:
            continue
        for u in cj:
            rows[u] ^= flip
        for v, tags in report.outside_classes.items():
            if tags[j] == "gm-half":
                rows[v] ^= mj
    return Graph(g.n, rows, g.labels, validate=False)


def apply_wqh(g: Graph, spec: WqhSpec, report: ValidationReport | None = None) -> Graph:
    """WQH-switched graph; refuses invalid specs."""
    if report is None:
        report = validate_wqh(g, spec)
    if not report.valid:
        raise InvalidSpecError(
            f"WQH conditions fail: {report.violations[0].message}"
            + (f" (+{len(report.violations) - 1} more)" if len(report.violations) > 1 else "")
        )
    both = _mask(spec.c1) | _mask(spec.c2)
    flip = 0
    for v, tag in report.outside_classes.items():
        if tag in ("full-c1", "full-c2"):
            flip |= 1 << v
    rows = list(g.rows)
    for u in spec.all_vertices():
        rows[u] ^= flip
    for v, tag in report.outside_classes.items():
        if tag in ("full-c1", "full-c2"):
            rows[v] ^= both
    return Graph(g.n, rows, g.labels, validate=False)


def apply_switching(g: Graph, spec) -> Graph:
    if isinstance(spec, GmSpec):
        return apply_gm(g, spec)
    if isinstance(spec, WqhSpec):
        return apply_wqh(g, spec)
    raise TypeError(f"unknown spec type {type(spec).__name__}")


def _resolve_vertices(entries, g: Graph | None):
    """Map a JSON cell (indices or label strings) to vertex indices."""
    out = []
    label_index = None
    for e in entries:
        if isinstance(e, str):
            if g is None or g.labels is None:
                raise ValueError(f"label {e!r} in spec but no labeled graph to resolve it")
            if label_index is None:
                label_index = {s: i for i, s in enumerate(g.labels)}
            try:
                out.append(label_index[e])
            except KeyError:
                raise ValueError(f"label {e!r} not found in graph") from None
        else:
            out.append(int(e))
    return out


def spec_to_json_dict(spec) -> dict:
    if isinstance(spec, GmSpec):
        return {"gm": {"cells": [list(c) for c in spec.cells]}}
    if isinstance(spec, WqhSpec):
        return {"wqh": {"c1": list(spec.c1), "c2": list(spec.c2)}}
    raise TypeError(f"unknown spec type {type(spec).__name__}")


def spec_from_json_dict(obj: dict, g: Graph | None = None):
    """Parse a switching spec; cell entries may be indices or vertex labels."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError("spec JSON must be an object with exactly one of 'gm', 'wqh'")
    if "gm" in obj:
        cells = obj["gm"].get("cells")
        if not isinstance(cells, list):
            raise ValueError("gm spec needs a 'cells' list")
        return GmSpec([_resolve_vertices(c, g) for c in cells])
    if "wqh" in obj:
        body = obj["wqh"]
        if not isinstance(body, dict) or "c1" not in body or "c2" not in body:
            raise ValueError("wqh spec needs 'c1' and 'c2' lists")
        return WqhSpec(_resolve_vertices(body["c1"], g), _resolve_vertices(body["c2"], g))
    raise ValueError("spec JSON must contain 'gm' or 'wqh'")
