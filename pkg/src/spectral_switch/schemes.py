"""Generalized Johnson and Grassmann graph construction.

J_S(n,k): vertices are the k-subsets of {1..n}, u ~ v iff |u cap v| in S.
J_{q,S}(n,k): vertices are the k-dimensional subspaces of F_q^n, adjacency by
intersection dimension in S.  S is a set of sizes in {0..k-1}; S = {0} gives
the Kneser and q-Kneser graphs.

Vertex order is canonical and deterministic: subsets ascend by bitmask value
(colex), subspaces sort by pivot-column tuple then by the flattened RREF
entries.  Builds refuse to enumerate past a configurable vertex cap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations, product

from .algebra import MatrixFq, binom, field_table, gauss_binom, SUPPORTED_Q
from .graphcore import Graph

__all__ = [
    "SchemeParams",
    "SetVertex",
    "SubspaceVertex",
    "VertexCapExceeded",
    "DEFAULT_VERTEX_CAP",
    "count_vertices",
    "enumerate_vertices",
    "build",
    "degree_formula",
    "intersection_size",
    "johnson_rank",
    "mask_of_elements",
    "elements_of_mask",
]

DEFAULT_VERTEX_CAP = 100_000


class VertexCapExceeded(RuntimeError):
    """Raised when a build would enumerate more vertices than the cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"scheme has {count} vertices, exceeding the cap {cap}")
        self.count = count
        self.cap = cap


def mask_of_elements(elements, n: int) -> int:
    """Bitmask for a set of 1-based ground-set elements."""
    m = 0
    for e in elements:
        e = int(e)
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside ground set 1..{n}")
        b = 1 << (e - 1)
        if m & b:
            raise ValueError(f"duplicate element {e}")
        m |= b
    return m


def elements_of_mask(mask: int) -> tuple[int, ...]:
    """1-based elements of a bitmask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class SetVertex:
    """A k-subset of {1..n}, stored as a bitmask over bits 0..n-1."""

    mask: int
    n: int
    k: int

    def __post_init__(self):
        if self.mask >> self.n:
            raise ValueError("mask has bits outside the ground set")
        if self.mask.bit_count() != self.k:
            raise ValueError(f"mask has {self.mask.bit_count()} elements, expected {self.k}")

    @classmethod
    def from_elements(cls, elements, n: int) -> "SetVertex":
        m = mask_of_elements(elements, n)
        return cls(m, n, m.bit_count())

    def elements(self) -> tuple[int, ...]:
        return elements_of_mask(self.mask)

    def label(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements()) + "}"


_DIGITS = "0123456789abcdef"


@dataclass(frozen=True)
class SubspaceVertex:
    """A k-dimensional subspace of F_q^n via its canonical RREF basis."""

    basis: MatrixFq
    n: int
    k: int
    q: int

    def __post_init__(self):
        b = self.basis
        if b.ncols != self.n or b.nrows != self.k or b.field.q != self.q:
            raise ValueError("basis shape does not match (n, k, q)")
        if not b.is_rref():
            raise ValueError("basis is not in reduced row echelon form")

    def label(self) -> str:
        rows = ("".join(_DIGITS[e] for e in row) for row in self.basis.rows)
        return "<" + ",".join(rows) + ">"


_PARAM_RE = re.compile(
    r"^J(?P<grassmann>q)?\{(?P<S>[0-9,\s]*)\}"
    r"\((?P<n>\d+),(?P<k>\d+)(?:;q=(?P<q>\d+))?\)$"
)


@dataclass(frozen=True)
class SchemeParams:
    """Parameters of a generalized Johnson or Grassmann graph."""

    kind: str  # "johnson" | "grassmann"
    n: int
    k: int
    S: frozenset = field(default_factory=frozenset)
    q: int | None = None

    def __post_init__(self):
        if self.kind not in ("johnson", "grassmann"):
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        S = frozenset(int(s) for s in self.S)
        object.__setattr__(self, "S", S)
        if not S:
            raise ValueError("S must be a nonempty set of intersection sizes")
        if not all(0 <= s < self.k for s in S):
            raise ValueError(f"S={sorted(S)} must be a subset of 0..{self.k - 1}")
        if self.kind == "grassmann":
            if self.q is None:
                raise ValueError("grassmann schemes need q")
            if self.q not in SUPPORTED_Q:
                raise ValueError(
                    f"unsupported q={self.q}; supported: {sorted(SUPPORTED_Q)}"
                )
        elif self.q is not None:
            raise ValueError("johnson schemes take no q")

    @classmethod
    def johnson(cls, n: int, k: int, S) -> "SchemeParams":
        return cls("johnson", n, k, frozenset(S))

    @classmethod
    def grassmann(cls, n: int, k: int, S, q: int) -> "SchemeParams":
        return cls("grassmann", n, k, frozenset(S), q)

    @classmethod
    def parse(cls, text: str) -> "SchemeParams":
        """Parse 'J{1,2}(10,5)' or 'Jq{0}(6,3;q=2)'."""
        m = _PARAM_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse scheme parameters from {text!r}")
        s_text = m.group("S").strip()
        S = frozenset(int(x) for x in s_text.split(",") if x.strip()) if s_text else frozenset()
        n, k = int(m.group("n")), int(m.group("k"))
        if m.group("grassmann"):
            if m.group("q") is None:
                raise ValueError(f"{text!r}: grassmann parameters need ;q=...")
            return cls("grassmann", n, k, S, int(m.group("q")))
        if m.group("q") is not None:
            raise ValueError(f"{text!r}: johnson parameters take no q")
        return cls("johnson", n, k, S)

    def format(self) -> str:
        s = ",".join(str(x) for x in sorted(self.S))
        if self.kind == "grassmann":
            return f"Jq{{{s}}}({self.n},{self.k};q={self.q})"
        return f"J{{{s}}}({self.n},{self.k})"

    def complement_params(self) -> "SchemeParams":
        """Same scheme with S replaced by {0..k-1} minus S."""
        comp = frozenset(range(self.k)) - self.S
        return SchemeParams(self.kind, self.n, self.k, comp, self.q)

    def __str__(self):
        return self.format()


def count_vertices(p: SchemeParams) -> int:
    if p.kind == "johnson":
        return binom(p.n, p.k)
    return gauss_binom(p.n, p.k, p.q)


def _subset_masks(n: int, k: int) -> list[int]:
    """All k-subset bitmasks of an n-set in increasing numeric order."""
    if k == 0:
        return [0]
    out = []
    v = (1 << k) - 1
    limit = 1 << n
    while v < limit:
        out.append(v)
        # Gosper's hack: next larger int with the same popcount
        t = v | (v - 1)
        v = (t + 1) | (((~t & -(~t)) - 1) >> (v & -v).bit_length())
    return out


def _rref_free_positions(pivots: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """Row-major free entry positions of an RREF pattern with given pivots."""
    pivset = set(pivots)
    free = []
    for i, p in enumerate(pivots):
        for j in range(p + 1, n):
            if j not in pivset:
                free.append((i, j))
    return free


def _subspace_bases(n: int, k: int, q: int):
    """Canonical RREF bases of all k-subspaces of F_q^n, in canonical order."""
    f = field_table(q)
    out = []
    for pivots in combinations(range(n), k):
        free = _rref_free_positions(pivots, n)
        base = [[0] * n for _ in range(k)]
        for i, p in enumerate(pivots):
            base[i][p] = 1
        # itertools.product ascends with the last position fastest, which is
        # ascending order of the flattened row-major entry tuple
        for values in product(range(q), repeat=len(free)):
            rows = [row[:] for row in base]
            for (i, j), val in zip(free, values):
                rows[i][j] = val
            out.append(MatrixFq(f, rows, n))
    return out


def enumerate_vertices(p: SchemeParams, cap: int = DEFAULT_VERTEX_CAP):
    """Vertices in canonical order; raises VertexCapExceeded before enumerating."""
    count = count_vertices(p)
    if count > cap:
        raise VertexCapExceeded(count, cap)
    if p.kind == "johnson":
        return [SetVertex(m, p.n, p.k) for m in _subset_masks(p.n, p.k)]
    return [SubspaceVertex(b, p.n, p.k, p.q) for b in _subspace_bases(p.n, p.k, p.q)]


def johnson_rank(mask: int) -> int:
    """Index of a subset bitmask in the canonical (colex) vertex order."""
    r = 0
    i = 0
    while mask:
        low = mask & -mask
        i += 1
        r += binom(low.bit_length() - 1, i)
        mask ^= low
    return r


def intersection_size(u, v) -> int:
    """|u cap v| for set vertices, dim(u cap v) for subspace vertices."""
    if isinstance(u, SetVertex) and isinstance(v, SetVertex):
        if u.n != v.n:
            raise ValueError("vertices from different ground sets")
        return (u.mask & v.mask).bit_count()
    if isinstance(u, SubspaceVertex) and isinstance(v, SubspaceVertex):
        if (u.n, u.q) != (v.n, v.q):
            raise ValueError("vertices from different ambient spaces")
        from .algebra import intersection_dim

        return intersection_dim(u.basis, v.basis)
    raise TypeError(f"mixed or unknown vertex types {type(u).__name__}, {type(v).__name__}")


def _johnson_rows(masks: list[int], S: frozenset, k: int) -> list[int]:
    n_vertices = len(masks)
    ground_bits = max(m.bit_length() for m in masks) if masks else 0
    if ground_bits <= 63 and n_vertices > 64:
        import numpy as np

        arr = np.array(masks, dtype=np.uint64)
        lut = np.zeros(k + 1, dtype=bool)
        for s in S:
            lut[s] = True
        rows = [0] * n_vertices
        chunk = max(1, (1 << 22) // n_vertices)
        for lo in range(0, n_vertices, chunk):
            hi = min(lo + chunk, n_vertices)
            cnt = np.bitwise_count(arr[lo:hi, None] & arr[None, :])
            adj = lut[cnt]
            adj[np.arange(hi - lo), np.arange(lo, hi)] = False  # no self-loops
            packed = np.packbits(adj, axis=1, bitorder="little")
            for i in range(hi - lo):
                rows[lo + i] = int.from_bytes(packed[i].tobytes(), "little")
        return rows
    rows = [0] * n_vertices
    sset = S
    for i in range(n_vertices):
        mi = masks[i]
        ri = rows[i]
        for j in range(i + 1, n_vertices):
            if (mi & masks[j]).bit_count() in sset:
                ri |= 1 << j
                rows[j] |= 1 << i
        rows[i] = ri
    return rows


def _grassmann_rows_q2(bases: list[MatrixFq], S: frozenset, k: int) -> list[int]:
    """Adjacency rows over F_2 with basis rows packed as bitmask ints."""
    packed = []
    for b in bases:
        rws = tuple(sum(e << j for j, e in enumerate(row)) for row in b.rows)
        packed.append((rws, b.pivot_columns()))
    nv = len(packed)
    rows = [0] * nv
    sset = S
    for i in range(nv):
        arows, apiv = packed[i]
        pivrows = tuple(zip(apiv, arows))
        ri = rows[i]
        for j in range(i + 1, nv):
            # rank(stack(a, b)) = k + rank of b's rows reduced by a, since a
            # is RREF: clearing b's bits at a's pivot columns is one pass
            red = []
            for r in packed[j][0]:
                for pc, ar in pivrows:
                    if (r >> pc) & 1:
                        r ^= ar
                while r:
                    h = r.bit_length()
                    for hb, e in red:
                        if hb == h:
                            r ^= e
                            break
                    else:
                        red.append((h, r))
                        break
            if k - len(red) in sset:
                ri |= 1 << j
                rows[j] |= 1 << i
        rows[i] = ri
    return rows


def _grassmann_rows_generic(bases: list[MatrixFq], S: frozenset, k: int, q: int) -> list[int]:
    from .algebra import intersection_dim

    nv = len(bases)
    rows = [0] * nv
    for i in range(nv):
        bi = bases[i]
        ri = rows[i]
        for j in range(i + 1, nv):
            if intersection_dim(bi, bases[j]) in S:
                ri |= 1 << j
                rows[j] |= 1 << i
        rows[i] = ri
    return rows


def build(p: SchemeParams, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Build the scheme graph with canonical vertex order and labels."""
    verts = enumerate_vertices(p, cap)
    labels = [v.label() for v in verts]
    if p.kind == "johnson":
        rows = _johnson_rows([v.mask for v in verts], p.S, p.k)
    elif p.q == 2:
        rows = _grassmann_rows_q2([v.basis for v in verts], p.S, p.k)
    else:
        rows = _grassmann_rows_generic([v.basis for v in verts], p.S, p.k, p.q)
    return Graph(len(verts), rows, labels, validate=False)


def degree_formula(p: SchemeParams) -> int:
    """Closed-form degree of the (regular) scheme graph."""
    if p.kind == "johnson":
        return sum(binom(p.k, s) * binom(p.n - p.k, p.k - s) for s in p.S)
    q = p.q
    return sum(
        q ** ((p.k - s) ** 2) * gauss_binom(p.k, s, q) * gauss_binom(p.n - p.k, p.k - s, q)
        for s in p.S
    )
