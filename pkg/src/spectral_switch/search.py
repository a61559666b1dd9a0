"""Bounded brute-force discovery of switching sets.

gm4 enumerates 4-subsets of the vertex set as single GM cells, rejecting on
the cheap within-cell regularity condition before scanning outside vertices.
wqh33 validates pairs of caller-supplied (or pattern-generated) vertex
triples as WQH cells.  Results are deterministic given the config; optional
dedup drops identity switches and collapses specs by the canonical form of
the switched graph (fingerprints above 500 vertices).
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from itertools import combinations

from .canon import BudgetExhaustedError, automorphism_generators
from .certify import canonical_form, lambda_profile, vertex_lambda_colors
from .graphcore import Graph
from .schemes import johnson_rank, mask_of_elements
from .spectra import random_primes, signature
from .switching import GmSpec, WqhSpec, apply_switching

__all__ = [
    "SearchConfig",
    "SearchResult",
    "search_gm4",
    "search_wqh33",
    "johnson_core_triples",
    "johnson_block_triples",
]

_DEDUP_CANONICAL_MAX_N = 500


@dataclass(frozen=True)
class SearchConfig:
    mode: str = "gm4"
    max_candidates: int = 10_000_000
    time_budget: float = 300.0
    dedup: bool = True

    def __post_init__(self):
        if self.mode not in ("gm4", "wqh33"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.max_candidates <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class SearchResult:
    specs: tuple
    partial: bool
    dedup_exact: bool | None = None  # None: dedup disabled

    def to_json_dict(self) -> dict:
        from .switching import spec_to_json_dict

        out = {
            "specs": [spec_to_json_dict(s) for s in self.specs],
            "partial": self.partial,
        }
        if self.dedup_exact is not None:
            out["dedup_exact"] = self.dedup_exact
            if not self.dedup_exact:
                out["note"] = "fingerprint dedup; entries may still be duplicates"
        return out


def _fingerprint(g: Graph) -> str:
    sig = signature(g, random_primes(2, 0))
    prof = lambda_profile(g)
    h = hashlib.sha256()
    h.update(repr((sig.coeffs, prof.edge, prof.nonedge)).encode())
    return h.hexdigest()


def _spec_key(spec) -> frozenset:
    """A spec as an unordered family of unordered cells (both kinds switch
    every listed cell the same way, so cell order never matters)."""
    if isinstance(spec, GmSpec):
        return frozenset(frozenset(c) for c in spec.cells)
    return frozenset((frozenset(spec.c1), frozenset(spec.c2)))


def _apply_perm_key(key: frozenset, perm) -> frozenset:
    return frozenset(frozenset(perm[v] for v in cell) for cell in key)


def _orbit_reps(g: Graph, keys: list) -> dict:
    """Map each spec key to its orbit representative under discovered
    automorphisms of g.

    An automorphism maps a valid spec to a valid spec with an isomorphic
    mate, so one canonical form per orbit decides the whole orbit.  The
    generators rarely span the full group; a too-fine orbit partition only
    costs extra canonical forms, never a wrong merge.
    """
    rep = {k: k for k in keys}
    if len(keys) < 2:
        return rep
    try:
        gens = automorphism_generators(g, colors=vertex_lambda_colors(g))
    except BudgetExhaustedError:
        return rep
    if not gens:
        return rep
    known = set(keys)
    claimed: set = set()
    for start in keys:
        if start in claimed:
            continue
        claimed.add(start)
        stack = [start]
        seen = {start}
        while stack:
            k = stack.pop()
            for p in gens:
                img = _apply_perm_key(k, p)
                if img in known and img not in seen:
                    seen.add(img)
                    claimed.add(img)
                    rep[img] = start
                    stack.append(img)
    return rep


def _dedup(g: Graph, specs: list) -> tuple[list, bool]:
    """Drop identity switches; keep one spec per isomorphism class of mate."""
    exact = g.n <= _DEDUP_CANONICAL_MAX_N
    keys = []
    key_spec = {}
    for spec in specs:
        k = _spec_key(spec)
        if k not in key_spec:
            key_spec[k] = spec
            keys.append(k)
    rep = _orbit_reps(g, keys) if exact else {k: k for k in keys}
    rep_class: dict = {}
    seen = set()
    kept = []
    for k in keys:
        r = rep[k]
        if r not in rep_class:
            mate = apply_switching(g, key_spec[r])
            if mate == g:
                rep_class[r] = None
            else:
                rep_class[r] = canonical_form(mate) if exact else _fingerprint(mate)
        cls = rep_class[r]
        if cls is None or cls in seen:
            continue
        seen.add(cls)
        kept.append(key_spec[k])
    return kept, exact


def search_gm4(g: Graph, cfg: SearchConfig) -> SearchResult:
    """All single 4-cell GM specs on g, within candidate and time budgets."""
    rows = g.rows
    n = g.n
    deadline = time.monotonic() + cfg.time_budget
    specs = []
    partial = False
    examined = 0
    for cell in combinations(range(n), 4):
        if examined >= cfg.max_candidates:
            partial = True
            break
        examined += 1
        if examined % 1024 == 0 and time.monotonic() > deadline:
            partial = True
            break
        a, b, c, d = cell
        cmask = (1 << a) | (1 << b) | (1 << c) | (1 << d)
        k0 = (rows[a] & cmask).bit_count()
        if ((rows[b] & cmask).bit_count() != k0
                or (rows[c] & cmask).bit_count() != k0
                or (rows[d] & cmask).bit_count() != k0):
            continue
        ok = True
        for v in range(n):
            if (cmask >> v) & 1:
                continue
            if (rows[v] & cmask).bit_count() not in (0, 2, 4):
                ok = False
                break
        if ok:
            specs.append(GmSpec([cell]))
    if cfg.dedup:
        kept, exact = _dedup(g, specs)
        return SearchResult(tuple(kept), partial, exact)
    return SearchResult(tuple(specs), partial, None)


def search_wqh33(g: Graph, candidates1, candidates2, cfg: SearchConfig) -> SearchResult:
    """Validating WQH specs among pairs from two triple-candidate lists."""
    rows = g.rows
    n = g.n
    c1s = [tuple(t) for t in candidates1]
    c2s = [tuple(t) for t in candidates2]
    for t in c1s + c2s:
        if len(t) != 3 or len(set(t)) != 3 or not all(0 <= v < n for v in t):
            raise ValueError(f"candidate triple {t} invalid for n={n}")
    masks1 = [(1 << t[0]) | (1 << t[1]) | (1 << t[2]) for t in c1s]
    masks2 = [(1 << t[0]) | (1 << t[1]) | (1 << t[2]) for t in c2s]
    deadline = time.monotonic() + cfg.time_budget
    specs = []
    seen_pairs = set()
    partial = False
    examined = 0
    for i, t1 in enumerate(c1s):
        m1 = masks1[i]
        if partial:
            break
        for j, t2 in enumerate(c2s):
            if examined >= cfg.max_candidates:
                partial = True
                break
            examined += 1
            if examined % 4096 == 0 and time.monotonic() > deadline:
                partial = True
                break
            m2 = masks2[j]
            if m1 & m2:
                continue
            key = (m1, m2) if m1 < m2 else (m2, m1)
            if key in seen_pairs:
                continue
            # cheap check: one constant c across all six cell vertices
            c = None
            ok = True
            for own, other, cell in ((m1, m2, t1), (m2, m1, t2)):
                for v in cell:
                    d = (rows[v] & own).bit_count() - (rows[v] & other).bit_count()
                    if c is None:
                        c = d
                    elif d != c:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            both = m1 | m2
            size = 3
            for v in range(n):
                if (both >> v) & 1:
                    continue
                n1 = (rows[v] & m1).bit_count()
                n2 = (rows[v] & m2).bit_count()
                if n1 != n2 and not (n1 == size and n2 == 0) and not (n1 == 0 and n2 == size):
                    ok = False
                    break
            if ok:
                seen_pairs.add(key)
                specs.append(WqhSpec(t1, t2))
    if cfg.dedup:
        kept, exact = _dedup(g, specs)
        return SearchResult(tuple(kept), partial, exact)
    return SearchResult(tuple(specs), partial, None)


def johnson_core_triples(n: int, k: int) -> list[tuple[int, int, int]]:
    """Triples {A u {x} : x in X} for (k-1)-sets A and disjoint 3-sets X.

    Vertex indices refer to the canonical order of J_S(n,k); the S plays no
    role in the candidate shape.
    """
    if k < 2:
        raise ValueError("pattern needs k >= 2")
    out = []
    universe = range(1, n + 1)
    for a in combinations(universe, k - 1):
        rest = [x for x in universe if x not in a]
        for xs in combinations(rest, 3):
            out.append(tuple(johnson_rank(mask_of_elements(a + (x,), n)) for x in xs))
    return out


def _block_partitions(elems: tuple[int, ...], size: int):
    """Partitions of elems into blocks of the given size, deterministic order."""
    if not elems:
        yield ()
        return
    first = elems[0]
    rest = elems[1:]
    for others in combinations(rest, size - 1):
        block = (first,) + others
        remaining = tuple(x for x in rest if x not in others)
        for tail in _block_partitions(remaining, size):
            yield (block,) + tail


def johnson_block_triples(n: int, k: int, base: tuple[int, ...] | None = None
                          ) -> list[tuple[int, int, int]]:
    """Triples {B u {x} : B in a partition of a fixed 3(k-1)-set}, x outside.

    Default base: the first 3(k-1) ground elements.  Every partition of the
    base into three (k-1)-blocks is combined with every tail element x.
    """
    if k < 2:
        raise ValueError("pattern needs k >= 2")
    need = 3 * (k - 1)
    if base is None:
        base = tuple(range(1, need + 1))
    base = tuple(sorted(base))
    if len(base) != need or not all(1 <= e <= n for e in base):
        raise ValueError(f"base must hold {need} distinct ground elements in 1..{n}")
    tails = [x for x in range(1, n + 1) if x not in base]
    out = []
    for blocks in _block_partitions(base, k - 1):
        for x in tails:
            out.append(tuple(
                johnson_rank(mask_of_elements(b + (x,), n)) for b in blocks
            ))
    return out
