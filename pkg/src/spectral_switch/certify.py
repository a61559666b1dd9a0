"""Non-isomorphism certification via an invariant ladder.

Cheapest first: sorted degree sequence, common-neighbor count multiset over
edges, the same over non-edges, 1-WL stable color histogram, and finally
individualization-refinement canonical forms.  The verdict names the level
that distinguished, or carries an explicit isomorphism when canonical forms
match, or reports unknown when the canonical search exhausts its budget.

Also provides the selective neighbor count lambda(a; b, c) = #{x ~ a, x !~ b,
x !~ c} and an exhaustive scan for pairwise non-adjacent triples realizing
lambda(a; b, c) = 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .canon import (
    BudgetExhaustedError,
    DEFAULT_NODE_BUDGET,
    canonical_labeling,
    wl1_histogram,
)
from .graphcore import Graph

__all__ = [
    "LambdaProfile",
    "lambda_profile",
    "vertex_lambda_colors",
    "selective_neighbor_count",
    "scan_triple_property",
    "NonIsoVerdict",
    "nonisomorphic",
    "canonical_form",
    "LADDER_LEVELS",
]

LADDER_LEVELS = ("degree-seq", "edge-lambda", "nonedge-lambda", "wl1-histogram",
                 "canonical-form")


@dataclass(frozen=True)
class LambdaProfile:
    """Multisets of common-neighbor counts over edges and non-edges."""

    edge: tuple[tuple[int, int], ...]  # sorted (count, multiplicity)
    nonedge: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {
            "edge": [list(x) for x in self.edge],
            "nonedge": [list(x) for x in self.nonedge],
        }


def lambda_profile(g: Graph) -> LambdaProfile:
    rows = g.rows
    edge: Counter = Counter()
    nonedge: Counter = Counter()
    for u in range(g.n):
        ru = rows[u]
        for v in range(u + 1, g.n):
            lam = (ru & rows[v]).bit_count()
            if (ru >> v) & 1:
                edge[lam] += 1
            else:
                nonedge[lam] += 1
    return LambdaProfile(tuple(sorted(edge.items())), tuple(sorted(nonedge.items())))


def vertex_lambda_colors(g: Graph) -> list[int]:
    """Per-vertex invariant color: degree plus local common-neighbor counts.

    Used to seed canonical labeling and give it a head start on graphs whose
    vertices differ in second-order structure; any label-invariant coloring
    is sound here.
    """
    rows = g.rows
    sigs = []
    for v in range(g.n):
        rv = rows[v]
        ec = Counter()
        nc = Counter()
        for u in range(g.n):
            if u == v:
                continue
            lam = (rv & rows[u]).bit_count()
            if (rv >> u) & 1:
                ec[lam] += 1
            else:
                nc[lam] += 1
        sigs.append((rv.bit_count(), tuple(sorted(ec.items())), tuple(sorted(nc.items()))))
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def canonical_form(g: Graph, budget: int = DEFAULT_NODE_BUDGET) -> bytes:
    """Canonical byte string; equal iff graphs are isomorphic.

    Seeds the search with the vertex lambda coloring, which is part of the
    documented canonical form (certificates embed the coloring signature).
    """
    from .canon import canonical_form as base_form

    return base_form(g, budget, vertex_lambda_colors(g))


def selective_neighbor_count(g: Graph, a: int, b: int, c: int) -> int:
    """#\\{x : x ~ a, x !~ b, x !~ c, x not in {a,b,c}\\}."""
    if len({a, b, c}) != 3:
        raise ValueError("selective_neighbor_count needs three distinct vertices")
    full = (1 << g.n) - 1
    mask = g.rows[a] & ~g.rows[b] & ~g.rows[c] & full
    mask &= ~((1 << a) | (1 << b) | (1 << c))
    return mask.bit_count()


def count_nonadjacent_triples(g: Graph) -> int:
    """Number of pairwise non-adjacent vertex triples."""
    full = (1 << g.n) - 1
    total = 0
    rows = g.rows
    for u in range(g.n):
        cu = ~rows[u] & full & ~((1 << u) - 1) & ~(1 << u)  # non-neighbors above u
        m = cu
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            total += (cu & ~rows[v] & ~((1 << (v + 1)) - 1)).bit_count()
    return total


def scan_triple_property(g: Graph, budget: int = 2_000_000, candidates=None) -> bool:
    """Does some pairwise non-adjacent triple (a,b,c) have lambda(a;b,c) = 1?

    Exhaustive over ordered triples when the graph has at most `budget`
    non-adjacent (unordered) triples; otherwise restricted to the supplied
    candidate triples.  The count is an ordered property of a: all three
    rotations of each unordered triple are tested.
    """
    if candidates is None:
        if count_nonadjacent_triples(g) > budget:
            raise ValueError(
                "too many non-adjacent triples for an exhaustive scan; "
                "pass explicit candidate triples"
            )
        candidates = _nonadjacent_triples(g)
    for a, b, c in candidates:
        if (selective_neighbor_count(g, a, b, c) == 1
                or selective_neighbor_count(g, b, a, c) == 1
                or selective_neighbor_count(g, c, a, b) == 1):
            return True
    return False


def _nonadjacent_triples(g: Graph):
    full = (1 << g.n) - 1
    rows = g.rows
    for u in range(g.n):
        cu = ~rows[u] & full & ~((1 << (u + 1)) - 1)
        m = cu
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            rest = cu & ~rows[v] & ~((1 << (v + 1)) - 1)
            while rest:
                lw = rest & -rest
                yield (u, v, lw.bit_length() - 1)
                rest ^= lw


@dataclass(frozen=True)
class NonIsoVerdict:
    distinguished: bool
    level: str | None
    witness: str | None
    node_budget_exhausted: bool = False
    isomorphism: tuple[int, ...] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "distinguished": self.distinguished,
            "level": self.level,
            "witness": self.witness,
            "node_budget_exhausted": self.node_budget_exhausted,
        }
        if self.isomorphism is not None:
            out["isomorphism"] = list(self.isomorphism)
        return out


def _counter_witness(c1, c2, what: str) -> str:
    keys = sorted(set(dict(c1)) | set(dict(c2)))
    d1, d2 = dict(c1), dict(c2)
    for k in keys:
        a, b = d1.get(k, 0), d2.get(k, 0)
        if a != b:
            return (f"{what} {k} appears {a} times in graph 1 "
                    f"but {b} times in graph 2")
    raise AssertionError("counters compared equal")


def nonisomorphic(g1: Graph, g2: Graph,
                  budget: int = DEFAULT_NODE_BUDGET) -> NonIsoVerdict:
    """Run the invariant ladder; see module docstring for the levels."""
    if g1.n != g2.n:
        return NonIsoVerdict(True, "degree-seq",
                             f"vertex counts differ: {g1.n} vs {g2.n}")
    d1, d2 = sorted(g1.degrees()), sorted(g2.degrees())
    if d1 != d2:
        i = next(i for i, (a, b) in enumerate(zip(d1, d2)) if a != b)
        return NonIsoVerdict(True, "degree-seq",
                             f"sorted degree sequences differ at position {i}: "
                             f"{d1[i]} vs {d2[i]}")
    p1, p2 = lambda_profile(g1), lambda_profile(g2)
    if p1.edge != p2.edge:
        return NonIsoVerdict(True, "edge-lambda",
                             _counter_witness(p1.edge, p2.edge,
                                              "edge common-neighbor count"))
    if p1.nonedge != p2.nonedge:
        return NonIsoVerdict(True, "nonedge-lambda",
                             _counter_witness(p1.nonedge, p2.nonedge,
                                              "non-edge common-neighbor count"))
    r1, h1 = wl1_histogram(g1)
    r2, h2 = wl1_histogram(g2)
    if r1 != r2:
        # compare colors after the same number of rounds
        rounds = max(r1, r2)
        _, h1 = wl1_histogram(g1, rounds)
        _, h2 = wl1_histogram(g2, rounds)
    if h1 != h2:
        return NonIsoVerdict(True, "wl1-histogram",
                             _counter_witness(h1, h2, "stable 1-WL color"))
    try:
        colors1 = vertex_lambda_colors(g1)
        colors2 = vertex_lambda_colors(g2)
        cert1, perm1 = canonical_labeling(g1, budget, colors1)
        cert2, perm2 = canonical_labeling(g2, budget, colors2)
    except BudgetExhaustedError:
        return NonIsoVerdict(False, "canonical-form", None, node_budget_exhausted=True)
    if cert1 != cert2:
        return NonIsoVerdict(True, "canonical-form",
                             "canonical certificates differ")
    # certificates agree: read off the isomorphism position by position
    iso = [0] * g1.n
    for pos in range(g1.n):
        iso[perm1[pos]] = perm2[pos]
    return NonIsoVerdict(False, "canonical-form", "canonical certificates agree",
                         isomorphism=tuple(iso))
