import random

import networkx as nx
import pytest

from spectral_switch.graphcore import Graph
from spectral_switch.spectra import (
    charpoly_mod_p,
    cospectral,
    eigenvalues_float,
    is_probable_prime,
    random_primes,
    signature,
)

from oracles import charpoly_exact, triangle_count_brute


def _mod(coeffs, p):
    return tuple(c % p for c in coeffs)


def test_charpoly_hand_values():
    p = 2_147_483_029
    k3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert charpoly_mod_p(k3, p) == _mod([1, 0, -3, -2], p)
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert charpoly_mod_p(p3, p) == _mod([1, 0, -2, 0], p)
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert charpoly_mod_p(c4, p) == _mod([1, 0, -4, 0, 0], p)
    k4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert charpoly_mod_p(k4, p) == _mod([1, 0, -6, -8, -3], p)
    empty = Graph.from_edges(3, [])
    assert charpoly_mod_p(empty, p) == (1, 0, 0, 0)


def test_charpoly_vs_exact_oracle_random():
    rng = random.Random(99)
    primes = random_primes(3, seed=17)
    for _ in range(25):
        n = rng.randrange(2, 13)
        nxg = nx.gnp_random_graph(n, rng.uniform(0.2, 0.8), seed=rng.randrange(10**6))
        g = Graph.from_edges(n, list(nxg.edges()))
        exact = charpoly_exact(g)
        for p in primes:
            assert charpoly_mod_p(g, p) == _mod(exact, p)


def test_charpoly_coefficient_identities_random():
    rng = random.Random(5)
    p = random_primes(1, seed=3)[0]
    for _ in range(20):
        n = rng.randrange(4, 14)
        nxg = nx.gnp_random_graph(n, 0.5, seed=rng.randrange(10**6))
        g = Graph.from_edges(n, list(nxg.edges()))
        cs = charpoly_mod_p(g, p)
        assert cs[0] == 1
        assert cs[1] == 0  # trace
        assert cs[2] == (-g.num_edges()) % p
        assert cs[3] == (-2 * triangle_count_brute(g)) % p


def test_charpoly_rejects_bad_prime():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        charpoly_mod_p(g, 10)
    with pytest.raises(ValueError):
        charpoly_mod_p(g, 2**31 + 11)  # prime but too wide


def test_random_primes_deterministic():
    a = random_primes(5, seed=0)
    b = random_primes(5, seed=0)
    assert a == b
    assert len(set(a)) == 5
    for p in a:
        assert 2**30 < p < 2**31
        assert is_probable_prime(p)
    assert random_primes(5, seed=1) != a


def test_miller_rabin_known_values():
    for p in (2, 3, 5, 2_147_483_647, 1_073_741_827):
        assert is_probable_prime(p)
    for c in (1, 0, 561, 41041, 3215031751, 2_147_483_645):
        assert not is_probable_prime(c)


def test_signature_threads_agree(petersen):
    primes = random_primes(3, seed=0)
    s1 = signature(petersen, primes, threads=1)
    s2 = signature(petersen, primes, threads=3)
    assert s1.coeffs == s2.coeffs
    assert s1.coeff_hashes() == s2.coeff_hashes()


def test_cospectral_saltire_pair():
    """C4 plus an isolated vertex and the 4-star share a spectrum."""
    a = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)])
    b = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    v = cospectral(a, b)
    assert v.equal
    assert v.error_bound is not None and v.error_bound < 1e-6
    assert v.first_disagreeing_coefficient is None


def test_cospectral_detects_difference():
    a = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    b = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    v = cospectral(a, b)
    assert not v.equal
    assert v.first_disagreeing_coefficient is not None
    assert v.error_bound is None


def test_cospectral_different_sizes():
    a = Graph.from_edges(3, [])
    b = Graph.from_edges(4, [])
    assert not cospectral(a, b).equal


def test_cospectral_relabeled_graph(petersen):
    rng = random.Random(2)
    perm = list(range(petersen.n))
    rng.shuffle(perm)
    assert cospectral(petersen, petersen.relabel(perm)).equal


def test_eigenvalues_float(petersen):
    ev = eigenvalues_float(petersen)
    assert len(ev) == 10
    assert ev[-1] == pytest.approx(3.0)
    assert ev[0] == pytest.approx(-2.0)
