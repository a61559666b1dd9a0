"""Characteristic polynomials modulo random 31-bit primes.

Cospectrality of integer adjacency matrices is decided by comparing
char(xI - A) over F_p for several primes drawn deterministically from a
seed.  A disagreement is a certain "not cospectral"; agreement is one-sided
Monte Carlo with the error bound reported in the verdict.

The per-prime computation reduces A to Hessenberg form by similarity over
F_p (vectorized int64 arithmetic, safe for p < 2^31), then runs the
division-free leading-principal-minor recurrence.
"""

from __future__ import annotations

import hashlib
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graphcore import Graph

__all__ = [
    "is_probable_prime",
    "random_primes",
    "charpoly_mod_p",
    "CharPolySignature",
    "signature",
    "CospectralVerdict",
    "cospectral",
    "eigenvalues_float",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers all 64-bit ints)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_primes(count: int, seed: int) -> tuple[int, ...]:
    """Deterministic distinct primes in (2^30, 2^31)."""
    rng = random.Random(seed)
    out: list[int] = []
    seen = set()
    while len(out) < count:
        c = rng.randrange((1 << 30) + 1, 1 << 31) | 1
        if c not in seen and is_probable_prime(c):
            seen.add(c)
            out.append(c)
    return tuple(out)


def _adjacency_int64(g: Graph) -> np.ndarray:
    n = g.n
    nbytes = (n + 7) // 8
    buf = bytearray(n * nbytes)
    for v, row in enumerate(g.rows):
        buf[v * nbytes:(v + 1) * nbytes] = row.to_bytes(nbytes, "little")
    bits = np.unpackbits(
        np.frombuffer(bytes(buf), dtype=np.uint8).reshape(n, nbytes),
        axis=1, bitorder="little", count=n,
    )
    return bits.astype(np.int64)


def _matvec_mod(mat: np.ndarray, vec: np.ndarray, p: int) -> np.ndarray:
    """(mat @ vec) mod p without int64 overflow; entries in [0, p), p < 2^31.

    The vector is split into 16-bit halves so each accumulated dot product
    stays below 2^63 for inner dimensions up to 2^15.
    """
    lo = vec & 0xFFFF
    hi = vec >> 16
    acc = mat @ lo % p
    if hi.any():
        acc = (acc + ((mat @ hi % p) << 16)) % p
    return acc


def _hessenberg_mod(a: np.ndarray, p: int) -> np.ndarray:
    """In-place similarity reduction to upper Hessenberg form over F_p."""
    n = a.shape[0]
    for j in range(n - 2):
        col = a[j + 1:, j]
        if col[0] == 0:
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            i = j + 1 + int(nz[0])
            a[[j + 1, i], :] = a[[i, j + 1], :]
            a[:, [j + 1, i]] = a[:, [i, j + 1]]
        pivot = int(a[j + 1, j])
        inv = pow(pivot, p - 2, p)
        fs = a[j + 2:, j] * inv % p
        if fs.any():
            # row ops: row_i -= f_i * row_{j+1}; f*row < 2^62, no overflow
            a[j + 2:, j:] = (a[j + 2:, j:] - fs[:, None] * a[j + 1, j:]) % p
            # matching column op: col_{j+1} += sum_i f_i * col_i
            a[:, j + 1] = (a[:, j + 1] + _matvec_mod(a[:, j + 2:], fs, p)) % p
    return a


def _charpoly_from_hessenberg(h: np.ndarray, p: int) -> np.ndarray:
    """Ascending coefficients of det(xI - H) mod p for Hessenberg H."""
    n = h.shape[0]
    c = np.zeros((n + 1, n + 1), dtype=np.int64)
    c[0, 0] = 1
    pv = np.zeros(0, dtype=np.int64)  # pv[r] = prod of subdiagonal h[j, j-1], r < j <= m-1
    for m in range(1, n + 1):
        hm = int(h[m - 1, m - 1])
        c[m, 1:m + 1] = c[m - 1, 0:m]
        if hm:
            c[m, 0:m] = (c[m, 0:m] - hm * c[m - 1, 0:m]) % p
        if m >= 2:
            v = h[0:m - 1, m - 1] * pv % p
            if v.any():
                contrib = _matvec_mod(np.ascontiguousarray(c[0:m - 1, 0:m].T), v, p)
                c[m, 0:m] = (c[m, 0:m] - contrib) % p
        if m < n:
            pv = np.concatenate((pv, np.ones(1, dtype=np.int64)))
            pv = pv * int(h[m, m - 1]) % p
    return c[n] % p


def charpoly_mod_p(g: Graph, p: int) -> tuple[int, ...]:
    """Coefficients of det(xI - A) mod p, descending (leading 1 first)."""
    if not is_probable_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p >= 1 << 31:
        raise ValueError(f"modulus {p} too large; need p < 2^31")
    n = g.n
    if n > 1 << 15:
        raise ValueError(f"n={n} too large for the overflow-safe kernel")
    if n == 0:
        return (1,)
    a = _hessenberg_mod(_adjacency_int64(g), p)
    asc = _charpoly_from_hessenberg(a, p)
    return tuple(int(x) for x in asc[::-1])


@dataclass(frozen=True)
class CharPolySignature:
    """Charpoly coefficients (descending) for each of several primes."""

    n: int
    primes: tuple[int, ...]
    coeffs: tuple[tuple[int, ...], ...]

    def coeff_hashes(self) -> dict[str, str]:
        out = {}
        for p, cs in zip(self.primes, self.coeffs):
            h = hashlib.sha256()
            for c in cs:
                h.update(c.to_bytes(8, "little"))
            out[str(p)] = h.hexdigest()
        return out

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "primes": list(self.primes),
            "coeff_hashes": self.coeff_hashes(),
        }


def signature(g: Graph, primes, threads: int = 1) -> CharPolySignature:
    """Charpoly signature of g at the given primes."""
    primes = tuple(primes)
    if threads > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            coeffs = tuple(ex.map(lambda p: charpoly_mod_p(g, p), primes))
    else:
        coeffs = tuple(charpoly_mod_p(g, p) for p in primes)
    return CharPolySignature(g.n, primes, coeffs)


@dataclass(frozen=True)
class CospectralVerdict:
    equal: bool
    primes_used: tuple[int, ...]
    first_disagreeing_coefficient: tuple[int, int] | None
    error_bound: float | None

    def to_json_dict(self) -> dict:
        out = {
            "equal": self.equal,
            "primes_used": list(self.primes_used),
        }
        if self.first_disagreeing_coefficient is not None:
            p, i = self.first_disagreeing_coefficient
            out["first_disagreeing_coefficient"] = {"prime": p, "index": i}
        if self.error_bound is not None:
            out["error_bound"] = self.error_bound
        return out


def _equal_error_bound(n: int, num_primes: int) -> float:
    # Hadamard: every coefficient is at most binom(n, i) * i^(i/2) in absolute
    # value, so log2 |coeff| <= n + (n/2) log2 n; a coefficient mismatch
    # survives modulo at most that many bits / 30 of the 31-bit primes
    log2_max = n + 0.5 * n * math.log2(max(n, 2))
    bad = (n * log2_max) / 30.0
    return min(1.0, bad * 2.0 ** (-30.0 * num_primes))


def cospectral(g1: Graph, g2: Graph, num_primes: int = 3, seed: int = 0,
               threads: int = 1) -> CospectralVerdict:
    """One-sided Monte Carlo cospectrality test.

    "Not equal" is certain; "equal" holds up to the reported error bound.
    Graphs on different vertex counts are never cospectral.
    """
    if num_primes < 1:
        raise ValueError("need at least one prime")
    if g1.n != g2.n:
        return CospectralVerdict(False, (), None, None)
    primes = random_primes(num_primes, seed)
    sig1 = signature(g1, primes, threads)
    sig2 = signature(g2, primes, threads)
    for p, c1, c2 in zip(primes, sig1.coeffs, sig2.coeffs):
        if c1 != c2:
            idx = next(i for i, (a, b) in enumerate(zip(c1, c2)) if a != b)
            return CospectralVerdict(False, primes, (p, idx), None)
    return CospectralVerdict(True, primes, None, _equal_error_bound(g1.n, num_primes))


def eigenvalues_float(g: Graph) -> list[float]:
    """Floating adjacency eigenvalues, ascending; diagnostics only."""
    a = _adjacency_int64(g).astype(np.float64)
    return [float(x) for x in np.linalg.eigvalsh(a)]
