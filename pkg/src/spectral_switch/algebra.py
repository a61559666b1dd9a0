"""Exact combinatorics and small finite-field linear algebra.

Counts are exact Python integers.  Finite fields of order q <= 16 are lookup
tables built from fixed irreducible polynomials and checked against the field
axioms at construction time.  Matrices over these fields support reduced row
echelon form, rank, and subspace intersection dimension; RREF with zero rows
dropped is the canonical representative of a row space.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb as binom  # re-exported; exact for all n >= 0

__all__ = [
    "binom",
    "gauss_binom",
    "FieldTable",
    "FieldElem",
    "field_table",
    "SUPPORTED_Q",
    "MatrixFq",
    "rref",
    "rank",
    "intersection_dim",
]

# Prime-power orders with a fixed monic irreducible polynomial over the prime
# subfield (ascending coefficients, constant first).  Elements of F_{p^e} are
# encoded as integers 0..q-1 read as base-p digit strings, digit i being the
# coefficient of x^i.
SUPPORTED_Q = {
    2: (2, 1, None),
    3: (3, 1, None),
    4: (2, 2, (1, 1, 1)),  # x^2 + x + 1
    5: (5, 1, None),
    7: (7, 1, None),
    8: (2, 3, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, 2, (1, 0, 1)),  # x^2 + 1
    11: (11, 1, None),
    13: (13, 1, None),
    16: (2, 4, (1, 1, 0, 0, 1)),  # x^4 + x + 1
}


def gauss_binom(n: int, k: int, q: int) -> int:
    """Gaussian binomial coefficient [n choose k]_q, exactly.

    Counts k-dimensional subspaces of an n-dimensional space over F_q when q
    is a prime power; defined by the same product formula for any integer
    q >= 2.  Returns 0 when k < 0 or k > n.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def _digits(value: int, p: int, e: int) -> tuple[int, ...]:
    out = []
    for _ in range(e):
        out.append(value % p)
        value //= p
    return tuple(out)


def _undigits(digits, p: int) -> int:
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out


def _polymul_mod(a, b, p, modpoly):
    """Multiply digit polynomials a*b mod (modpoly, p); modpoly monic."""
    e = len(modpoly) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce by the monic modulus
    for i in range(len(prod) - 1, e - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(e + 1):
                prod[i - e + j] = (prod[i - e + j] - c * modpoly[j]) % p
    return tuple(prod[:e]) + (0,) * (e - len(prod))


class FieldTable:
    """Arithmetic tables for F_q, q in SUPPORTED_Q.

    Attributes add, mul are q x q tuples; neg and inv are length-q tuples
    (inv[0] is None).  Construction verifies every field axiom exhaustively.
    """

    __slots__ = ("q", "p", "e", "add", "mul", "neg", "inv")

    def __init__(self, q: int):
        if q not in SUPPORTED_Q:
            raise ValueError(f"unsupported field order {q}; supported: {sorted(SUPPORTED_Q)}")
        p, e, modpoly = SUPPORTED_Q[q]
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            add = tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
            mul = tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
        else:
            digs = [_digits(v, p, e) for v in range(q)]
            add = tuple(
                tuple(_undigits([(x + y) % p for x, y in zip(digs[a], digs[b])], p) for b in range(q))
                for a in range(q)
            )
            mul = tuple(
                tuple(_undigits(_polymul_mod(digs[a], digs[b], p, modpoly), p) for b in range(q))
                for a in range(q)
            )
        self.add = add
        self.mul = mul
        neg = [0] * q
        inv = [None] * q
        for a in range(q):
            for b in range(q):
                if add[a][b] == 0:
                    neg[a] = b
                if a and mul[a][b] == 1:
                    inv[a] = b
        self.neg = tuple(neg)
        self.inv = tuple(inv)
        self._check_axioms()

    def _check_axioms(self):
        q, add, mul = self.q, self.add, self.mul
        rng = range(q)
        for a in rng:
            if add[a][0] != a or mul[a][1] != a or mul[a][0] != 0:
                raise AssertionError(f"identity axiom fails in F_{q} at {a}")
            if add[a][self.neg[a]] != 0:
                raise AssertionError(f"additive inverse fails in F_{q} at {a}")
            if a and mul[a][self.inv[a]] != 1:
                raise AssertionError(f"multiplicative inverse fails in F_{q} at {a}")
            for b in rng:
                if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                    raise AssertionError(f"commutativity fails in F_{q} at {a},{b}")
                for c in rng:
                    if add[add[a][b]][c] != add[a][add[b][c]]:
                        raise AssertionError(f"additive associativity fails in F_{q}")
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        raise AssertionError(f"multiplicative associativity fails in F_{q}")
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise AssertionError(f"distributivity fails in F_{q}")

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def __repr__(self):
        return f"FieldTable(q={self.q})"


_FIELD_CACHE: dict[int, FieldTable] = {}


def field_table(q: int) -> FieldTable:
    """Shared FieldTable instance for a supported order q."""
    tab = _FIELD_CACHE.get(q)
    if tab is None:
        tab = _FIELD_CACHE[q] = FieldTable(q)
    return tab


@dataclass(frozen=True)
class FieldElem:
    """An element of F_q, by value in 0..q-1."""

    value: int
    field: FieldTable

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"value {self.value} out of range for F_{self.field.q}")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._same(other)
        return FieldElem(self.field.add[self.value][other.value], self.field)

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._same(other)
        return FieldElem(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._same(other)
        return FieldElem(self.field.mul[self.value][other.value], self.field)

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field.neg[self.value], self.field)

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.field.q}")
        return FieldElem(self.field.inv[self.value], self.field)

    def _same(self, other):
        if self.field.q != other.field.q:
            raise ValueError(f"mixed fields F_{self.field.q} and F_{other.field.q}")


class MatrixFq:
    """Immutable matrix over F_q; entries stored as ints in 0..q-1."""

    __slots__ = ("field", "rows", "ncols")

    def __init__(self, field: FieldTable, rows, ncols: int | None = None):
        rows = tuple(
            tuple(e.value if isinstance(e, FieldElem) else int(e) for e in row) for row in rows
        )
        if rows:
            ncols = len(rows[0]) if ncols is None else ncols
            for row in rows:
                if len(row) != ncols:
                    raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("ncols required for a matrix with no rows")
        for row in rows:
            for e in row:
                if not 0 <= e < field.q:
                    raise ValueError(f"entry {e} out of range for F_{field.q}")
        self.field = field
        self.rows = rows
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> FieldElem:
        return FieldElem(self.rows[i][j], self.field)

    def stack(self, other: "MatrixFq") -> "MatrixFq":
        if other.field.q != self.field.q or other.ncols != self.ncols:
            raise ValueError("stack needs matching field and width")
        return MatrixFq(self.field, self.rows + other.rows, self.ncols)

    def pivot_columns(self) -> tuple[int, ...]:
        """Leading-entry column of each row; meaningful on RREF matrices."""
        out = []
        for row in self.rows:
            for j, e in enumerate(row):
                if e:
                    out.append(j)
                    break
        return tuple(out)

    def is_rref(self) -> bool:
        piv = []
        for row in self.rows:
            lead = next((j for j, e in enumerate(row) if e), None)
            if lead is None:
                return False  # zero rows are dropped in canonical form
            if piv and lead <= piv[-1]:
                return False
            if row[lead] != 1:
                return False
            piv.append(lead)
        for j in piv:
            col_nonzero = sum(1 for row in self.rows if row[j])
            if col_nonzero != 1:
                return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, MatrixFq)
            and self.field.q == other.field.q
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field.q, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join("".join(str(e) for e in row) for row in self.rows)
        return f"MatrixFq(q={self.field.q}, [{body}], ncols={self.ncols})"


def rref(m: MatrixFq) -> MatrixFq:
    """Reduced row echelon form with zero rows removed.

    The result is the canonical representative of the row space: pivots are 1,
    pivot columns are otherwise zero, pivot positions strictly increase.
    """
    f = m.field
    add, mul, neg, inv = f.add, f.mul, f.neg, f.inv
    work = [list(row) for row in m.rows]
    nr, nc = len(work), m.ncols
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        s = inv[work[r][c]]
        if s != 1:
            work[r] = [mul[s][e] for e in work[r]]
        for i in range(nr):
            if i != r and work[i][c]:
                t = neg[work[i][c]]
                row_r = work[r]
                work[i] = [add[e][mul[t][x]] for e, x in zip(work[i], row_r)]
        r += 1
        if r == nr:
            break
    return MatrixFq(f, [row for row in work if any(row)], nc)


def rank(m: MatrixFq) -> int:
    """Rank of the matrix over its field."""
    return rref(m).nrows


def intersection_dim(u: MatrixFq, v: MatrixFq) -> int:
    """dim(U cap V) for row spaces U, V of the same ambient space.

    Uses dim U + dim V - dim(U + V); callers pass canonical RREF bases but any
    bases work since ranks are recomputed.
    """
    if u.field.q != v.field.q:
        raise ValueError(f"mixed fields F_{u.field.q} and F_{v.field.q}")
    if u.ncols != v.ncols:
        raise ValueError(f"mixed ambient dimensions {u.ncols} and {v.ncols}")
    return rank(u) + rank(v) - rank(u.stack(v))


def f2_rank(rows) -> int:
    """Rank over F_2 of rows given as bitmask ints."""
    basis: dict[int, int] = {}  # leading bit -> reduced row
    for x in rows:
        while x:
            h = x.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = x
                break
            x ^= b
    return len(basis)
