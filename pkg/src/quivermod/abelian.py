"""Exact Smith normal form and abelianization of finite presentations.

All arithmetic is arbitrary-precision integer; the pivot strategy picks a
smallest nonzero entry to fight coefficient growth.  The transforms U, V
with U*A*V = D are recorded so tests can verify them unimodular.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            v = ai[k]
            if v:
                bk = b[k]
                row = out[i]
                for j in range(cols):
                    row[j] += v * bk[j]
    return out


def determinant(matrix):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(matrix):
    """Return (D, U, V) with U*A*V = D diagonal, d_i | d_{i+1}, U, V unimodular."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    d = [row[:] for row in matrix]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        for j in range(cols):
            d[dst][j] += q * d[src][j]
        for j in range(rows):
            u[dst][j] += q * u[src][j]

    def add_col(src, dst, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if d[t][t] < 0:
            negate_row(t)
        # enforce the divisibility chain before moving on
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t] != 0:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    return d, u, v


@dataclass(frozen=True)
class AbelianInvariants:
    """Finitely generated abelian group Z^rank x prod Z/d_i, d_1 | d_2 | ..."""

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {self.torsion} is not a divisor chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion entries must exceed 1")

    def primary_decomposition(self):
        """CRT form: sorted list of prime-power cyclic factors."""
        parts = []
        for d in self.torsion:
            rest = d
            p = 2
            while p * p <= rest:
                if rest % p == 0:
                    q = 1
                    while rest % p == 0:
                        rest //= p
                        q *= p
                    parts.append(q)
                p += 1
            if rest > 1:
                parts.append(rest)
        return sorted(parts)

    def describe(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        chain = " x ".join(parts) if parts else "trivial"
        primary = ["Z"] * self.free_rank + [f"Z/{q}" for q in self.primary_decomposition()]
        crt = " x ".join(primary) if primary else "trivial"
        if crt != chain:
            return f"{chain}  (= {crt})"
        return chain

    def __str__(self):
        return self.describe()


def abelianize_matrix(exponent_rows, n_generators):
    """Invariants of Z^n modulo the row space of the exponent matrix."""
    if not exponent_rows:
        return AbelianInvariants(n_generators, ())
    d, _, _ = smith_normal_form(exponent_rows)
    diag = [d[i][i] for i in range(min(len(d), n_generators))]
    torsion = tuple(x for x in diag if x > 1)
    rank = n_generators - sum(1 for x in diag if x != 0)
    return AbelianInvariants(rank, torsion)


def abelianize(presentation):
    """Abelianization of a Presentation (relator exponent sums + SNF)."""
    return abelianize_matrix(presentation.exponent_matrix(),
                             len(presentation.generators))
