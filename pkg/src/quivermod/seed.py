"""Seeds: exchange matrix + exact A/X cluster variables + C-matrix tracker.

The A-variables of any seed reachable from the initial one are Laurent
polynomials in the initial A-variables (Laurent phenomenon); mutation
computes them by exact Laurent division, so a failed division would
expose a bug immediately.  X-variables are tracked as rational functions
in their own set of initial variables.  The C-matrix tracks principal
coefficients: rows are indexed by the initial vertices and columns follow
the current cluster positions; a mutation loop is trivial iff the final
C-matrix is the identity (synchronicity; cross-checked against the full
variable comparison throughout the test suite).
"""

from __future__ import annotations

import time

from .errors import FrozenVertexError, NotALoopError
from .laurent import LaurentPolynomial, RationalFunction
from .matrix import ExchangeMatrix
from .perms import Permutation
from .words import MutationWord


def _identity_rows(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mutate_c(c_rows, entries, k, n):
    """Mutation of the coefficient block of the extended matrix at k."""
    new = []
    for row in c_rows:
        out = []
        for j in range(n):
            if j == k:
                out.append(-row[k])
            else:
                a, b = row[k], entries[k][j]
                out.append(row[j] + (abs(a) * b + a * abs(b)) // 2)
        new.append(tuple(out))
    return tuple(new)


class Seed:
    """Immutable seed; mutation and permutation return new seeds."""

    __slots__ = ("matrix", "a_vars", "x_vars", "c_matrix")

    def __init__(self, matrix, a_vars, x_vars, c_matrix):
        self.matrix = matrix
        self.a_vars = tuple(a_vars)
        self.x_vars = tuple(x_vars)
        self.c_matrix = tuple(tuple(row) for row in c_matrix)

    @classmethod
    def initial(cls, matrix: ExchangeMatrix):
        n = matrix.n
        a = [LaurentPolynomial.generator(n, i) for i in range(n)]
        x = [RationalFunction.generator(n, i) for i in range(n)]
        return cls(matrix, a, x, _identity_rows(n))

    def __eq__(self, other):
        return (isinstance(other, Seed)
                and self.matrix == other.matrix
                and self.c_matrix == other.c_matrix
                and self.a_vars == other.a_vars
                and all(p == q for p, q in zip(self.x_vars, other.x_vars)))

    def mutate(self, k):
        m = self.matrix
        if k in m.frozen:
            raise FrozenVertexError(f"vertex {k} is frozen")
        e = m.entries
        n = m.n

        pos = LaurentPolynomial.constant(n, 1)
        neg = LaurentPolynomial.constant(n, 1)
        for j in range(n):
            if e[k][j] > 0:
                pos = pos * self.a_vars[j] ** e[k][j]
            elif e[k][j] < 0:
                neg = neg * self.a_vars[j] ** (-e[k][j])
        new_a = list(self.a_vars)
        new_a[k] = (pos + neg).div_exact(self.a_vars[k])

        new_x = list(self.x_vars)
        xk = self.x_vars[k]
        one = RationalFunction.constant(n, 1)
        for i in range(n):
            if i == k:
                new_x[i] = xk.inverse()
            elif e[i][k] != 0:
                sign = 1 if e[i][k] > 0 else -1
                factor = (one + xk ** (-sign)) ** (-e[i][k])
                new_x[i] = self.x_vars[i] * factor

        new_c = _mutate_c(self.c_matrix, e, k, n)
        return Seed(m.mutate(k), new_a, new_x, new_c)

    def permute(self, sigma: Permutation):
        m = self.matrix.permute(sigma)
        inv = sigma.inverse()
        n = self.matrix.n
        a = [self.a_vars[inv(i)] for i in range(n)]
        x = [self.x_vars[inv(i)] for i in range(n)]
        c = [tuple(row[inv(j)] for j in range(n)) for row in self.c_matrix]
        return Seed(m, a, x, c)

    def apply_word(self, word: MutationWord):
        seed = self
        for kind, value in word.tokens:
            if kind == "m":
                seed = seed.mutate(value)
            else:
                seed = seed.permute(value)
        return seed

    # -- diagnostics -------------------------------------------------------------

    def c_matrix_is_identity(self):
        return self.c_matrix == _identity_rows(self.matrix.n)

    def assert_sign_coherent(self):
        """Each c-vector (column of the C-matrix) has a uniform sign."""
        n = self.matrix.n
        for j in range(n):
            col = [self.c_matrix[i][j] for i in range(n)]
            if not (all(v >= 0 for v in col) or all(v <= 0 for v in col)):
                raise AssertionError(f"c-vector {j} is not sign-coherent: {col}")
        return True

    def a_denominators_are_monomial(self):
        # Laurent phenomenon holds by construction (exact division), so
        # this is a tautology kept as an explicit, testable statement.
        return all(isinstance(a, LaurentPolynomial) for a in self.a_vars)


def apply_word_to_matrix(matrix: ExchangeMatrix, word: MutationWord):
    m = matrix
    for kind, value in word.tokens:
        m = m.mutate(value) if kind == "m" else m.permute(value)
    return m


def matrix_trail(matrix: ExchangeMatrix, word: MutationWord):
    """All intermediate matrices along a word, starting with the input."""
    trail = [matrix]
    for kind, value in word.tokens:
        trail.append(trail[-1].mutate(value) if kind == "m" else trail[-1].permute(value))
    return trail


def is_trivial_loop(matrix: ExchangeMatrix, word: MutationWord, mode="cmatrix",
                    with_trail=False):
    """Decide whether a mutation loop is trivial.

    mode="cmatrix": integer-only check via the C-matrix (fast default).
    mode="full": exact comparison of all A- and X-variables.

    Raises NotALoopError when the word does not return to the initial
    exchange matrix.  Returns (verdict, report).
    """
    if mode not in ("cmatrix", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    if mode == "cmatrix":
        n = matrix.n
        m = matrix
        c = _identity_rows(n)
        for kind, value in word.tokens:
            if kind == "m":
                c = _mutate_c(c, m.entries, value, n)
                m = m.mutate(value)
            else:
                inv = value.inverse()
                c = tuple(tuple(row[inv(j)] for j in range(n)) for row in c)
                m = m.permute(value)
        if m != matrix:
            raise NotALoopError("word is not a mutation loop",
                                initial=matrix, final=m)
        trivial = c == _identity_rows(n)
    else:
        initial = Seed.initial(matrix)
        final = initial.apply_word(word)
        if final.matrix != matrix:
            raise NotALoopError("word is not a mutation loop",
                                initial=matrix, final=final.matrix)
        trivial = (final.a_vars == initial.a_vars
                   and all(p == q for p, q in zip(final.x_vars, initial.x_vars))
                   and final.c_matrix_is_identity())
    report = {
        "mode": mode,
        "trivial": trivial,
        "word_length": len(word),
        "elapsed": time.perf_counter() - start,
    }
    if mode == "cmatrix":
        report["note"] = ("c-matrix criterion (synchronicity) used without "
                          "full-mode cross-check")
    if with_trail:
        report["trail"] = [m.entries for m in matrix_trail(matrix, word)]
    return trivial, report
