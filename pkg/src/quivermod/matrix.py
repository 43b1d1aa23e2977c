"""Exact exchange-matrix arithmetic.

An exchange matrix is an integer skew-symmetrizable n x n matrix together
with positive vertex weights d_i and a frozen subset.  Skew-symmetrizability
is checked over the integers as  e[i][j] * d[i] == -e[j][i] * d[j].

Values are immutable; every operation returns a new matrix.  Entries are
kept inside the signed 64-bit range and mutation fails loudly on overflow
instead of silently growing (finite-mutation-type inputs stay tiny, but the
engine must not wander off on infinite-type input).
"""

from __future__ import annotations

import json
from math import gcd

from .errors import (
    EntryOverflowError,
    FrozenVertexError,
    InvalidMatrixError,
    InvalidPermutationError,
)
from .perms import Permutation

ENTRY_LIMIT = 2**63 - 1


class ExchangeMatrix:
    """Immutable skew-symmetrizable integer matrix with weights and frozen set."""

    __slots__ = ("n", "entries", "weights", "frozen", "_hash")

    def __init__(self, entries, weights=None, frozen=()):
        entries = tuple(tuple(row) for row in entries)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise InvalidMatrixError("matrix must be square")
        if weights is None:
            weights = (1,) * n
        weights = tuple(weights)
        if len(weights) != n or any(not isinstance(w, int) or w <= 0 for w in weights):
            raise InvalidMatrixError("weights must be n positive integers")
        frozen = frozenset(frozen)
        if any(not isinstance(v, int) or not 0 <= v < n for v in frozen):
            raise InvalidMatrixError("frozen set must be vertex indices")
        for i in range(n):
            if entries[i][i] != 0:
                raise InvalidMatrixError(f"nonzero diagonal entry at ({i},{i})")
            for j in range(n):
                if not isinstance(entries[i][j], int):
                    # also rejects the half-integer frozen-frozen entries
                    # the definition would allow; see the file format notes
                    raise InvalidMatrixError(
                        f"entry ({i},{j}) is not an integer: {entries[i][j]!r}")
                if entries[i][j] * weights[i] != -entries[j][i] * weights[j]:
                    raise InvalidMatrixError(
                        f"not skew-symmetrizable at ({i},{j}): "
                        f"{entries[i][j]}*{weights[i]} != -{entries[j][i]}*{weights[j]}")
        self.n = n
        self.entries = entries
        self.weights = weights
        self.frozen = frozen
        self._hash = hash((entries, weights, frozen))

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, ExchangeMatrix)
            and self.entries == other.entries
            and self.weights == other.weights
            and self.frozen == other.frozen
        )

    def __hash__(self):
        return self._hash

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        return (f"ExchangeMatrix({list(map(list, self.entries))!r}, "
                f"weights={list(self.weights)!r}, frozen={sorted(self.frozen)!r})")

    @property
    def free(self):
        """Non-frozen vertex indices, ascending."""
        return tuple(i for i in range(self.n) if i not in self.frozen)

    def is_skew_symmetric(self):
        return all(w == 1 for w in self.weights)

    # -- mutation and permutation ------------------------------------------

    def mutate(self, k):
        """Matrix mutation directed to the vertex k."""
        if not 0 <= k < self.n:
            raise IndexError(f"mutation index {k} out of range for n={self.n}")
        if k in self.frozen:
            raise FrozenVertexError(f"vertex {k} is frozen")
        e = self.entries
        new = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                if i == k or j == k:
                    val = -e[i][j]
                else:
                    a, b = e[i][k], e[k][j]
                    val = e[i][j] + (abs(a) * b + a * abs(b)) // 2
                if abs(val) > ENTRY_LIMIT:
                    raise EntryOverflowError(
                        f"entry ({i},{j}) overflowed during mutation at {k}")
                row.append(val)
            new.append(row)
        return ExchangeMatrix(new, self.weights, self.frozen)

    def mutate_path(self, path):
        m = self
        for k in path:
            m = m.mutate(k)
        return m

    def check_permutation(self, sigma: Permutation):
        if sigma.n != self.n:
            raise InvalidPermutationError("permutation size mismatch")
        for i in range(self.n):
            if self.weights[sigma(i)] != self.weights[i]:
                raise InvalidPermutationError(
                    f"permutation does not preserve weights at {i}")
        if {sigma(i) for i in self.frozen} != self.frozen:
            raise InvalidPermutationError(
                "permutation does not preserve the frozen set")

    def permute(self, sigma: Permutation):
        """Relabel vertices:  result[i][j] = self[sigma^-1(i)][sigma^-1(j)]."""
        self.check_permutation(sigma)
        inv = sigma.inverse()
        new = [[self.entries[inv(i)][inv(j)] for j in range(self.n)]
               for i in range(self.n)]
        return ExchangeMatrix(new, self.weights, self.frozen)

    def is_automorphism(self, sigma: Permutation):
        try:
            return self.permute(sigma) == self
        except InvalidPermutationError:
            return False

    # -- freezing -----------------------------------------------------------

    def freeze(self, extra):
        """Mark additional vertices as frozen (the frozen set only grows)."""
        extra = frozenset(extra)
        if any(not 0 <= v < self.n for v in extra):
            raise InvalidMatrixError("freeze index out of range")
        return ExchangeMatrix(self.entries, self.weights, self.frozen | extra)

    def unfreeze_part(self):
        """Principal submatrix on the non-frozen vertices, reindexed."""
        keep = self.free
        entries = [[self.entries[i][j] for j in keep] for i in keep]
        weights = [self.weights[i] for i in keep]
        return ExchangeMatrix(entries, weights, ())

    # -- quiver view ---------------------------------------------------------

    def arrow_count(self, i, j):
        """Number of arrows drawn from i to j:  |d_j^-1 e_ij| * gcd(d_i, d_j)."""
        e = self.entries[i][j]
        if e <= 0:
            return 0
        num = e * gcd(self.weights[i], self.weights[j])
        if num % self.weights[j] != 0:
            raise InvalidMatrixError(
                f"non-integral arrow count between {i} and {j}")
        return num // self.weights[j]

    # -- serialization -------------------------------------------------------

    def to_dict(self):
        return {
            "n": self.n,
            "frozen": sorted(self.frozen),
            "weights": list(self.weights),
            "matrix": [list(row) for row in self.entries],
        }

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise InvalidMatrixError("quiver document must be a JSON object")
        for key in ("n", "matrix"):
            if key not in data:
                raise InvalidMatrixError(f"missing field {key!r}")
        n = data["n"]
        matrix = data["matrix"]
        if not isinstance(n, int) or len(matrix) != n:
            raise InvalidMatrixError("field 'n' does not match matrix size")
        weights = data.get("weights") or [1] * n
        frozen = data.get("frozen") or []
        return cls(matrix, weights, frozen)

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidMatrixError(
                f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
        return cls.from_dict(data)
