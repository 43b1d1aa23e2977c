"""Permutations on {0, ..., n-1} as image tuples, with cycle notation I/O.

Composition is right-to-left: (p * q)(i) = p(q(i)), so in a product the
right factor acts first.  This matches how mutation words are read.
"""

from __future__ import annotations

import re

from .errors import WordSyntaxError

_CYCLE_RE = re.compile(r"\(\s*(\d+(?:[\s,]+\d+)*)?\s*\)")


class Permutation:
    """A permutation of {0, ..., n-1} stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def transposition(cls, n, i, j):
        images = list(range(n))
        images[i], images[j] = j, i
        return cls(images)

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from a list of cycles, e.g. [[0, 1, 2], [3, 4]]."""
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        # composing overlapping cycles this way would silently drop moves
        flat = [v for cycle in cycles for v in cycle]
        if len(flat) != len(set(flat)):
            raise ValueError("cycles must be disjoint")
        return cls(images)

    @classmethod
    def parse(cls, text, n):
        """Parse disjoint cycle notation like ``(0 1 2)(3 4)``."""
        text = text.strip()
        if text in ("", "()", "id"):
            return cls.identity(n)
        cycles = []
        pos = 0
        for match in _CYCLE_RE.finditer(text):
            if text[pos:match.start()].strip():
                raise WordSyntaxError(
                    f"unexpected text in permutation: {text!r}", position=pos)
            body = match.group(1)
            if body:
                cycles.append([int(tok) for tok in re.split(r"[\s,]+", body)])
            pos = match.end()
        if text[pos:].strip():
            raise WordSyntaxError(
                f"unexpected text in permutation: {text!r}", position=pos)
        for cycle in cycles:
            for v in cycle:
                if v >= n:
                    raise WordSyntaxError(
                        f"cycle entry {v} out of range for n={n}")
        try:
            return cls.from_cycles(n, cycles)
        except ValueError as exc:
            raise WordSyntaxError(str(exc)) from exc

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(self.images[other.images[i]] for i in range(self.n))

    def inverse(self):
        images = [0] * self.n
        for i, j in enumerate(self.images):
            images[j] = i
        return Permutation(images)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed=False):
        seen = set()
        out = []
        for i in range(self.n):
            if i in seen:
                continue
            cycle = [i]
            j = self.images[i]
            seen.add(i)
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            if len(cycle) > 1 or include_fixed:
                out.append(cycle)
        return out

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self):
        return f"Permutation({self.images!r})"

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)


def all_permutations(n):
    """Yield all permutations of range(n) as Permutation objects."""
    import itertools

    for images in itertools.permutations(range(n)):
        yield Permutation(images)
