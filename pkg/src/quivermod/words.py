"""Mutation words: sequences of mutations and seed permutations.

Convention (used everywhere in this package): the *text form* of a word is
read right to left, matching composition notation, so in

    "(0 1 2)(3 4 5 6) m2 m1 m0"

the mutation m0 is applied first and the permutation last.  Internally a
MutationWord stores its tokens in application order (first-applied first).
Always build words from paper-style text via ``MutationWord.parse`` or
with ``compose`` (which takes factors in composition order) instead of
hand-reversing token lists.
"""

from __future__ import annotations

import re

from .errors import WordSyntaxError
from .perms import Permutation

_TOKEN_RE = re.compile(r"m(\d+)|((?:\(\s*[\d\s,]*\))+)|(\S)")


class MutationWord:
    """Immutable word in mutations `m k` and permutations."""

    __slots__ = ("n", "tokens")

    def __init__(self, n, tokens=()):
        self.n = n
        toks = []
        for kind, value in tokens:
            if kind == "m":
                if not 0 <= value < n:
                    raise WordSyntaxError(f"mutation index {value} out of range")
                toks.append(("m", value))
            elif kind == "p":
                if value.n != n:
                    raise WordSyntaxError("permutation size mismatch")
                toks.append(("p", value))
            else:
                raise WordSyntaxError(f"unknown token kind {kind!r}")
        self.tokens = tuple(toks)

    # -- construction ----------------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls(n)

    @classmethod
    def mutation(cls, n, k):
        return cls(n, [("m", k)])

    @classmethod
    def permutation(cls, perm):
        return cls(perm.n, [("p", perm)])

    @classmethod
    def parse(cls, text, n, base=0):
        """Parse right-to-left word text; `base` shifts all vertex labels down.

        Words transcribed from one-indexed sources pass base=1 and keep
        their printed labels verbatim.
        """
        rtl = []
        for match in _TOKEN_RE.finditer(text):
            mut, perm, stray = match.groups()
            if stray is not None:
                raise WordSyntaxError(
                    f"cannot parse word at position {match.start()}: {text!r}",
                    position=match.start())
            if mut is not None:
                k = int(mut) - base
                if not 0 <= k < n:
                    raise WordSyntaxError(
                        f"mutation index {mut} out of range", position=match.start())
                rtl.append(("m", k))
            else:
                shifted = re.sub(r"\d+", lambda mo: str(int(mo.group()) - base), perm)
                rtl.append(("p", Permutation.parse(shifted, n)))
        return cls(n, reversed(rtl))

    # -- algebra -----------------------------------------------------------------

    def __add__(self, other):
        """Concatenation: self first, then other (application order)."""
        if self.n != other.n:
            raise WordSyntaxError("word size mismatch")
        return MutationWord(self.n, self.tokens + other.tokens)

    def inverse(self):
        toks = []
        for kind, value in reversed(self.tokens):
            if kind == "m":
                toks.append(("m", value))
            else:
                toks.append(("p", value.inverse()))
        return MutationWord(self.n, toks)

    def __len__(self):
        return len(self.tokens)

    def __eq__(self, other):
        return (isinstance(other, MutationWord)
                and self.n == other.n and self.tokens == other.tokens)

    def __hash__(self):
        return hash((self.n, self.tokens))

    def net_permutation(self):
        """Permutation part of the normal form."""
        pi = Permutation.identity(self.n)
        for kind, value in self.tokens:
            if kind == "p":
                pi = value * pi
        return pi

    def mutation_path(self):
        """Mutation indices of the normal form, in application order."""
        pi = Permutation.identity(self.n)
        path = []
        for kind, value in self.tokens:
            if kind == "m":
                path.append(pi.inverse()(value))
            else:
                pi = value * pi
        return path

    def normalize(self):
        """Normal form: all mutations first (initial frame), one permutation last.

        Uses naturality (s mu_k s^-1 = mu_{s(k)}) to push permutations out
        and involutivity (mu_k mu_k = 1) to cancel adjacent repeats.  The
        normalized word acts exactly as the original on every seed.
        """
        path = self.mutation_path()
        stack = []
        for k in path:
            if stack and stack[-1] == k:
                stack.pop()
            else:
                stack.append(k)
        toks = [("m", k) for k in stack]
        pi = self.net_permutation()
        if not pi.is_identity():
            toks.append(("p", pi))
        return MutationWord(self.n, toks)

    # -- display -------------------------------------------------------------------

    def format(self, base=0):
        """Right-to-left text form (inverse of parse)."""
        parts = []
        for kind, value in reversed(self.tokens):
            if kind == "m":
                parts.append(f"m{value + base}")
            else:
                if base:
                    shifted = re.sub(r"\d+", lambda mo: str(int(mo.group()) + base),
                                     str(value))
                    parts.append(shifted)
                else:
                    parts.append(str(value))
        return " ".join(parts) if parts else ""

    def __repr__(self):
        return f"<MutationWord {self.format()!r}>"


def compose(*words):
    """Compose words given in composition order (rightmost acts first)."""
    if not words:
        raise ValueError("compose needs at least one word")
    out = words[-1]
    for w in reversed(words[:-1]):
        out = out + w
    return out


def power(word, k):
    if k == 0:
        return MutationWord.identity(word.n)
    base = word if k > 0 else word.inverse()
    out = base
    for _ in range(abs(k) - 1):
        out = out + base
    return out


def conjugate(a, b):
    """a b a^-1 (apply a^-1 first, then b, then a)."""
    return a.inverse() + b + a


def commutator(a, b):
    """[a, b] = a b a^-1 b^-1 in composition notation."""
    return b.inverse() + a.inverse() + b + a
