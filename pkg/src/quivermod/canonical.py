"""Canonical labeling and automorphism groups of exchange matrices.

Two matrices are isomorphic when some frozen- and weight-preserving
relabeling carries one to the other.  The canonical form is the
lexicographically least serialization over all such relabelings, found by
a backtracking search pruned with color refinement (a Weisfeiler-Lehman
style vertex invariant).  The serialization interleaves the color rank of
each placed vertex with the new matrix entries it determines, so the
color invariant participates in the key and prunes soundly.

All sizes in this project are tiny (n <= 10), so the searches below favor
clarity over asymptotics; the brute-force variant over all compatible
permutations is kept as an independent oracle for tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .matrix import ExchangeMatrix
from .perms import Permutation


def color_refinement(m: ExchangeMatrix):
    """Stable vertex coloring invariant under allowed relabelings.

    Returns a list of color ranks (ints), where equal rank means the
    refinement could not distinguish the vertices.
    """
    n = m.n
    colors = [(i in m.frozen, m.weights[i]) for i in range(n)]
    for _ in range(n):
        sigs = []
        for i in range(n):
            neigh = sorted(
                (colors[j], m.entries[i][j], m.entries[j][i])
                for j in range(n) if j != i
            )
            sigs.append((colors[i], tuple(neigh)))
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(sigs)))}
        new = [ranking[sig] for sig in sigs]
        if new == [ranking[sigs[i]] for i in range(n)] and len(set(new)) == len(set(colors)):
            colors = new
            break
        colors = new
    return colors


def _compatible(m, v, p):
    return (m.weights[v] == m.weights[p]) and ((v in m.frozen) == (p in m.frozen))


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical matrix plus a witness with  input.permute(witness) == matrix."""

    matrix: ExchangeMatrix
    witness: Permutation

    @property
    def key(self):
        return self.matrix.entries


def _search_min(m: ExchangeMatrix):
    """Backtracking minimization of the interleaved serialization."""
    n = m.n
    colors = color_refinement(m)
    e = m.entries
    best_key = None
    best_order = None
    # order[p] = original vertex placed at canonical position p
    order = [0] * n
    used = [False] * n

    def extend(p, key):
        nonlocal best_key, best_order
        if p == n:
            if best_key is None or key < best_key:
                best_key = list(key)
                best_order = order[:]
            return
        cands = []
        for v in range(n):
            if used[v] or not _compatible(m, v, p):
                continue
            seg = [colors[v]]
            for q in range(p):
                w = order[q]
                seg.append(e[w][v])
                seg.append(e[v][w])
            cands.append((seg, v))
        cands.sort()
        for seg, v in cands:
            cand = key + seg
            if best_key is not None:
                prefix = best_key[:len(cand)]
                if cand > prefix:
                    continue
            order[p] = v
            used[v] = True
            extend(p + 1, cand)
            used[v] = False
        return

    extend(0, [])
    return best_order


def canonical_form(m: ExchangeMatrix) -> CanonicalForm:
    """Canonical representative of m under frozen/weight-preserving relabeling."""
    order = _search_min(m)
    # order[p] = v means the witness sends v to position p
    images = [0] * m.n
    for p, v in enumerate(order):
        images[v] = p
    witness = Permutation(images)
    return CanonicalForm(m.permute(witness), witness)


def canonical_form_bruteforce(m: ExchangeMatrix) -> CanonicalForm:
    """Oracle variant: full minimization over all compatible permutations.

    Only usable for small n; kept for cross-checking the pruned search.
    """
    best = None
    for images in itertools.permutations(range(m.n)):
        sigma = Permutation(images)
        if any(not _compatible(m, v, sigma(v)) for v in range(m.n)):
            continue
        cand = m.permute(sigma)
        if best is None or cand.entries < best[0].entries:
            best = (cand, sigma)
    return CanonicalForm(*best)


def automorphisms(m: ExchangeMatrix):
    """All frozen- and weight-preserving sigma with m.permute(sigma) == m.

    The result always contains the identity and is closed under
    composition; it is returned sorted by image tuple.
    """
    n = m.n
    colors = color_refinement(m)
    e = m.entries
    found = []
    images = [None] * n
    used = [False] * n

    def place(i):
        if i == n:
            found.append(Permutation(list(images)))
            return
        for v in range(n):
            if used[v] or colors[v] != colors[i] or not _compatible(m, v, i):
                continue
            ok = True
            for j in range(i):
                w = images[j]
                if e[i][j] != e[v][w] or e[j][i] != e[w][v]:
                    ok = False
                    break
            if ok:
                images[i] = v
                used[v] = True
                place(i + 1)
                used[v] = False
                images[i] = None

    place(0)
    found.sort(key=lambda s: s.images)
    return found


def iso_witness(m1: ExchangeMatrix, m2: ExchangeMatrix):
    """A permutation sigma with m1.permute(sigma) == m2, or None."""
    c1 = canonical_form(m1)
    c2 = canonical_form(m2)
    if c1.matrix != c2.matrix:
        return None
    return c2.witness.inverse() * c1.witness
