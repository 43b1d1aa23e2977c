"""Relation verification, cluster Dehn twist search, and elimination.

verify_relation checks a paper-style identity lhs = rhs by testing
lhs * rhs^-1 as a mutation loop with either triviality oracle.  The
Dehn-twist finder scans a complete mutation class for double-arrow pairs
whose swap-and-mutate word is a loop; each hit comes with an access path
from the input quiver.  The elimination homomorphism restricts words to
a subset of vertices (the non-frozen part in the application we care
about), re-indexing mutation tokens.
"""

from __future__ import annotations

import time

from .errors import EliminationError, QuiverError
from .matrix import ExchangeMatrix
from .mutclass import MutationClass
from .perms import Permutation
from .seed import is_trivial_loop, matrix_trail
from .words import MutationWord


def verify_relation(base: ExchangeMatrix, lhs: MutationWord, rhs: MutationWord,
                    mode="cmatrix", with_trail=False):
    """Verdict report for the identity lhs = rhs at the base quiver."""
    word = (lhs + rhs.inverse()).normalize()
    start = time.perf_counter()
    trivial, report = is_trivial_loop(base, word, mode=mode)
    report.update({
        "lhs_length": len(lhs),
        "rhs_length": len(rhs),
        "normalized_length": len(word),
        "elapsed": time.perf_counter() - start,
    })
    if with_trail:
        report["trail"] = [m.entries for m in matrix_trail(base, word)]
    return trivial, report


def twist_word(n, i, j) -> MutationWord:
    """The local cluster-Dehn-twist word (i j) mu_j."""
    return (MutationWord.mutation(n, j)
            + MutationWord.permutation(Permutation.transposition(n, i, j)))


def standard_relation_word(m: ExchangeMatrix, i, j) -> MutationWord:
    """The standard sequence r_ij = ((i j) mu_i)^(h+2) at m.

    For the even-length cases (square, hexagon, octagon) the transpositions
    cancel by naturality and the word is the pure alternation
    (mu_j mu_i)^((h+2)/2); this also keeps the word legal when i and j
    carry different weights, as in the weighted hexagon/octagon where the
    bare transposition would not be a seed permutation.  The pentagon has
    equal weights and keeps its closing transposition.
    """
    from .mutclass import standard_pair_type

    ph = standard_pair_type(m, i, j)
    if ph is None:
        raise QuiverError(
            f"({i},{j}) does not open a standard cycle: entries "
            f"{m.entries[i][j]},{m.entries[j][i]}")
    _, h = ph
    word = MutationWord.identity(m.n)
    x, y = i, j
    for _ in range(h + 2):
        word = word + MutationWord.mutation(m.n, x)
        x, y = y, x
    if (h + 2) % 2:
        word = word + MutationWord.permutation(
            Permutation.transposition(m.n, i, j))
    return word


def find_dehn_twist_candidates(mclass: MutationClass):
    """All (class id, i, j) with a double arrow i => j of equal weights.

    Each hit certifies that (i j) mu_j is a mutation loop at the class
    representative and returns the access word from the input quiver, so
    path * (i j) mu_j * path^-1 is a candidate cluster Dehn twist at the
    input seed.
    """
    out = []
    for cid, rep in enumerate(mclass.reps):
        for i in rep.free:
            for j in rep.free:
                if i == j or rep.weights[i] != rep.weights[j]:
                    continue
                if rep.entries[i][j] == 2 and rep.entries[j][i] == -2:
                    sw = Permutation.transposition(rep.n, i, j)
                    if rep.mutate(j).permute(sw) != rep:
                        continue
                    path = mclass.input_access_word(cid)
                    word = path + twist_word(rep.n, i, j) + path.inverse()
                    hit = {
                        "class": cid,
                        "pair": (i, j),
                        "path": path,
                        "word": word,
                    }
                    if cid == 0:
                        # the input quiver's own class: give the pair in
                        # the input labeling too
                        inv = mclass.base_witness.inverse()
                        hit["input_pair"] = (inv(i), inv(j))
                    out.append(hit)
    return out


def candidate_power_is_nontrivial(mclass: MutationClass, candidate, power=2):
    """The square (by default) of a twist word must move the C-matrix."""
    rep = mclass.reps[candidate["class"]]
    i, j = candidate["pair"]
    word = MutationWord.identity(rep.n)
    for _ in range(power):
        word = word + twist_word(rep.n, i, j)
    trivial, _ = is_trivial_loop(rep, word, mode="cmatrix")
    return not trivial


def eliminate(word: MutationWord, keep) -> MutationWord:
    """Elimination homomorphism: restrict a word to the kept vertices.

    The word must mutate only inside `keep`, and its permutation part
    must preserve `keep` setwise; the result is re-indexed to
    0..len(keep)-1 in the sorted order of `keep`.
    """
    keep = sorted(set(keep))
    pos = {v: i for i, v in enumerate(keep)}
    norm = word.normalize()
    tokens = []
    for kind, value in norm.tokens:
        if kind == "m":
            if value not in pos:
                raise EliminationError(
                    f"word mutates vertex {value} outside keep={keep}")
            tokens.append(("m", pos[value]))
        else:
            if {value(v) for v in keep} != set(keep):
                raise EliminationError(
                    f"permutation {value} does not preserve keep={keep}")
            images = [pos[value(v)] for v in keep]
            perm = Permutation(images)
            if not perm.is_identity():
                tokens.append(("p", perm))
    return MutationWord(len(keep), tokens)
