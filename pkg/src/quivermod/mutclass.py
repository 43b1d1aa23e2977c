"""Finite mutation classes and the saturated modular graph.

Classes are enumerated breadth-first over canonical forms.  Oriented
mutation edges are classified up to simultaneous seed isomorphism: two
edges with the same origin class lie in one orbit exactly when an
automorphism of the representative carries one mutation direction to the
other.  Standard polygon cycles (square, pentagon, hexagon, octagon) are
collected as orbits of basepoint expressions, deduplicated over rotation,
direction reversal and automorphism translation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .canonical import automorphisms, canonical_form
from .errors import CapExceededError, InvertedEdgeError
from .matrix import ExchangeMatrix
from .perms import Permutation
from .words import MutationWord

#: (entry, opposite entry) -> (p, h) for the standard (h+2)-gon.  For the
#: weighted hexagon and octagon the traversal alternates between vertices
#: presenting (p, -1) and vertices presenting (1, -p), so both patterns
#: are valid basepoint expressions of the same cycle.
STANDARD_PAIR_TYPES = {
    (0, 0): (0, 2),
    (1, -1): (1, 3), (-1, 1): (1, 3),
    (2, -1): (2, 4), (-1, 2): (2, 4), (1, -2): (2, 4), (-2, 1): (2, 4),
    (3, -1): (3, 6), (-1, 3): (3, 6), (1, -3): (3, 6), (-3, 1): (3, 6),
}

#: patterns matching the defining condition e_kl = -p e_lk = p
PRIMARY_PAIR_PATTERNS = {(0, 0), (1, -1), (2, -1), (3, -1)}


def standard_pair_type(m: ExchangeMatrix, a, b):
    """(p, h) when (a, b) opens a standard cycle at m, else None."""
    return STANDARD_PAIR_TYPES.get((m.entries[a][b], m.entries[b][a]))


@dataclass(frozen=True)
class EdgeOrbit:
    """Unoriented mutation-edge orbit with its two oriented sides.

    Each side is (class id, least mutation index in its automorphism
    orbit).  For a loop both sides sit at the same class.
    """

    sides: tuple
    loop: bool


@dataclass(frozen=True)
class StandardCycle:
    """Orbit of a standard (h+2)-gon, keyed by its least basepoint expression."""

    base: int
    pair: tuple
    p: int
    h: int

    @property
    def length(self):
        return self.h + 2

    @property
    def shape(self):
        return {2: "square", 3: "pentagon", 4: "hexagon", 6: "octagon"}[self.h]


class MutationClass:
    """Mutation class of an exchange matrix, up to seed isomorphism."""

    def __init__(self, input_matrix, reps, index, adjacency, parents, base_witness):
        self.input_matrix = input_matrix
        self.reps = reps
        self.index = index
        self.adjacency = adjacency
        self.parents = parents
        self.base_witness = base_witness
        self._auts = {}
        self._edge_orbits = None
        self._face_orbits = None

    def __len__(self):
        return len(self.reps)

    # -- per-class data ----------------------------------------------------------

    def aut(self, cid):
        if cid not in self._auts:
            self._auts[cid] = automorphisms(self.reps[cid])
        return self._auts[cid]

    def slot_orbits(self, cid):
        """Orbits of Aut(rep) on the non-frozen mutation directions."""
        rep = self.reps[cid]
        auts = self.aut(cid)
        seen = set()
        orbits = []
        for k in rep.free:
            if k in seen:
                continue
            orbit = sorted({g(k) for g in auts})
            seen.update(orbit)
            orbits.append(tuple(orbit))
        return orbits

    def orbit_rep(self, cid, k):
        return min(g(k) for g in self.aut(cid))

    def oriented_orbits(self):
        """All oriented edge orbits as (class id, least slot) pairs."""
        return [(cid, orbit[0])
                for cid in range(len(self.reps))
                for orbit in self.slot_orbits(cid)]

    def reverse_oriented(self, cid, k):
        """Orbit of the reversed edge: cross via mu_k and map the slot back."""
        tcid, witness = self.adjacency[(cid, k)]
        return (tcid, self.orbit_rep(tcid, witness(k)))

    def simultaneous_automorphisms(self, cid, k):
        """Automorphisms fixing the direction k; they fix both endpoints."""
        rep = self.reps[cid]
        mutated = rep.mutate(k)
        out = []
        for g in self.aut(cid):
            if g(k) != k:
                continue
            # naturality makes these automorphisms of the far endpoint too
            assert mutated.permute(g) == mutated
            out.append(g)
        return out

    # -- edge orbits ----------------------------------------------------------------

    def edge_orbits(self):
        if self._edge_orbits is not None:
            return self._edge_orbits
        paired = {}
        for cid, k in self.oriented_orbits():
            side = (cid, k)
            if side in paired:
                continue
            other = self.reverse_oriented(cid, k)
            if other == side:
                raise InvertedEdgeError(
                    f"oriented edge {side} is equivalent to its own reverse")
            paired[side] = other
            paired[other] = side
        orbits = []
        for side in sorted(paired):
            other = paired[side]
            if side <= other:
                orbits.append(EdgeOrbit(sides=(side, other),
                                        loop=side[0] == other[0]))
        self._edge_orbits = orbits
        return orbits

    # -- face orbits ------------------------------------------------------------------

    def cycle_expressions(self, cid):
        """Valid ordered basepoint pairs (a, b) at a class representative."""
        rep = self.reps[cid]
        out = []
        for a in rep.free:
            for b in rep.free:
                if a != b and standard_pair_type(rep, a, b) is not None:
                    out.append((a, b))
        return out

    def rotate_expression(self, cid, a, b):
        """One step around the cycle: mutate at a and carry the pair over."""
        tcid, witness = self.adjacency[(cid, a)]
        return (tcid, witness(b), witness(a))

    def traverse_cycle(self, cid, a, b):
        """Walk the full standard cycle; returns the list of visited
        expressions and asserts the matrix-level loop closes up."""
        rep = self.reps[cid]
        p, h = standard_pair_type(rep, a, b)
        visits = [(cid, a, b)]
        matrix = rep
        x, y = a, b
        for _ in range(h + 2):
            matrix = matrix.mutate(x)
            x, y = y, x
        if (h + 2) % 2:
            matrix = matrix.permute(Permutation.transposition(matrix.n, a, b))
        assert matrix == rep, "standard cycle failed to close"
        node = (cid, a, b)
        for _ in range(h + 1):
            node = self.rotate_expression(*node)
            visits.append(node)
        closing = self.rotate_expression(*node)
        # holonomy may twist the basepoint expression by an automorphism
        assert closing[0] == cid
        assert any((g(a), g(b)) == closing[1:] for g in self.aut(cid))
        return visits

    def face_orbits(self):
        if self._face_orbits is not None:
            return self._face_orbits
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        nodes = [(cid, a, b)
                 for cid in range(len(self.reps))
                 for (a, b) in self.cycle_expressions(cid)]
        for node in nodes:
            parent[node] = node
        for cid, a, b in nodes:
            for g in self.aut(cid):
                union((cid, a, b), (cid, g(a), g(b)))
            union((cid, a, b), (cid, b, a))
            union((cid, a, b), self.rotate_expression(cid, a, b))
        components = {}
        for node in nodes:
            components.setdefault(find(node), []).append(node)
        orbits = []
        for root in sorted(components):
            members = components[root]
            primary = [
                (c, x, y) for c, x, y in members
                if (self.reps[c].entries[x][y], self.reps[c].entries[y][x])
                in PRIMARY_PAIR_PATTERNS
            ]
            cid, a, b = min(primary)
            p, h = standard_pair_type(self.reps[cid], a, b)
            types = {standard_pair_type(self.reps[c], x, y) for c, x, y in members}
            assert types == {(p, h)}, "mixed polygon shapes in one face orbit"
            self.traverse_cycle(cid, a, b)
            orbits.append(StandardCycle(base=cid, pair=(a, b), p=p, h=h))
        self._face_orbits = orbits
        return orbits

    def face_counts(self):
        counts = {}
        for face in self.face_orbits():
            counts[face.shape] = counts.get(face.shape, 0) + 1
        return counts

    # -- words and paths -----------------------------------------------------------------

    def access_word(self, cid):
        """Seed path from the class-0 representative to the cid representative."""
        steps = []
        while cid != 0:
            pcid, k, witness = self.parents[cid]
            steps.append((k, witness))
            cid = pcid
        word = MutationWord.identity(self.reps[0].n)
        for k, witness in reversed(steps):
            word = word + MutationWord.mutation(word.n, k)
            word = word + MutationWord.permutation(witness)
        return word

    def input_access_word(self, cid):
        """Seed path from the input matrix to the cid representative."""
        return MutationWord.permutation(self.base_witness) + self.access_word(cid)

    # -- reporting ----------------------------------------------------------------------

    def counting_identity(self):
        """#oriented orbits == sum over classes of slot-orbit counts."""
        return sum(len(self.slot_orbits(c)) for c in range(len(self.reps)))

    def to_document(self):
        return {
            "class_size": len(self.reps),
            "representatives": [rep.to_dict() for rep in self.reps],
            "adjacency": [
                {"source": cid, "k": k, "target": tcid, "witness": str(witness)}
                for (cid, k), (tcid, witness) in sorted(self.adjacency.items())
            ],
            "edge_orbits": [
                {"sides": [list(side) for side in orbit.sides], "loop": orbit.loop}
                for orbit in self.edge_orbits()
            ],
            "face_orbits": [
                {"base": f.base, "pair": list(f.pair), "p": f.p, "h": f.h,
                 "shape": f.shape}
                for f in self.face_orbits()
            ],
        }

    def to_dot(self):
        lines = ["graph modular_graph {"]
        for cid in range(len(self.reps)):
            lines.append(f'  Q{cid} [label="Q{cid}"];')
        for orbit in self.edge_orbits():
            (c1, k1), (c2, k2) = orbit.sides
            lines.append(f'  Q{c1} -- Q{c2} [label="m{k1}|m{k2}"];')
        lines.append("}")
        return "\n".join(lines)


def enumerate_class(start: ExchangeMatrix, cap=50000) -> MutationClass:
    """Breadth-first enumeration of the mutation class up to isomorphism.

    Raises CapExceededError when more than `cap` classes appear, which is
    the practical signal for infinite mutation type.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    base = canonical_form(start)
    reps = [base.matrix]
    index = {base.matrix: 0}
    adjacency = {}
    parents = {0: None}
    queue = deque([0])
    while queue:
        cid = queue.popleft()
        rep = reps[cid]
        for k in rep.free:
            if (cid, k) in adjacency:
                continue
            neighbour = canonical_form(rep.mutate(k))
            tcid = index.get(neighbour.matrix)
            if tcid is None:
                tcid = len(reps)
                if tcid >= cap:
                    raise CapExceededError(
                        f"mutation class exceeds cap {cap}", cap=cap)
                reps.append(neighbour.matrix)
                index[neighbour.matrix] = tcid
                parents[tcid] = (cid, k, neighbour.witness)
                queue.append(tcid)
            adjacency[(cid, k)] = (tcid, neighbour.witness)
    return MutationClass(start, reps, index, adjacency, parents, base.witness)
