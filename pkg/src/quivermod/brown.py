"""Finite presentations from the action on the modular graph.

Given a complete mutation class, this module fixes a data of
representatives (spanning tree, orientation, oriented edge
representatives, face basepoints), constructs one group element per
non-tree edge orbit and per vertex automorphism, and emits the tree,
isotropy and face relations.  Every relator is certified as a trivial
mutation loop before the presentation is returned; a failed certificate
means the pipeline itself is broken, so it raises immediately.

Conventions: a relator is a tuple of (symbol, exponent) letters; the
product is read left to right and expands to the concatenation of the
letters' expansion words in that same order (the leftmost letter's word
is applied to seeds first).  This is the natural bookkeeping for walking
cells of the modular graph: translating a walk extends its word on the
right.  The expansion of each symbol is a mutation word based at the
class-0 representative.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotALoopError
from .mutclass import MutationClass, StandardCycle, standard_pair_type
from .perms import Permutation
from .seed import is_trivial_loop
from .words import MutationWord


@dataclass(frozen=True)
class EPlusEdge:
    """Oriented edge-orbit representative with origin on the tree."""

    index: int
    origin: int
    slot: int
    target: int
    witness: Permutation
    is_tree: bool

    @property
    def symbol(self):
        return None if self.is_tree else f"g{self.index}"


@dataclass
class DataOfRepresentatives:
    mclass: MutationClass
    eplus: list
    faces: list

    @property
    def tree_edges(self):
        return [e for e in self.eplus if e.is_tree]

    @property
    def nontree_edges(self):
        return [e for e in self.eplus if not e.is_tree]


def choose_representatives(mclass: MutationClass) -> DataOfRepresentatives:
    """Deterministic data of representatives for the modular graph."""
    tree_orbits = {}
    for cid in range(1, len(mclass.reps)):
        pcid, k, witness = mclass.parents[cid]
        side = (pcid, mclass.orbit_rep(pcid, k))
        tree_orbits[side] = (pcid, k, witness, cid)
    eplus = []
    for orbit in mclass.edge_orbits():
        index = len(eplus)
        hit = [side for side in orbit.sides if side in tree_orbits]
        if hit:
            pcid, k, witness, cid = tree_orbits[hit[0]]
            eplus.append(EPlusEdge(index, pcid, k, cid, witness, True))
        else:
            origin, slot = min(orbit.sides)
            target, witness = mclass.adjacency[(origin, slot)]
            eplus.append(EPlusEdge(index, origin, slot, target, witness, False))
    return DataOfRepresentatives(mclass, eplus, mclass.face_orbits())


@dataclass
class Presentation:
    """Finite presentation with expansions of all generators as words."""

    generators: list
    relators: list
    expansions: dict
    base_matrix: object
    isotropy_symbols: dict
    meta: dict

    def exponent_matrix(self):
        """Relator exponent sums, one row per relator."""
        pos = {g: i for i, g in enumerate(self.generators)}
        rows = []
        for rel in self.relators:
            row = [0] * len(self.generators)
            for sym, exp in rel:
                row[pos[sym]] += exp
            rows.append(row)
        return rows

    def relator_word(self, rel) -> MutationWord:
        """Expand an abstract relator to a mutation word (leftmost first)."""
        word = MutationWord.identity(self.base_matrix.n)
        for sym, exp in rel:
            w = self.expansions[sym]
            word = word + (w if exp > 0 else w.inverse())
        return word


class BrownAssembler:
    """Builds the presentation for one mutation class."""

    def __init__(self, mclass: MutationClass):
        self.mclass = mclass
        self.data = choose_representatives(mclass)
        self.base = mclass.reps[0]
        self._access = {cid: mclass.access_word(cid)
                        for cid in range(len(mclass.reps))}
        self._access_net = {cid: w.net_permutation()
                            for cid, w in self._access.items()}
        self._iso_syms = {}
        self._expansions = {}
        self._generators = []
        self._relators = []
        self._build_isotropy_symbols()
        self._edge_by_forward = {}
        self._edge_by_reverse = {}
        for e in self.data.eplus:
            fwd = (e.origin, mclass.orbit_rep(e.origin, e.slot))
            rev = (e.target, mclass.orbit_rep(e.target, e.witness(e.slot)))
            self._edge_by_forward[fwd] = e
            self._edge_by_reverse[rev] = e
            if e.symbol is not None:
                self._generators.append(e.symbol)
                self._expansions[e.symbol] = self._edge_word(e)

    # -- generators ---------------------------------------------------------

    def _build_isotropy_symbols(self):
        for cid in range(len(self.mclass.reps)):
            for g in self.mclass.aut(cid):
                if g.is_identity():
                    continue
                sym = f"a{cid}_" + "_".join(map(str, g.images))
                self._iso_syms[(cid, g.images)] = sym
                self._generators.append(sym)
                w = self._access[cid]
                self._expansions[sym] = w + MutationWord.permutation(g) + w.inverse()

    def iso_letter(self, cid, g: Permutation):
        """Letter for an isotropy element; None for the identity."""
        if g.is_identity():
            return None
        return self._iso_syms[(cid, g.images)]

    def _edge_word(self, e: EPlusEdge) -> MutationWord:
        w = self._access[e.origin] + MutationWord.mutation(self.base.n, e.slot)
        w = w + MutationWord.permutation(e.witness)
        return w + self._access[e.target].inverse()

    # -- relators -------------------------------------------------------------

    def _add_relator(self, letters, context):
        letters = tuple((s, e) for s, e in letters if s is not None)
        if letters:
            self._relators.append((letters, context))

    def _multiplication_tables(self):
        # the product of letters concatenates expansion words, so the
        # letter product [g][h] realizes "apply g's relabel, then h's"
        for cid in range(len(self.mclass.reps)):
            auts = self.mclass.aut(cid)
            for g in auts:
                for h in auts:
                    if g.is_identity() or h.is_identity():
                        continue
                    prod = h * g
                    letters = [(self.iso_letter(cid, g), 1),
                               (self.iso_letter(cid, h), 1)]
                    if not prod.is_identity():
                        letters.append((self.iso_letter(cid, prod), -1))
                    self._add_relator(letters, f"isotropy table v{cid}")

    def _edge_isotropy_relations(self):
        for e in self.data.eplus:
            stab = [g for g in self.mclass.aut(e.origin)
                    if g(e.slot) == e.slot and not g.is_identity()]
            for g in stab:
                moved = e.witness * g * e.witness.inverse()
                letters = []
                if e.symbol is not None:
                    letters.append((e.symbol, -1))
                letters.append((self.iso_letter(e.origin, g), 1))
                if e.symbol is not None:
                    letters.append((e.symbol, 1))
                letters.append((self.iso_letter(e.target, moved), -1))
                self._add_relator(
                    letters, f"edge isotropy e{e.index} ({e.origin}->{e.target})")

    def _classify_step(self, cid, a):
        """Case (a)/(b) data for the oriented edge (cid, a).

        The translating isotropy element for an automorphism h acts on the
        edge slots at the vertex by h^-1, so the step transporter is the
        least automorphism with h(a) = representative slot.  The pair
        carried around the cycle transports by witness o h (forward) or
        witness^-1 o h (backward).
        """
        side = (cid, self.mclass.orbit_rep(cid, a))
        if side in self._edge_by_forward:
            e = self._edge_by_forward[side]
            h = self._transporter(cid, a, e.slot)
            mapping = e.witness * h
            return e, 1, h, mapping, e.target
        e = self._edge_by_reverse[side]
        k_rev = e.witness(e.slot)
        h = self._transporter(cid, a, k_rev)
        mapping = e.witness.inverse() * h
        return e, -1, h, mapping, e.origin

    def _transporter(self, cid, src, dst):
        """Least automorphism of the cid representative sending src to dst."""
        cands = [g for g in self.mclass.aut(cid) if g(src) == dst]
        if not cands:
            raise AssertionError(
                f"no automorphism carries slot {src} to {dst} at class {cid}")
        return min(cands, key=lambda g: g.images)

    def _face_relation(self, face: StandardCycle):
        mclass = self.mclass
        cid, (a, b) = face.base, face.pair
        letters = []
        for _ in range(face.length):
            assert standard_pair_type(mclass.reps[cid], a, b) is not None
            e, direction, h, mapping, nxt = self._classify_step(cid, a)
            letters.append((self.iso_letter(cid, h), 1))
            if e.symbol is not None:
                letters.append((e.symbol, direction))
            a, b = mapping(b), mapping(a)
            cid = nxt
        assert cid == face.base
        # the walked product stabilizes the base vertex, so it equals some
        # isotropy element; the triviality certificate identifies which one
        # (the carried pair orders the candidates, usually uniquely)
        auts = mclass.aut(cid)
        cands = sorted(auts, key=lambda g: ((g(a), g(b)) != face.pair, g.images))
        for hol in cands:
            closed = list(letters)
            if not hol.is_identity():
                closed.append((self.iso_letter(cid, hol), -1))
            word = self._expand_letters(closed).normalize()
            try:
                trivial, _ = is_trivial_loop(self.base, word, mode="cmatrix")
            except NotALoopError:
                continue
            if trivial:
                self._add_relator(
                    closed, f"face {face.shape} at v{face.base} {face.pair}")
                return
        raise AssertionError(
            f"no holonomy closes the face at v{face.base} {face.pair}")

    def _expand_letters(self, letters) -> MutationWord:
        word = MutationWord.identity(self.base.n)
        for sym, exp in letters:
            if sym is None:
                continue
            w = self._expansions[sym]
            word = word + (w if exp > 0 else w.inverse())
        return word

    # -- assembly -----------------------------------------------------------------

    def assemble(self, certify=True, full_check=False) -> Presentation:
        self._multiplication_tables()
        self._edge_isotropy_relations()
        for face in self.data.faces:
            self._face_relation(face)
        pres = Presentation(
            generators=list(self._generators),
            relators=[letters for letters, _ in self._relators],
            expansions=dict(self._expansions),
            base_matrix=self.base,
            isotropy_symbols=dict(self._iso_syms),
            meta={
                "class_size": len(self.mclass.reps),
                "eplus": len(self.data.eplus),
                "tree_edges": len(self.data.tree_edges),
                "faces": len(self.data.faces),
                "contexts": [ctx for _, ctx in self._relators],
            },
        )
        if certify:
            certify_presentation(pres, full_check=full_check)
        return pres


def certify_presentation(pres: Presentation, full_check=False):
    """Check that every relator expands to a trivial mutation loop."""
    for i, rel in enumerate(pres.relators):
        word = pres.relator_word(rel).normalize()
        trivial, _ = is_trivial_loop(pres.base_matrix, word, mode="cmatrix")
        if not trivial:
            context = pres.meta["contexts"][i] if i < len(pres.meta["contexts"]) else "?"
            raise AssertionError(
                f"relator {i} ({context}) fails the triviality certificate")
        if full_check:
            trivial, _ = is_trivial_loop(pres.base_matrix, word, mode="full")
            if not trivial:
                raise AssertionError(
                    f"relator {i} fails the full-mode certificate")
    return True


def assemble_presentation(mclass: MutationClass, certify=True,
                          full_check=False, simplify=True) -> Presentation:
    pres = BrownAssembler(mclass).assemble(certify=certify, full_check=full_check)
    if simplify:
        pres = tietze_simplify(pres)
    return pres


# -- Tietze cleanup ------------------------------------------------------------


def _cyclic_reduce(rel):
    letters = list(rel)
    changed = True
    while changed and letters:
        changed = False
        out = []
        for sym, exp in letters:
            if out and out[-1][0] == sym and out[-1][1] == -exp:
                out.pop()
                changed = True
            else:
                out.append((sym, exp))
        while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
            out = out[1:-1]
            changed = True
        letters = out
    return tuple(letters)


def _canonical_cyclic(rel):
    if not rel:
        return ()
    variants = []
    for word in (rel, tuple((s, -e) for s, e in reversed(rel))):
        for i in range(len(word)):
            variants.append(word[i:] + word[:i])
    return min(variants)


def _substitute(rel, sym, replacement):
    out = []
    for s, e in rel:
        if s != sym:
            out.append((s, e))
        elif e > 0:
            out.extend(replacement)
        else:
            out.extend((t, -f) for t, f in reversed(replacement))
    return _cyclic_reduce(tuple(out))


def tietze_simplify(pres: Presentation) -> Presentation:
    """Conservative cleanup: drop trivial/duplicate relators and eliminate
    generators that some relator defines in terms of the others."""
    relators = [_cyclic_reduce(r) for r in pres.relators]
    generators = list(pres.generators)
    changed = True
    while changed:
        changed = False
        seen = set()
        cleaned = []
        for rel in relators:
            if not rel:
                continue
            key = _canonical_cyclic(rel)
            if key in seen:
                continue
            seen.add(key)
            cleaned.append(rel)
        relators = cleaned
        # a generator occurring exactly once in some relator is defined by it
        for idx, rel in enumerate(relators):
            target = None
            for sym, exp in rel:
                if sum(1 for s, _ in rel if s == sym) == 1:
                    target = (sym, exp)
                    break
            if target is None:
                continue
            sym, exp = target
            pos = next(i for i, (s, _) in enumerate(rel) if s == sym)
            rest = rel[pos + 1:] + rel[:pos]
            if exp > 0:
                replacement = tuple((s, -e) for s, e in reversed(rest))
            else:
                replacement = rest
            relators = [
                _substitute(r, sym, replacement)
                for i, r in enumerate(relators) if i != idx
            ]
            generators.remove(sym)
            changed = True
            break
    return Presentation(
        generators=generators,
        relators=[r for r in relators if r],
        expansions=pres.expansions,
        base_matrix=pres.base_matrix,
        isotropy_symbols=pres.isotropy_symbols,
        meta=dict(pres.meta, simplified=True),
    )
