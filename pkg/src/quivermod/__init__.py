"""Exact quiver mutation, mutation classes, and saturated cluster modular groups.

The package computes with integer skew-symmetrizable exchange matrices
and exact cluster variables, enumerates finite mutation classes up to
seed isomorphism, derives finite group presentations from the action on
the modular graph, and verifies named relation catalogs with two
independent triviality oracles.
"""

from .abelian import AbelianInvariants, abelianize, smith_normal_form
from .analysis import eliminate, find_dehn_twist_candidates, verify_relation
from .brown import (
    DataOfRepresentatives,
    Presentation,
    assemble_presentation,
    choose_representatives,
)
from .canonical import CanonicalForm, automorphisms, canonical_form, iso_witness
from .catalog import catalog_names, load_quiver
from .errors import (
    CapExceededError,
    EliminationError,
    EntryOverflowError,
    FrozenVertexError,
    InvalidMatrixError,
    InvalidPermutationError,
    InvertedEdgeError,
    NotALoopError,
    QuiverError,
    WordSyntaxError,
)
from .laurent import LaurentPolynomial, RationalFunction
from .matrix import ExchangeMatrix
from .mutclass import EdgeOrbit, MutationClass, StandardCycle, enumerate_class
from .perms import Permutation
from .relcatalog import RelationCatalog, load_catalog
from .seed import Seed, is_trivial_loop
from .words import MutationWord, commutator, compose, conjugate, power

__version__ = "0.1.0"
