"""Finite matrix models of Z_k-graded ladder algebras and fractional supersymmetry.

The package builds dense truncated representations of the generalized
Weyl-Heisenberg algebra W_k (annihilation/creation pair, number operator,
grading operator of order k) together with the structures living on top of
it: nilpotent supercharges and their Hamiltonians, k-fermion and deformed
boson realizations, U_q(sl2) at a root of unity, generalized Grassmann
calculus, and graded coherent states.  Every algebraic identity is checked
numerically on the interior of the truncated space and reported with an
explicit residual.
"""

from .fock import GradedFockSpace
from .qnum import RootOfUnity, root_of_unity
from .wk import StructureFunctions, GeneratorSet, build_generators, verify_wk_relations

__all__ = [
    "GradedFockSpace",
    "RootOfUnity",
    "root_of_unity",
    "StructureFunctions",
    "GeneratorSet",
    "build_generators",
    "verify_wk_relations",
]

__version__ = "0.1.0"
