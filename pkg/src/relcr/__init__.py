"""Relative complete reducibility of subgroups, Lie subalgebras and subalgebras of GL_n."""

from .cocharacter import (Membership, WeightedCocharacter, apply_limit, classify_membership,
                          enumerate_destabilizer_candidates, limit_matrix, make_cocharacter, tuple_in_parabolic)
from .errors import (AmbientMismatch, BudgetExceeded, NotInH, NotInP, NotStable, RadicalUndecided,
                     RelCrError, SingularMatrix, UnsupportedHSpec)
from .kempf import OptimalResult, optimal_destabilizing_cocharacter
from .linalg import GF, QQ, Field, Matrix, Subspace, affine_solve
from .modules import (algebra_closure, associative_envelope, centralizer_dim, equivariant_complement, iota,
                      is_semisimple_module, radical, sigma, spin)
from .oracle import brute_force_relcr, brute_force_semisimple, enumerate_subspaces, submodule_lattice
from .relcr import (RelCrReport, Verdict, check_relcr, exists_restoring_mu, is_rel_irreducible,
                    levi_necessary_condition)
from .semisimplify import SemisimplifyTrace, semisimplify
from .structures import GeneratorTuple, HSpec

__version__ = "0.1.0"
