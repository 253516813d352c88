"""homcert: exact certification of twisted algebra structures given by
structure constants, with the constructions and searches built on them."""

from .errors import (BudgetError, CertificationError, InputError,
                     PreconditionError, UnsupportedError)
from .exactlin import (Matrix, Rational, Tensor3, bilinear_eval, mat_mul,
                       nullspace, rank, rat, rat_str)
from .homcore import (CertReport, EpsilonHomBialgebra, HomAlgebra,
                      check_axioms, check_morphism, check_predicate,
                      check_rota_baxter, convolution_rb, hom_associator,
                      yau_twist)
from .hommod import (HomModule, adjoint_postlie_module, bimodule_to_lie_module,
                     check_module_axioms, check_oop, direct_sum,
                     tensor_product, twist_0k, twist_beta, twist_n0)
from .functors import (FunctorResult, adjoint_bimodule, commutator_lie,
                       ldend_brackets, ldend_semidirect, ldend_to_prelie,
                       ldend_transpose, novikov_to_postlie,
                       oop_assoc_to_dendriform, oop_assoc_to_ldendriform,
                       oop_assoc_to_prelie, oop_lie_to_prelie,
                       oop_prelie_to_dendriform, prelie_module_split,
                       prelie_to_lie, rb_dendriform, scale)
from .search import (PostLieCandidateSpace, RandomInstanceSpec,
                     brute_force_epsilon_bialgebras, brute_force_oop_search,
                     brute_force_rb_search, corpus, postlie_candidate_space,
                     postlie_linear_system, postlie_search, random_instance)

__version__ = "0.1.0"
