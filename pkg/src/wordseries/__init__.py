"""Word series, extended word series and normal forms of perturbed systems.

Coefficient maps indexed by words over a finite alphabet carry the algebra
(convolution, shuffle characters, exp/log, brackets); models turn them into
vector fields and maps; the normal-form layer computes changes of variables
and formal invariants word by word.
"""
from .algebra import (CoeffMap, bracket, convolve, convolve_many, dynkin_expansion, exp_star,
                      inverse, is_character, is_infinitesimal, log_star, random_character,
                      random_infinitesimal, shuffle, word_table, words_up_to)
from .coefficients import EXACT, FLOAT, gauss, parse_gauss
from .errors import (AlphabetMismatchError, ConfigError, IntegrationError, ModeMismatchError, NotInvertibleError,
                     PreconditionError, SmallDivisorError, TruncationError, UnsupportedModelError,
                     WordSeriesError)
from .exppoly import ExpPoly, iterated_integral
from .extended import (ExtCoeff, FreqTable, FreqVector, Xi, alpha_at, change_of_variables,
                       ext_bracket, ext_exp, ext_inverse, ext_log, ext_product, ext_unit,
                       in_resonance_space, nu_word, resonance_space, resonant_words, xi)
from .fields import Poly, hamiltonian_field, lie_bracket, poisson_bracket
from .models import (Model, action_angle_model, angle_model, assemble_hamiltonian, eigen_split,
                     evaluate_ext_series, evaluate_word_series, symmetric_reduction,
                     verify_assumption, word_basis_function, word_hamiltonian)
from .normal_form import (beta_bar_recursion, check_normal_form, decompose, gauge_transform,
                          group_normal_form, invariant_coefficients, normal_form, rho_recursion)

__version__ = "0.1.0"
