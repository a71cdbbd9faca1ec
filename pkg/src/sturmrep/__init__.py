"""Repetitions, subword complexity and exponents of infinite words."""
from ._kernels import BACKEND
from .arith import CFExpansion, QuadraticNumber, cf_expand, cf_to_quadratic, convergents, parse_quadratic
from .complexity import classify, l_array, p_profile, r_profile
from .words import extremal_word, fibonacci_word, sturmian_word, thue_morse_word

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CFExpansion", "QuadraticNumber", "cf_expand", "cf_to_quadratic", "convergents",
    "parse_quadratic", "classify", "l_array", "p_profile", "r_profile", "extremal_word",
    "fibonacci_word", "sturmian_word", "thue_morse_word",
]
