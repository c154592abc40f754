"""
Numerical evaluation of cellular integrals and high-precision constants.
"""
from cellular.evaluator.precision import BigFloat, bits_for_digits, digits_for_bits
from cellular.evaluator.constants import REFERENCE_50, const_pi, const_zeta, named_constant, named_value
from cellular.evaluator.integrand import CompiledIntegrand, compile_integrand
from cellular.evaluator.evaluate import (
    ConvergenceError,
    EvalResult,
    EvaluationError,
    eval_basic,
    eval_general,
    eval_montecarlo,
    max_on_cell,
)

__all__ = [
    "BigFloat",
    "bits_for_digits",
    "digits_for_bits",
    "REFERENCE_50",
    "const_pi",
    "const_zeta",
    "named_constant",
    "named_value",
    "CompiledIntegrand",
    "compile_integrand",
    "ConvergenceError",
    "EvalResult",
    "EvaluationError",
    "eval_basic",
    "eval_general",
    "eval_montecarlo",
    "max_on_cell",
]
