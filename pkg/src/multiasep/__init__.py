"""Exact verification and simulation for multi-species ASEP(q, j)."""
from .qarith import (
    LaurentPoly,
    RationalFunction,
    eval_at,
    q_binomial,
    q_factorial,
    q_int,
    q_int2,
)
from .statespace import Basis, Config, enumerate_configs, enumerate_sector
from .operators import SparseOperator
from .process import build_generator

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "eval_at",
    "q_int",
    "q_int2",
    "q_factorial",
    "q_binomial",
    "Config",
    "Basis",
    "enumerate_configs",
    "enumerate_sector",
    "SparseOperator",
    "build_generator",
]
