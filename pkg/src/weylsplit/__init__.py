"""
Exact arithmetic in the q-Weyl algebra at a p-th root of unity, its
matrix splitting over a truncated center, and the Higgs correspondence
built on top of it.
"""

from __future__ import annotations

from .certificates import Certificate
from .cyclotomic import CycInt, q_factorial, q_gen, q_int, q_int_inverse, reduce_mod_J
from .exceptions import DegreeCapExceeded, NotInvertibleError, RingMismatchError, VerificationError
from .higgs import HiggsModule, SigmaModule, higgs_to_sigma, roundtrip_check, sigma_to_higgs
from .polynomial import Polynomial
from .qweyl import ClassicalWeylElement, QWeylElement, commutator, reduce_mod_p, sigma, weyl_mul
from .splitting import CenterElement, build_D, build_X, lift, phi_of, rho, verify_weyl_relation
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CenterElement",
    "ClassicalWeylElement",
    "CycInt",
    "DegreeCapExceeded",
    "HiggsModule",
    "NotInvertibleError",
    "Polynomial",
    "QWeylElement",
    "RingMismatchError",
    "SigmaModule",
    "VerificationError",
    "build_D",
    "build_X",
    "commutator",
    "higgs_to_sigma",
    "lift",
    "phi_of",
    "q_factorial",
    "q_gen",
    "q_int",
    "q_int_inverse",
    "reduce_mod_J",
    "reduce_mod_p",
    "rho",
    "roundtrip_check",
    "run_suite",
    "sigma",
    "sigma_to_higgs",
    "verify_weyl_relation",
    "weyl_mul",
]
