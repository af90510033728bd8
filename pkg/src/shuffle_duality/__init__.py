"""Exact arithmetic for the shuffle algebra of quantum loop sl_n, its good
elements, and the Drinfeld pairing against PBWD monomials."""
from .exactalg import LaurentV, RatV, qfact, qint
from .kernels import BACKEND
from .pairing import FPBWDMonomial, pair, pair_via_words
from .polyring import MultiLaurent
from .shuffle import (Decomposition, EPBWDMonomial, Root, ShuffleElement, build_e_pbwd,
                      divided_power, e_root, e_tilde, gen_e, star, wheel_check)
from .special import SpecializationPlan, is_good, specialize

__all__ = [
    "BACKEND", "Decomposition", "EPBWDMonomial", "FPBWDMonomial", "LaurentV", "MultiLaurent",
    "RatV", "Root", "ShuffleElement", "SpecializationPlan", "build_e_pbwd", "divided_power",
    "e_root", "e_tilde", "gen_e", "is_good", "pair", "pair_via_words", "qfact", "qint",
    "specialize", "star", "wheel_check",
]
__version__ = "0.1.0"
