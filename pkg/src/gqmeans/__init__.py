"""
Generalized quasiarithmetic means of two variables.

Evaluation of classical and generator-based means, moments of measures on
``[0, 1]``, high-order diagonal derivatives through truncated Taylor
arithmetic, and numerical certification of equalities between means.
"""

from .errors import GQMeansError
from .generator import (
    GeneratorPair, Interval, TrigPair, are_equivalent, builtin_pair,
    equivalent_transform, phi_psi, power_pair, quasiarithmetic_pair, trig_pair,
)
from .jet import Jet
from .mean import (
    Bajraktarevic, Cauchy, Generalized, Gini, Power, Quasiarithmetic, Stolarsky,
    evaluate, spec_from_json,
)
from .measure import Measure, endpoints, lebesgue, mn_measure, moments, pi_moments
from .diagonal import diagonal_derivatives, implicit_series_oracle
from .equality import (
    check_thm_m, check_thm_n15, extract_witness, gini_stolarsky_scan,
    intersection_demo, means_equal_grid,
)

__version__ = "0.1.0"

__all__ = [
    "GQMeansError", "GeneratorPair", "Interval", "TrigPair", "are_equivalent",
    "builtin_pair", "equivalent_transform", "phi_psi", "power_pair",
    "quasiarithmetic_pair", "trig_pair", "Jet", "Bajraktarevic", "Cauchy",
    "Generalized", "Gini", "Power", "Quasiarithmetic", "Stolarsky", "evaluate",
    "spec_from_json", "Measure", "endpoints", "lebesgue", "mn_measure", "moments",
    "pi_moments", "diagonal_derivatives", "implicit_series_oracle", "check_thm_m",
    "check_thm_n15", "extract_witness", "gini_stolarsky_scan", "intersection_demo",
    "means_equal_grid",
]
