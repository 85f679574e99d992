"""Exact set optimization over polyhedral upper sets.

Modules, bottom up: ``exact_geom`` (rationals, polyhedra, double description),
``lp_core`` (certified simplex), ``lattice_sets`` (the lattice of upper sets),
``scalar_calculus`` (scalarizations, conjugates, derivatives), ``lvo_engine``
(vector linear programs and their duals) and ``risk_engine`` (set-valued risk
measures on finite markets).
"""

from .exact_geom import Cone, HRep, VRep, h_to_v, v_to_h, remove_redundancy, contains
from .lp_core import LpProblem, LpOutcome, solve_lp
from .lattice_sets import OrderCone, UpperSet, infimum, supremum, minkowski_sum, inf_residuation
from .lvo_engine import LvoProblem, LvoSolution, DualSolution, solve_primal_benson, geometric_dual
from .risk_engine import MarketModel, RiskResult, risk_measure

__all__ = [
    "Cone", "HRep", "VRep", "h_to_v", "v_to_h", "remove_redundancy", "contains",
    "LpProblem", "LpOutcome", "solve_lp",
    "OrderCone", "UpperSet", "infimum", "supremum", "minkowski_sum", "inf_residuation",
    "LvoProblem", "LvoSolution", "DualSolution", "solve_primal_benson", "geometric_dual",
    "MarketModel", "RiskResult", "risk_measure",
]

__version__ = "0.1.0"
