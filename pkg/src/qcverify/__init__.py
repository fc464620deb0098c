"""Exact checks of genus-0 and genus-1 quantum cohomology identities on truncated potentials."""

from .calculus import Calculus, MissingGenusOne, VectorField
from .identities import SuiteResult, check_identity, run_suite
from .model import FrobeniusModel, ModelError, dump_model, load_model, save_model
from .models import builtin, kontsevich_n, novikov_invariants, resolve_model
from .series import Monomial, SeriesSpace, TruncatedSeries
from .solver import SolveReport, build_ansatz, elliptic_invariants, solve_f1_getzler, solve_f1_l1

__version__ = "0.1.0"

__all__ = [
    "Calculus",
    "FrobeniusModel",
    "MissingGenusOne",
    "ModelError",
    "Monomial",
    "SeriesSpace",
    "SolveReport",
    "SuiteResult",
    "TruncatedSeries",
    "VectorField",
    "build_ansatz",
    "builtin",
    "check_identity",
    "dump_model",
    "elliptic_invariants",
    "kontsevich_n",
    "load_model",
    "novikov_invariants",
    "resolve_model",
    "run_suite",
    "save_model",
    "solve_f1_getzler",
    "solve_f1_l1",
]
