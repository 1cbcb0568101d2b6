"""Exact, brute-force checks of the y-partition of local graphs in Grassmann graphs J_q(n, k)."""
from .errors import BudgetExceeded, ClassMismatchError, DomainError, ParseError, WitnessError
from .field import gf
from .gflinalg import Subspace, parse_subspace, rref
from .grassmann import GraphContext, choose_pair, make_context
from .orbits import OrbitClass, classify, witness_pair, y_partition
from .qalg import Params, TableId, TransitionId, bracket, closed_table, gauss_binom

__version__ = "0.1.0"
