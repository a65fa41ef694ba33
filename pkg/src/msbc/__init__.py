"""Min-sum barrier coverage with equal-radius sensors on a line.

``solve`` returns an optimal cover for any feasible instance; the case
specific solvers, the trees they run on and two independent checkers are
exported as well.
"""
from .containing import ProcessLog, solve_containing
from .core import (BothSidesEmpty, CaseKind, Configuration, DegenerateInput, GapRecord,
                   IndexOutOfRange, Infeasible, Instance, InstanceError, MissingKey,
                   NonPositiveBarrier, NonPositiveRadius, NotContaining, OverlapRecord,
                   SolutionReport, UnsortedInput, classify, covers, enumerate_gaps_overlaps,
                   mirror, total_cost, validate, verify_coverage)
from .general import (solve, solve_all_outside, solve_general, solve_lambda_windows,
                      sweep_attached_windows)
from .one_sided import (check_unimodal, one_sided_series, reverse_operations,
                        solve_far_right_special, solve_one_sided)
from .oracle import oracle_optimal, reference_quadratic_containing
from .trees import LeftShiftTree, OverlapTree, PositionTree

__all__ = [name for name in dir() if not name.startswith("_")]
