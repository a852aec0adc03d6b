"""Exact construction and analysis of the 36-dimensional representation of
the Birman-Murakami-Wenzl algebra of type E6."""

from .field import DELTA, L, M, ONE, R, ZERO, RationalFunction, format_rf, parse
from .roots import LABELS, positive_roots
from .rep import Rep, build_rep, complete_rep, fixture_checks
from .reducibility import (conjugate_elements, det_S_check, reducibility_report,
                           semisimplicity_values, specialization_report, sum_S)

__all__ = ["DELTA", "L", "M", "ONE", "R", "ZERO", "RationalFunction", "format_rf", "parse",
           "LABELS", "positive_roots", "Rep", "build_rep", "complete_rep", "fixture_checks",
           "conjugate_elements", "det_S_check", "reducibility_report", "semisimplicity_values",
           "specialization_report", "sum_S"]
