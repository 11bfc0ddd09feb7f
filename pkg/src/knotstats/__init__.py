"""Knot diagram determinants and statistics over invariant datasets.

The library computes knot determinants from DT codes by three
independent exact routes (Kauffman bracket at a primitive eighth root
of unity, Goeritz matrix, Alexander polynomial at -1), constructs
pretzel and twist knot families with closed-form determinants, ingests
per-knot invariant tables, and runs the regression, extremal-slope,
density-curve and inequality analyses over them.
"""

from .diagram import (DTCode, Diagram, GaussCode, canonical_dt, checkerboard,
                      dt_to_gauss, extract_dt, faces, mirror, parse_dt,
                      realize, validate, writhe)
from .errors import (BudgetExceeded, Disagreement, DuplicateMagnitude,
                     EmptyFile, KnotstatsError, MissingColumn, NonRealizable,
                     NotAKnot, OddValue, WrongRange)
from .families import (FamilyReport, PretzelSpec, TwistSpec, family_report,
                       pretzel, twist)
from .invariants import (CycInt, LaurentPoly, alexander_det, determinant,
                         goeritz_det, jones_det, kauffman_bracket)
from .dataset import (KnotRecord, KnotTable, ValidationReport, group_stats,
                      histogram_pdf, load_csv, read_header_map, verify_sample)
from .stats import (DensityCurve, LinearFit, SigmoidFit, a_min, density_f,
                    linfit, sigmoid_eval, sigmoid_fit)
from .conjectures import (ConjectureReport, check_density_bound,
                          check_det_volume, check_rank_volume,
                          check_stoimenow)

__version__ = "1.0.0"

__all__ = [
    "DTCode", "Diagram", "GaussCode", "canonical_dt", "checkerboard",
    "dt_to_gauss", "extract_dt", "faces", "mirror", "parse_dt", "realize",
    "validate", "writhe",
    "BudgetExceeded", "Disagreement", "DuplicateMagnitude", "EmptyFile",
    "KnotstatsError", "MissingColumn", "NonRealizable", "NotAKnot",
    "OddValue", "WrongRange",
    "FamilyReport", "PretzelSpec", "TwistSpec", "family_report", "pretzel",
    "twist",
    "CycInt", "LaurentPoly", "alexander_det", "determinant", "goeritz_det",
    "jones_det", "kauffman_bracket",
    "KnotRecord", "KnotTable", "ValidationReport", "group_stats",
    "histogram_pdf", "load_csv", "read_header_map", "verify_sample",
    "DensityCurve", "LinearFit", "SigmoidFit", "a_min", "density_f",
    "linfit", "sigmoid_eval", "sigmoid_fit",
    "ConjectureReport", "check_density_bound", "check_det_volume",
    "check_rank_volume", "check_stoimenow",
    "__version__",
]
