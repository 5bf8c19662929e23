from hmflow.studies.compare import Comparison, MethodSummary, compare_methods
from hmflow.studies.eoc import compute_eoc
from hmflow.studies.presets import PRESETS, TABLE_ALIASES, get_preset
from hmflow.studies.report import ErrorReport, ErrorRow, report_from_csv
from hmflow.studies.runner import attach_eoc, run_cell, run_study, study_mesh
from hmflow.studies.spec import StudySpec, parse_spec_file, parse_spec_text

__all__ = [
    "Comparison",
    "ErrorReport",
    "ErrorRow",
    "MethodSummary",
    "PRESETS",
    "StudySpec",
    "TABLE_ALIASES",
    "attach_eoc",
    "compare_methods",
    "compute_eoc",
    "get_preset",
    "parse_spec_file",
    "parse_spec_text",
    "report_from_csv",
    "run_cell",
    "run_study",
    "study_mesh",
]
