"""
Input specs and report records.
"""

from galrel.models.report_model import Report, ReportRow, to_plain
from galrel.models.spec_model import (
    CertifiedDict,
    ExtensionSpecDict,
    FieldSpec,
    FieldSpecDict,
)

__all__ = [
    "CertifiedDict",
    "ExtensionSpecDict",
    "FieldSpec",
    "FieldSpecDict",
    "Report",
    "ReportRow",
    "to_plain",
]
