"""The .gal format, report emission and the ``galattice`` command."""

from .gal import ModelFile, parse_field, parse_model_file, print_model_file
from .report import emit_report
