"""Exact intersection numbers, Chern classes and Ulrich identities on projective bundles."""

from .chern import FormalBundle, dual, line_bundle, line_sum, twist_line, whitney
from .chow import ChowClass, ChowModel, Kind, canonical_class, c2_tangent, make_model, top_intersect
from .expr import parse_expression
from .param_ring import PolyExpr, const, var
from .scenarios import run_builtin, run_file, run_text

__version__ = "0.1.0"

__all__ = [
    "PolyExpr", "var", "const",
    "ChowModel", "ChowClass", "Kind", "make_model", "top_intersect", "canonical_class", "c2_tangent",
    "FormalBundle", "whitney", "dual", "twist_line", "line_bundle", "line_sum",
    "parse_expression", "run_builtin", "run_file", "run_text",
]
