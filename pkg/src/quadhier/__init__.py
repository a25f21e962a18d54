"""Weight hierarchies of trace codes from (degenerate) quadratic forms over F_{p^m}."""

__version__ = "0.1.0"

from .code import TraceCode, build_code, subcode_support, weight_distribution
from .gf import FFElem, FieldCtx, ctx_new, quad_char, trace, v_func
from .hierarchy import FormProfile, HierarchyReport, closed_form, oracle_definition, oracle_lemma1, verify
from .qform import QuadraticForm, count_points, form_from_gram, form_from_spec, form_from_terms, quotient, restrict
from .subspaces import Subspace, enumerate_subspaces, gaussian_binomial, span

__all__ = [
    "FFElem",
    "FieldCtx",
    "FormProfile",
    "HierarchyReport",
    "QuadraticForm",
    "Subspace",
    "TraceCode",
    "build_code",
    "closed_form",
    "count_points",
    "ctx_new",
    "enumerate_subspaces",
    "form_from_gram",
    "form_from_spec",
    "form_from_terms",
    "gaussian_binomial",
    "oracle_definition",
    "oracle_lemma1",
    "quad_char",
    "quotient",
    "restrict",
    "span",
    "subcode_support",
    "trace",
    "v_func",
    "verify",
    "weight_distribution",
]
