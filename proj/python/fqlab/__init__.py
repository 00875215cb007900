"""Point counting on complete intersections over finite fields."""

import json

from ._core import (
    BudgetError,
    FqlabError,
    IntegrityError,
    MathError,
    ParseError,
    Spec,
    betti_sum,
    count,
    count_pn,
    count_series,
    euler_characteristic,
    genus_formula,
    has_fixed_point_diagonal,
    hyperplane_section,
    lambda_fnq,
    lambda_identity_curve,
    middle_betti,
    min_period_diagonal,
    parse_spec,
    random_ci,
    recheck_report,
    run_cli,
)
from . import _core


def analyze_middle(spec, max_ext, fe=False, tol=1e-8):
    out = _core.analyze_middle(spec, max_ext, fe, tol)
    out["reports"] = [json.loads(r) for r in out["reports"]]
    return out


def check_theorem_a(spec, m=1):
    return json.loads(_core.check_theorem_a(spec, m))


def check_katz(N, r, d, betti):
    return json.loads(_core.check_katz(N, r, d, betti))


def genus_two_absent(max_ambient=6, max_degree=6):
    return json.loads(_core.genus_two_absent(max_ambient, max_degree))


def fermat_family(q):
    return [json.loads(r) for r in _core.fermat_family(q)]


def load_spec(path):
    with open(path, encoding="utf-8") as f:
        return parse_spec(f.read())
