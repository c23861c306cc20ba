"""Exact-rational Faber cone computations for moduli of stable pointed curves.

Thin convenience layer over the compiled `_core` module: the extension
exchanges canonical JSON strings, this package turns them into plain dicts
and lists.  All rationals are strings "p" or "p/q" in lowest terms.
"""

import json as _json
from fractions import Fraction

try:
    from . import _core
except ImportError:  # development layout: the extension lives in the build tree
    import _core

__all__ = [
    "Fraction",
    "strata",
    "canonical_index",
    "is_f_nef",
    "lookup_b",
    "ch_gamma",
    "flag_divisor",
    "verify_flag_divisor",
    "coarsen_to_unmarked",
    "normalize_g1",
    "symmetrize",
    "nef_criterion_61",
    "effective_criterion_35",
    "faber_cone",
    "faber_cone_rays",
    "extremal_rays",
    "facets",
    "membership",
    "fulton",
    "relation_space",
    "kappa",
    "lemma44",
    "symmetrize_space",
    "divisor",
]


def _dumps(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def divisor(g, n, lam="0", delta_irr="0", psi=None, boundary=None):
    """Assemble a divisor dict in the canonical schema.

    Boundary keys are "i|s1,s2,..." with ascending marks; psi keys are mark
    indices as strings.
    """
    return {
        "g": g,
        "n": n,
        "lambda": str(lam),
        "delta_irr": str(delta_irr),
        "psi": {str(k): str(v) for k, v in (psi or {}).items()},
        "boundary": {str(k): str(v) for k, v in (boundary or {}).items()},
    }


def strata(g, n):
    return _json.loads(_core.strata_json(g, n))


def canonical_index(g, n, i, marks):
    return _json.loads(_core.canonical_index_json(g, n, i, list(marks)))


def is_f_nef(div, threads=1):
    return _json.loads(_core.is_f_nef_json(_dumps(div), threads))


def lookup_b(div, i, marks):
    return Fraction(_core.lookup_b(_dumps(div), i, list(marks)))


def ch_gamma(g):
    return _json.loads(_core.ch_gamma_json(g))


def flag_divisor(g, n, a, birr):
    return _json.loads(_core.flag_divisor_json(g, n, str(a), str(birr)))


def verify_flag_divisor(g, n, a, birr):
    return _json.loads(_core.verify_flag_divisor_json(g, n, str(a), str(birr)))


def coarsen_to_unmarked(div):
    return _json.loads(_core.coarsen_to_unmarked_json(_dumps(div)))


def normalize_g1(div):
    return _json.loads(_core.normalize_g1_json(_dumps(div)))


def symmetrize(div, generators):
    return _json.loads(_core.symmetrize_json(_dumps(div), [list(p) for p in generators]))


def nef_criterion_61(div):
    return _json.loads(_core.nef_criterion_61_json(_dumps(div)))


def effective_criterion_35(div):
    return _json.loads(_core.effective_criterion_35_json(_dumps(div)))


def faber_cone(g, n):
    return _json.loads(_core.faber_cone_json(g, n))


def faber_cone_rays(g, n, threads=1):
    return _json.loads(_core.faber_cone_rays_json(g, n, threads))


def extremal_rays(cone_h, threads=1):
    return _json.loads(_core.extremal_rays_json(_dumps(cone_h), threads))


def facets(cone_v):
    return _json.loads(_core.facets_json(_dumps(cone_v)))


def membership(target, cone_v):
    return _json.loads(_core.membership_json([str(x) for x in target], _dumps(cone_v)))


def fulton(n, threads=1, budget_seconds=0.0, max_rays=0):
    return _json.loads(_core.fulton_json(n, threads, budget_seconds, max_rays))


def relation_space(n):
    return _json.loads(_core.relation_space_json(n))


def kappa(n):
    return _json.loads(_core.kappa_json(n))


def lemma44(n, blocks, e=None):
    e = {k: str(v) for k, v in (e or {}).items()}
    return _json.loads(_core.lemma44_json(n, [list(b) for b in blocks], e))


def symmetrize_space(n, generators):
    return _json.loads(_core.symmetrize_space_json(n, [list(p) for p in generators]))
