"""Smoke tests for the python bindings."""

from fractions import Fraction

import pytest

import fabercone as fc


def test_strata_counts():
    assert len(fc.strata(0, 5)) == 10
    assert len(fc.strata(2, 0)) == 2
    assert len(fc.strata(1, 1)) == 1
    with pytest.raises(ValueError):
        fc.strata(0, 3)


def test_canonical_index():
    assert fc.canonical_index(3, 0, 2, []) == {"i": 1, "S": []}
    assert fc.canonical_index(0, 4, 0, [3, 4]) == {"i": 0, "S": [1, 2]}
    with pytest.raises(ValueError):
        fc.canonical_index(3, 2, 0, [1])


def test_f_nef_named_classes():
    eleven = fc.divisor(5, 0, lam=11, delta_irr=-1, boundary={"1|": -1, "2|": -1})
    rep = fc.is_f_nef(eleven)
    assert rep["verdict"] is True

    gamma = fc.ch_gamma(3)
    rep = fc.is_f_nef(gamma)
    assert rep["verdict"] is False
    assert rep["violated"][0]["stratum"]["type"] == 1
    assert rep["violated"][0]["value"] == "-2"


def test_lookup_b_conventions():
    d = fc.divisor(2, 1, psi={1: 2})
    assert fc.lookup_b(d, 0, [1]) == Fraction(2)
    e = fc.divisor(1, 1, psi={1: 5})
    assert fc.lookup_b(e, 1, []) == Fraction(0)


def test_flag_divisor_verification():
    rep = fc.verify_flag_divisor(2, 1, 17, "3/2")
    assert rep["conditions_met"] and rep["zero_on_T6"] and rep["positive_on_rest"]
    div = fc.flag_divisor(2, 1, 17, "3/2")
    assert div["psi"] == {"1": "2"}


def test_g10_vertex():
    v = fc.divisor(10, 0, lam=30, delta_irr=-3,
                   boundary={"1|": -6, "2|": -6, "3|": -2, "4|": -4, "5|": -6})
    rep = fc.is_f_nef(v)
    assert rep["verdict"] is True
    assert rep["tight_rank"] == 6
    crit = fc.nef_criterion_61(v)
    assert crit["f_nef"] is True and crit["nef"] is False
    rays = fc.faber_cone_rays(10, 0)
    assert ["30", "3", "6", "6", "2", "4", "6"] in rays["rays"]


def test_faber_cone_m3():
    rays = fc.faber_cone_rays(3, 0)
    assert sorted(rays["rays"]) == sorted(
        [["1", "0", "0"], ["12", "1", "0"], ["10", "1", "2"]])


def test_relation_space_and_kappa():
    assert fc.relation_space(4)["dim"] == 1
    assert fc.relation_space(5)["dim"] == 5
    assert fc.relation_space(6)["dim"] == 16
    kappa = fc.kappa(5)
    assert all(Fraction(v) == Fraction(1, 2) for v in kappa["coefficients"].values())


def test_fulton_small():
    res = fc.fulton(4)
    assert res["answer"] is True and len(res["extremal_rays"]) == 1
    res = fc.fulton(5)
    assert res["answer"] is True and len(res["extremal_rays"]) == 10
    assert all(c["type"] == "member" for c in res["certificates"])


def test_membership_and_extremal_rays():
    cone_h = {"dim": 3, "rows": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
              "lineality": []}
    rays = fc.extremal_rays(cone_h)
    assert len(rays["rays"]) == 3
    cert = fc.membership(["1", "1", "0"], rays)
    assert cert["type"] == "member"
    cert = fc.membership(["-1", "0", "0"], rays)
    assert cert["type"] == "separated"


def test_lemma44():
    cert = fc.lemma44(5, [[1, 2], [3, 4, 5]], {"1,2": "-1"})
    assert cert["type"] == "member"


def test_symmetrize_space():
    # the full symmetric group fixes a two-dimensional subspace for n=6
    gens = [[2, 1, 3, 4, 5, 6], [2, 3, 4, 5, 6, 1]]
    assert fc.symmetrize_space(6, gens)["dim"] == 2


def test_normalize_g1():
    d = fc.divisor(1, 2, lam=3, delta_irr=-1, psi={1: 2})
    nf = fc.normalize_g1(d)
    assert nf["lambda"] == "0"
    assert nf["psi"] == {}
