import pytest
from hypothesis import given, strategies as st

from quotmmp.chamberfan import (ALPHA, BETA, Cone2, DivisorClass, c1_Bm, c1_Bm_prime, canonical_class,
                                cone_contains, exceptional_dimensions, mmp_report, prime_basis_change)
from quotmmp.p1forms import ModuliParams

import oracles
from sweep import report_problems, sweep_params


def D(a, b):
    return DivisorClass(a, b)


def test_labels():
    assert D(5, -1).label() == "5α-β"
    assert D(-1, 1).label() == "-α+β"
    assert D(0, 0).label() == "0"
    assert ALPHA.label() == "α"


def test_cone_normalizes():
    c = Cone2(D(0, 2), D(3, 0))
    assert (c.ray1, c.ray2) == (ALPHA, BETA)
    with pytest.raises(ValueError):
        Cone2(ALPHA, -ALPHA)
    assert cone_contains(c, D(1, 1), strict=True)
    assert cone_contains(c, ALPHA) and not cone_contains(c, ALPHA, strict=True)
    assert not cone_contains(c, D(-1, 1))


def test_report_4_2_3():
    rep = mmp_report(ModuliParams(4, 2, 3))
    cones = {c.model: c.nef.rays for c in rep.chambers}
    assert cones == {
        "R": {ALPHA, BETA}, "R_2": {BETA, D(-1, 1)},
        "R'": {D(6, -1), ALPHA}, "R'_2": {D(6, -1), D(5, -1)},
    }
    assert rep.mov == rep.eff == Cone2(D(5, -1), D(-1, 1))
    kinds = {w.cls: w.kind for w in rep.walls}
    assert kinds[D(5, -1)] == kinds[D(-1, 1)] == "fiber-type"
    alpha = next(w for w in rep.walls if w.cls == ALPHA)
    assert alpha.kind == "small" and alpha.target_data["type"] == "quantum-grassmannian"
    assert rep.canonical == D(-10, 0) and rep.log_fano


def test_report_2_0_2_divisorial():
    rep = mmp_report(ModuliParams(2, 0, 2))
    beta = next(w for w in rep.walls if w.cls == BETA)
    assert beta.kind == "divisorial" and beta.contracted == D(-1, 1)
    assert rep.mov == Cone2(ALPHA, BETA) and rep.eff == Cone2(ALPHA, D(-1, 1))


def test_report_2_0_1_trivial():
    rep = mmp_report(ModuliParams(2, 0, 1))
    assert rep.nef == rep.mov == rep.eff == Cone2(ALPHA, BETA)
    assert len(rep.chambers) == 1


@pytest.mark.parametrize("n,r,d", [(2, 1, 5), (3, 2, 1), (3, 0, 0)])
def test_degenerate(n, r, d):
    rep = mmp_report(ModuliParams(n, r, d))
    assert rep.degenerate and rep.chambers == [] and "Pic(R) = Z" in rep.notes[0]


def test_canonical_class_examples():
    assert canonical_class(ModuliParams(4, 2, 3)) == D(-10, 0)
    with pytest.raises(ValueError):
        canonical_class(ModuliParams(2, 1, 3))


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 20))
def test_prime_basis_change_involution(a, b, d):
    c = D(a, b)
    assert prime_basis_change(prime_basis_change(c, d), d) == c


def test_primed_family():
    p = ModuliParams(6, 3, 5)
    for m in range(-1, 6):
        assert c1_Bm_prime(p, m) == D(p.d + m + 1, -1)
    assert c1_Bm(p, 4) == BETA


@pytest.mark.parametrize("p", list(sweep_params())[::7], ids=str)
def test_sweep_invariants_sample(p):
    assert report_problems(p) == []


def test_exceptional_dimensions_examples():
    p = ModuliParams(4, 2, 3)
    assert exceptional_dimensions(p, 2) == (14, 4)
    q = ModuliParams(2, 0, 2)
    assert exceptional_dimensions(q, 1)[0] == q.dim_R - 1
    with pytest.raises(ValueError):
        exceptional_dimensions(p, 3)


@pytest.mark.parametrize("p", list(sweep_params())[::5], ids=str)
def test_exceptional_dimensions_match_strata(p):
    for m in range(p.ceil_ds, p.d):
        assert exceptional_dimensions(p, m) == oracles.exceptional_dims_from_strata(p.n, p.r, p.d, m)
