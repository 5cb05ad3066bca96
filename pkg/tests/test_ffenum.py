import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quotmmp import _kernels
from quotmmp.exactcore import ExactMatrix, FieldSpec, gaussian_binomial, rank
from quotmmp.ffenum import (CapExceededError, census, count_rm_direct, cross_check_pr1,
                            default_cap, enumerate_subspaces)
from quotmmp.p1forms import ModuliParams

import oracles


@pytest.mark.parametrize("k,N,q", [(1, 3, 2), (2, 4, 2), (2, 3, 3), (0, 2, 2), (3, 3, 3)])
def test_enumeration_matches_bruteforce(k, N, q):
    bases = [tuple(map(tuple, b.tolist())) for b in enumerate_subspaces(k, N, q)]
    assert len(bases) == len(set(bases)) == gaussian_binomial(k, N, q)
    assert len(bases) == oracles.count_subspaces_bruteforce(k, N, q)
    for b in bases:
        assert oracles.rref_mod(b, q) == b or k == 0


def test_enumeration_order_is_deterministic():
    a = [b.tobytes() for b in enumerate_subspaces(2, 4, 3)]
    b = [b.tobytes() for b in enumerate_subspaces(2, 4, 3)]
    assert a == b


def test_cap():
    with pytest.raises(CapExceededError) as exc:
        list(enumerate_subspaces(3, 6, 2, cap=100))
    assert exc.value.count == 1395


def test_default_cap_env(monkeypatch):
    monkeypatch.setenv("QUOTMMP_CAP", "42")
    assert default_cap() == 42
    monkeypatch.delenv("QUOTMMP_CAP")
    assert default_cap() == 10 ** 7


def test_bad_q():
    with pytest.raises(ValueError):
        census(ModuliParams(2, 0, 1), 1, 11)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.sampled_from([2, 3, 5, 7]), st.integers(0, 2 ** 31))
def test_kernel_ranks_match_exactcore(R, C, q, seed):
    rng = np.random.default_rng(seed)
    mats = rng.integers(0, q, size=(6, R, C))
    F = FieldSpec.prime(q)
    expected = [rank(ExactMatrix(m.tolist(), F)) for m in mats]
    assert _kernels.rank_mod_p_batch(mats, q, backend="numpy").tolist() == expected
    assert _kernels.rank_mod_p_batch(mats, q, backend="numba").tolist() == expected


def test_census_small_cases():
    res = census(ModuliParams(2, 0, 1), 1, 2, direct=True)
    assert res.counts == {-1: 6, 0: 9}
    assert res.rm_point_count_stratified == res.rm_point_count_direct == 9
    res = census(ModuliParams(2, 0, 2), 1, 2)
    assert res.total == 35 and res.max_index_observed == 1 and res.emptiness_holds
    assert sum(res.counts.values()) == gaussian_binomial(2, 4, 2)


def test_census_deterministic_across_threads_and_backends(monkeypatch):
    p = ModuliParams(3, 1, 1)
    base = census(p, 1, 2).to_dict()
    assert census(p, 1, 2, threads=3).to_dict() == base
    monkeypatch.setattr(_kernels, "USE_NUMBA", False)
    assert census(p, 1, 2).to_dict() == base


def test_direct_count_matches_torsion_oracle():
    for q in (2, 3):
        pairs = oracles.torsion_quotient_pairs(q)
        assert len(pairs) == (q + 1) ** 2
        assert all(oracles.j_condition_holds(lo, hi, 2, 1, q) for lo, hi in pairs)
        assert count_rm_direct(ModuliParams(2, 0, 1), 1, q) == len(pairs)


def test_cross_check_bottom_level():
    cc = cross_check_pr1(ModuliParams(2, 0, 1), 0, 2, direct=True)
    assert cc.all_fibers_nontrivial and cc.consistent
    assert cc.pr1_stratified == cc.direct == 9


def test_census_serialization_roundtrip():
    from quotmmp.serialize import census_from_json
    res = census(ModuliParams(2, 0, 2), 1, 3)
    assert census_from_json(res.to_dict()) == res
    assert res.to_csv().splitlines()[0] == "index,pr2_count,pr1_count"
