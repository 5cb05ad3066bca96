import random

import pytest

from quotmmp import BinaryForm, FieldSpec, ModuliParams, SheafMapPoint, parse_form
from quotmmp.exactcore import QQ, ExactMatrix
from quotmmp.sheafpoint import (DomainError, InvalidPointError, NotLocallyFreeError, check_star,
                                complement_sign, dualize, h0_subspace, is_locally_free_quotient,
                                pluecker_point, validate)

from pointgen import random_point

F101 = FieldSpec.prime(101)


def point(n, r, d, rows, field=QQ):
    forms = [[parse_form(t, None, field) if t != "0" else None for t in row] for row in rows]
    degs = []
    for j in range(len(rows[0])):
        degs.append(next(f.degree for f in (r_[j] for r_ in forms) if f is not None))
    entries = [[f if f is not None else BinaryForm.zero(degs[j], field) for j, f in enumerate(row)]
               for row in forms]
    return SheafMapPoint(ModuliParams(n, r, d), tuple(degs), entries, field)


def identity(n):
    one, zero = BinaryForm.constant(1), BinaryForm.constant(0)
    return SheafMapPoint(ModuliParams(n, 0, 0), (0,) * n,
                         [[one if i == j else zero for j in range(n)] for i in range(n)])


DIAG = point(2, 0, 2, [["x", "0"], ["0", "y"]])
UNBAL = point(2, 0, 2, [["x^2", "0"], ["0", "1"]])
WITNESS = point(2, 0, 1, [["x", "0"], ["y", "1"]])


def test_validate_examples():
    assert validate(identity(2)) == []
    assert validate(DIAG) == []
    zero_col = SheafMapPoint(ModuliParams(2, 0, 1), (1, 0),
                             [[parse_form("x"), BinaryForm.constant(0)], [parse_form("y"), BinaryForm.constant(0)]])
    assert validate(zero_col)
    bad_sum = SheafMapPoint(ModuliParams(2, 0, 3), (1, 1),
                            [[parse_form("x"), parse_form("0", 1)], [parse_form("0", 1), parse_form("y")]])
    assert any("sum" in m for m in validate(bad_sum))


def test_h0_examples():
    assert h0_subspace(DIAG, 1).tolist() == [[1, 0, 0, 0], [0, 0, 0, 1]]
    assert h0_subspace(UNBAL, 1).tolist() == [[0, 0, 1, 0], [0, 0, 0, 1]]
    for m in range(3):
        assert h0_subspace(identity(2), m).rows == 2 * (m + 1)


def test_check_star_examples():
    assert check_star(WITNESS, 1).holds
    rep = check_star(UNBAL, 1)
    assert not rep.holds and rep.conditions["ii"] is False
    assert check_star(identity(2), 0).holds
    with pytest.raises(DomainError):
        check_star(DIAG, 0)


def test_check_star_monotone():
    rng = random.Random(3)
    for n, r, d in [(2, 0, 2), (3, 1, 3), (3, 0, 4)]:
        p = ModuliParams(n, r, d)
        for _ in range(10):
            degs = sorted((rng.randint(0, d) for _ in range(p.s - 1)), reverse=True)
            degs = sorted(degs + [d - sum(degs)], reverse=True) if sum(degs) <= d else None
            if degs is None:
                continue
            pt = random_point(p, rng, F101, degs)
            if validate(pt):
                continue
            holds = [check_star(pt, m).holds for m in range(p.ceil_ds, d + 3)]
            first = holds.index(True) if True in holds else len(holds)
            assert all(holds[first:])


def test_pluecker_examples():
    assert [str(f) for f in pluecker_point(DIAG)] == ["x*y"]
    assert pluecker_point(DIAG)[0].coeffs == (0, 1, 0)
    col = point(2, 1, 1, [["x"], ["y"]])
    assert [str(f) for f in pluecker_point(col)] == ["x", "y"]
    assert [str(f) for f in pluecker_point(identity(2))] == ["1"]


def test_dualize_examples():
    col = point(2, 1, 1, [["x"], ["y"]])
    dual = dualize(col)
    assert dual.column_degrees == (1,)
    a, b = dual.column(0)
    # proportional to (y, -x)
    assert a * parse_form("x") + b * parse_form("y") == BinaryForm.zero(2)
    assert not a.is_zero()
    with pytest.raises(NotLocallyFreeError):
        dualize(DIAG)
    block = SheafMapPoint(ModuliParams(3, 1, 0), (0, 0), [[BinaryForm.constant(c) for c in row]
                                                          for row in ([1, 0], [0, 1], [0, 0])])
    assert dualize(block).column_degrees == (0,)


def test_complement_sign():
    assert complement_sign([0, 1], 4) == 1
    assert complement_sign([1], 2) == -1
    assert complement_sign([0, 2], 4) == -1


def test_invalid_point_rejected_by_pluecker():
    zero = SheafMapPoint(ModuliParams(2, 0, 0), (0, 0), [[BinaryForm.constant(0)] * 2] * 2)
    with pytest.raises(InvalidPointError):
        pluecker_point(zero)


def test_dualize_involution_small():
    rng = random.Random(11)
    p = ModuliParams(3, 1, 2)
    done = 0
    while done < 15:
        pt = random_point(p, rng, F101)
        if validate(pt) or not is_locally_free_quotient(pt):
            continue
        dd = dualize(dualize(pt))
        assert dd.column_degrees == pt.column_degrees
        assert h0_subspace(dd, p.d) == h0_subspace(pt, p.d)
        done += 1
