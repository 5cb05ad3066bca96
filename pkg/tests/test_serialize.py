import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from quotmmp import FieldSpec, ModuliParams, mmp_report
from quotmmp.quotmodel import gm_point
from quotmmp.serialize import (FormatError, dumps_point, dumps_report, dumps_subspace, loads_point,
                               loads_report, loads_subspace, parse_field_option, report_text)
from quotmmp.svgfan import render_svg

from pointgen import random_point


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, 8))))
def test_report_roundtrip(nrd):
    rep = mmp_report(ModuliParams(*nrd))
    assert loads_report(dumps_report(rep)) == rep


@pytest.mark.parametrize("field", [FieldSpec.rationals(), FieldSpec.prime(101)])
def test_point_and_subspace_roundtrip(field):
    rng = random.Random(1)
    p = ModuliParams(4, 2, 3)
    pt = random_point(p, rng, field)
    assert loads_point(dumps_point(pt)) == pt
    K = gm_point(pt, 2)
    assert loads_subspace(dumps_subspace(K)) == K


def test_parse_error_position():
    text = '{\n  "field": {"type": "Q"},\n  "n": 2, "r": 0, "d": 1,\n  "column_degrees": [1, 0],\n' \
           '  "entries": [["x", "0"], ["y", "1 +"]]\n}\n'
    with pytest.raises(FormatError) as exc:
        loads_point(text)
    assert exc.value.line == 5 and exc.value.col is not None


def test_json_syntax_error_position():
    with pytest.raises(FormatError) as exc:
        loads_point('{\n  "n": 2,\n  oops\n}')
    assert exc.value.line == 3


def test_missing_keys():
    with pytest.raises(FormatError, match="missing"):
        loads_point(json.dumps({"n": 2}))


def test_field_option():
    assert parse_field_option("Q").kind == "Q"
    assert parse_field_option("Fp:101").characteristic == 101
    assert parse_field_option("F7").characteristic == 7
    with pytest.raises(ValueError):
        parse_field_option("R")


def test_text_and_svg_render():
    rep = mmp_report(ModuliParams(4, 2, 3))
    txt = report_text(rep)
    assert "Mov(R) = <5α-β, -α+β>" in txt
    svg = render_svg(rep)
    import xml.dom.minidom
    doc = xml.dom.minidom.parseString(svg)
    labels = [t.firstChild.data for t in doc.getElementsByTagName("text")]
    for lab in ("5α-β", "6α-β", "α", "β", "-α+β", "R", "R'", "R_2", "R'_2"):
        assert lab in labels
    assert "Picard rank" not in svg
    assert "Pic(R) = Z" in render_svg(mmp_report(ModuliParams(2, 1, 5)))
