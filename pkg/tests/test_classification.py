import math

import pytest
from hypothesis import given, strategies as st

from hcmc import rot_profile as rp
from helpers import HORN_D_331, TORUS_D_432, WITNESSES


@pytest.mark.parametrize("tag", sorted(WITNESSES))
def test_witness_rows(tag):
    rec = rp.classify(rp.ProfileParams(*WITNESSES[tag]))
    assert rec.table_row == tag
    row = rp.ROWS_BY_TAG[tag]
    assert (rec.shape, rec.topology) == (row.shape, row.topology)


def test_table_has_thirteen_combos():
    assert len(rp.TABLE_ROWS) == 16
    assert {row.combo for row in rp.TABLE_ROWS} == set(range(1, 14))


def test_odd_r_trichotomy_signs():
    neg = rp.classify(rp.ProfileParams(4, 3, 2.0, -0.5))
    pos = rp.classify(rp.ProfileParams(4, 3, 2.0, -1.0))
    zero = rp.classify(rp.ProfileParams(4, 3, 2.0, TORUS_D_432))
    assert neg.lambda_plus < 0 < pos.lambda_plus
    assert (neg.shape, pos.shape) == ("nodoid", "nodoid")
    assert zero.shape == "torus-product"
    assert abs(zero.lambda_plus) < 1e-10


def test_balanced_d_reproduces_frozen_values():
    assert rp.balanced_d(4, 3, 2.0, -0.5, -1.0) == pytest.approx(TORUS_D_432, abs=1e-11)
    assert rp.balanced_d(3, 3, 1.0, -0.3, -0.6) == pytest.approx(HORN_D_331, abs=1e-11)


def test_n_eq_r_odd_sign_sequence():
    shapes = [rp.classify(rp.ProfileParams(3, 3, 1.0, d)).table_row for d in (-0.1, HORN_D_331, -0.9)]
    assert shapes == ["T3.nodoid-axis", "T3.horn-torus", "T3.spindle-torus-portion"]


def test_r1_nodoid_is_smooth():
    rec = rp.classify(rp.ProfileParams(3, 1, 1.0, -0.3))
    assert rec.table_row == "T1.nodoid"
    assert rec.regularity == "C^2" and rec.singular_set.empty


def test_singular_sets():
    assert rp.classify(rp.ProfileParams(3, 3, 1.0, 0.5)).singular_set.components == (("axis-point", 2),)
    assert rp.classify(rp.ProfileParams(3, 2, 0.9, 0.0)).singular_set.empty
    cusp = rp.classify(rp.ProfileParams(3, 2, 0.2, -0.1)).singular_set
    assert cusp.components == (("cusp-sphere", 1),)


@given(st.integers(2, 6), st.data())
def test_d_zero_is_sphere_or_graph(n, data):
    r = data.draw(st.integers(1, n))
    crit = rp.critical_curvature(n, r)
    H = data.draw(st.floats(crit + 0.05, crit + 2.0) if n > r else st.floats(0.05, 3.0))
    rec = rp.classify(rp.ProfileParams(n, r, H, 0.0))
    assert rec.shape == "sphere"
    assert rec.lambda_plus > 0


@given(st.floats(0.05, 2.0))
def test_sub_critical_d_zero_is_entire_graph(frac):
    H = rp.critical_curvature(4, 2) * frac / 2.05
    assert rp.classify(rp.ProfileParams(4, 2, H, 0.0)).shape == "entire-graph"


def test_classify_rejects_inadmissible():
    with pytest.raises(rp.InadmissibleParameters):
        rp.classify(rp.ProfileParams(3, 3, 1.0, 2.0))
    with pytest.raises(rp.InadmissibleParameters):
        rp.classify(rp.ProfileParams(3, 2, 1 / 3, math.pi / 2 + 0.01, regime="critical"))
