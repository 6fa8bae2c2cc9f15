import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hcmc import export as ex
from hcmc.rot_profile import ProfileParams, profile_domain
from hcmc.trans_profile import TranslationParams


def test_regularized_grid_ends():
    g = ex.regularized_grid(0.0, 2.0, 11, False, True)
    assert g[0] == 0.0 and g[-1] == 2.0
    assert np.all(np.diff(g) > 0)
    # spacing shrinks toward the singular right end
    assert np.diff(g)[-1] < np.diff(g)[0]
    with pytest.raises(ValueError):
        ex.regularized_grid(0.0, 1.0, 1, False, False)


def test_sphere_mesh_closed():
    mesh, plan = ex.embed_profile(ProfileParams(2, 1, 1.0, 0.0), 40, 24)
    assert plan.closed
    assert mesh.euler_characteristic() == 2
    assert mesh.boundary_edges() == []
    assert np.all(np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1]) < 1)


def test_onduloid_periods():
    mesh, plan = ex.embed_profile(ProfileParams(2, 1, 1.0, 0.1), 20, 12, periods=3)
    assert plan.periodic and len(plan.pieces) == 6 and plan.junctions == 6
    assert [p.mirror for p in plan.pieces] == [False, True] * 3
    # an open tube: two boundary circles
    assert mesh.euler_characteristic() == 0
    assert len(mesh.boundary_edges()) == 2 * 12


def test_two_samples_one_band():
    mesh = ex.revolve(np.array([0.5, 1.0]), np.array([0.0, 0.3]), 8)
    assert len(mesh.vertices) == 16 and len(mesh.faces) == 8


def test_singular_rows_tagged():
    mesh, _ = ex.embed_profile(ProfileParams(2, 2, 1.0, -0.5), 30, 10)   # cusps
    assert mesh.singular and len(mesh.singular) % 10 == 0
    mesh, _ = ex.embed_profile(ProfileParams(2, 2, 1.0, 0.5), 30, 10)    # peaked sphere: cone poles
    assert len(mesh.singular) == 2
    assert mesh.euler_characteristic() == 2


def test_mesh_needs_n2():
    with pytest.raises(ValueError):
        ex.embed_profile(ProfileParams(3, 1, 1.0, 0.0), 10, 8)
    with pytest.raises(ValueError):
        ex.revolve(np.array([0.1, 0.2]), np.array([0.0, 0.1]), 2)


@given(st.sampled_from([(2, 1, 1.0, 0.0), (2, 2, 0.6, 0.2), (2, 1, 0.3, 0.2), (2, 2, 1.0, -0.5)]),
       st.integers(2, 30), st.integers(3, 16))
def test_vertices_inside_ball(t, samples, az):
    mesh, _ = ex.embed_profile(ProfileParams(*t), samples, az)
    assert np.all(np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1]) < 1)
    assert np.all(np.isfinite(mesh.vertices))


def test_obj_and_sidecar(tmp_path):
    mesh, _ = ex.embed_profile(ProfileParams(2, 2, 1.0, 0.5), 10, 6)
    path = tmp_path / "m.obj"
    ex.write_mesh(mesh, path)
    lines = path.read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == len(mesh.vertices)
    assert sum(l.startswith("f ") for l in lines) == len(mesh.faces)
    side = json.loads((tmp_path / "m.obj.singular.json").read_text())
    assert side["singular_vertices"] == [i + 1 for i in mesh.singular]


@pytest.mark.parametrize("t", [(2, 1, 1.0, 0.0), (3, 2, 0.9, -0.05), (4, 3, 1.0, -0.05), (3, 1, 0.5, 0.3)])
def test_csv_roundtrip_bit_exact(t):
    table = ex.profile_table(ProfileParams(*t), 37)
    back = ex.csv_to_table(ex.table_to_csv(table, ex.PROFILE_COLUMNS))
    for c in ex.PROFILE_COLUMNS:
        assert np.array_equal(back[c], table[c], equal_nan=True)
        assert back[c].tobytes() == table[c].tobytes() or np.isnan(table[c]).any()


def test_json_roundtrip_and_nulls():
    table = ex.profile_table(ProfileParams(2, 1, 1.0, 0.0), 25)
    back = json.loads(ex.to_json(table))
    for c in ex.PROFILE_COLUMNS:
        for got, want in zip(back[c], table[c].tolist()):
            if math.isfinite(want):
                assert got == want
            else:
                assert got is None


def test_profile_table_last_row():
    table = ex.profile_table(ProfileParams(2, 1, 1.0, 0.0), 200)
    assert table["rho"].size == 200
    assert table["rho"][-1] == pytest.approx(math.log(3), abs=1e-9)
    assert table["lambda_dot"][-1] == math.inf
    assert np.nanmax(table["residual"]) < 1e-10


def test_translation_table():
    table = ex.translation_table(TranslationParams(3, 2, 1.0, 0.01), 9)
    assert table["rho"][0] == 0.01 and table["mu"][0] == 0.0
    assert table["mu_dot"][-1] == math.inf


def test_atomic_write_replaces(tmp_path):
    p = tmp_path / "x.txt"
    ex.atomic_write(p, "one")
    ex.atomic_write(p, "two")
    assert p.read_text() == "two"
    assert [f.name for f in tmp_path.iterdir()] == ["x.txt"]


def test_assembly_unbounded_annulus():
    plan = ex.assembly_plan(ProfileParams(2, 1, 0.3, 0.2))
    assert not plan.periodic and len(plan.pieces) == 2
    plan = ex.assembly_plan(ProfileParams(2, 1, 0.3, 0.0))
    assert len(plan.pieces) == 1
    dom = profile_domain(ProfileParams(2, 1, 0.3, 0.0))
    assert not dom.bounded
