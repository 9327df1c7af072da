import pytest

from factlab.errors import BadParams, DegenerateDraw
from factlab.families import (
    FamilySpec,
    gen_double_solid_nonfactorial,
    gen_hypersurface_nonfactorial,
)
from factlab.fields import GF
from factlab.lincond import defect
from factlab.poly import eval_poly


def test_family_spec_validation():
    with pytest.raises(BadParams):
        FamilySpec("double_solid_eq15", GF(101), seed=0, r=1)
    with pytest.raises(BadParams):
        FamilySpec("hypersurface_xgyf", GF(31), seed=0, d=2)
    with pytest.raises(BadParams):
        FamilySpec("ci_plane", GF(11), seed=0, m=2, k=3)
    with pytest.raises(BadParams):
        FamilySpec("unknown", GF(11), seed=0)


def test_double_solid_counts(double_solid_r2, double_solid_r3):
    assert len(double_solid_r2.sing) == 6 and double_solid_r2.clean
    assert len(double_solid_r3.sing) == 15 and double_solid_r3.clean
    assert all(double_solid_r2.node_flags)
    assert all(double_solid_r3.node_flags)


def test_double_solid_structure(double_solid_r2):
    # nodes lie on the plane {g_1 = 0} and on the conic {g_1 = g_r = 0}
    g1 = double_solid_r2.generators["g_1"]
    gr = double_solid_r2.generators["g_r"]
    g3 = double_solid_r2.generators["g_2r_minus_1"]
    for q in double_solid_r2.sing:
        assert eval_poly(g1, q.coords) == 0
        assert eval_poly(gr, q.coords) == 0
        assert eval_poly(g3, q.coords) == 0
    f = double_solid_r2.defining[0]
    assert (gr * gr - g1 * g3 - f).is_zero()


def test_double_solid_defects(double_solid_r2):
    assert defect(double_solid_r2.sing, 2).defect == 1
    assert defect(double_solid_r2.sing, 3).defect == 0


def test_double_solid_determinism():
    spec = FamilySpec("double_solid_eq15", GF(101), seed=1, r=2)
    a = gen_double_solid_nonfactorial(spec)
    b = gen_double_solid_nonfactorial(spec)
    assert a.defining[0] == b.defining[0]
    assert [q.coords for q in a.sing] == [q.coords for q in b.sing]


def test_double_solid_small_field_contract():
    # F_5 with 2r = 4: either a verified 6-node instance or a loud failure
    spec = FamilySpec("double_solid_eq15", GF(5), seed=0, r=2)
    try:
        inst = gen_double_solid_nonfactorial(spec)
    except DegenerateDraw as exc:
        assert len(exc.observed_counts) == 5
    else:
        assert len(inst.sing) == 6 and inst.clean


def test_hypersurface_counts(hypersurface_d3, hypersurface_d4):
    assert len(hypersurface_d3.sing) == 4 and hypersurface_d3.clean
    assert len(hypersurface_d4.sing) == 9 and hypersurface_d4.clean


def test_hypersurface_nodes_on_plane(hypersurface_d3, hypersurface_d4):
    for inst in (hypersurface_d3, hypersurface_d4):
        for q in inst.sing:
            assert q.coords[0] == 0 and q.coords[1] == 0
        for q in inst.sing:
            assert eval_poly(inst.generators["f"], q.coords) == 0
            assert eval_poly(inst.generators["g"], q.coords) == 0


def test_hypersurface_defects(hypersurface_d3, hypersurface_d4):
    assert defect(hypersurface_d3.sing, 1).defect == 1  # 2d-5 = 1, exact value
    assert defect(hypersurface_d4.sing, 3).defect >= 1


def test_ci_counts(ci_22, ci_32):
    assert len(ci_22.sing) == 3 and ci_22.clean
    assert len(ci_32.sing) == 7 and ci_32.clean


def test_ci_nodes_on_plane(ci_22, ci_32):
    for inst in (ci_22, ci_32):
        for q in inst.sing:
            assert q.coords[0] == 0 and q.coords[1] == 0 and q.coords[2] == 0
        F, G = inst.defining
        for q in inst.sing:
            assert eval_poly(F, q.coords) == 0
            assert eval_poly(G, q.coords) == 0


def test_degenerate_draw_carries_counts():
    # p = 3 is too small relative to 2r = 4: precondition refuses outright
    with pytest.raises(BadParams):
        gen_double_solid_nonfactorial(
            FamilySpec("double_solid_eq15", GF(3), seed=0, r=2)
        )


def test_hypersurface_wrong_family_rejected(hypersurface_d3):
    spec = FamilySpec("double_solid_eq15", GF(101), seed=1, r=2)
    with pytest.raises(BadParams):
        gen_hypersurface_nonfactorial(spec)
