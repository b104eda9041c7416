from fractions import Fraction

import pytest

from jacpair.laurent import LaurentPoly
from jacpair.newton import (Direction, EdgeForm, angle_cmp, edge_dir, hull, in_interval,
                            leading_form, pred_succ, render_ascii, render_svg, st_en, v, v_point)

P = LaurentPoly.parse("1 + x*y + x^6*y^16 + x^6*y^18 + y^18")


def test_v_and_leading_form():
    d = Direction(1, 0)
    assert v(d, P) == 6
    assert leading_form(d, P) == LaurentPoly.parse("x^6*y^16 + x^6*y^18")
    st, en = st_en(d, P)
    assert (st, en) == ((6, 16), (6, 18))


def test_st_en_orientation():
    # en - st is a positive multiple of (-sigma, rho)
    d = Direction(-1, 1)
    st, en = st_en(d, LaurentPoly.parse("y^3 + x*y^4 + x^2"))
    assert (st, en) == ((1, 4), (0, 3))
    assert (en[0] - st[0], en[1] - st[1]) == (-d.sigma, d.rho)


def test_hull_and_edges():
    h = hull(P)
    assert h.vertex_set() == {(0, 0), (1, 1), (6, 16), (6, 18), (0, 18)}
    dirs = h.edge_directions()
    assert Direction(1, 0) in dirs and Direction(-1, 0) in dirs
    assert h.contains((3, 9)) and not h.contains((7, 0))
    assert h.scaled(2).vertex_set() == {(0, 0), (2, 2), (12, 32), (12, 36), (0, 36)}


def test_collinear_points_dropped():
    h = hull([(0, 0), (1, 1), (2, 2), (0, 2)])
    assert h.vertex_set() == {(0, 0), (2, 2), (0, 2)}


def test_edge_dir_primitive():
    assert edge_dir((0, 0), (4, 2)) == Direction(1, -2)
    assert edge_dir((Fraction(1, 2), 0), (1, 1)) == Direction(2, -1)
    with pytest.raises(ValueError):
        edge_dir((1, 1), (1, 1))


def test_angle_order():
    assert angle_cmp((1, -1), (1, 0)) < 0
    assert angle_cmp((1, 0), (0, 1)) < 0
    assert angle_cmp((-1, 0), (0, -1)) > 0
    assert in_interval((1, 1), (1, 0), (0, 1))
    assert not in_interval((1, 0), (1, 0), (0, 1))


def test_pred_succ():
    h = hull(P)
    pred, succ = pred_succ(h, Direction(1, 0))
    assert angle_cmp(pred, (1, 0)) < 0 < angle_cmp(succ, (1, 0))


def test_edge_form():
    ef = EdgeForm(((9, 27), (0, 9)), (0, 9), [((1, 2), 3, 9)])
    assert ef.check(Direction(2, -1))
    assert set(ef.form().support()) >= {(9, 27), (0, 9)}


def test_renderers():
    h = hull(P)
    art = render_ascii(hull([(0, 0), (2, 0), (0, 2)]))
    assert art.splitlines()[-1].split(None, 1)[1] == "#+#"
    assert render_ascii(h).count("#") == 5
    svg = render_svg(h)
    assert svg.startswith("<svg") and "polygon" in svg
