import pytest

from factlab.errors import CenterHit, DuplicatePoint, TooLarge, ZeroVector
from factlab.fields import GF, QQ
from factlab.projgeom import (
    LinearCenter,
    PointSet,
    canonicalize,
    dump_point_set,
    enumerate_projective,
    load_point_set,
    point_set,
    project_point,
    project_set,
    projective_count,
    random_center,
    span_dim,
)
from factlab.scan import coords_table


def test_canonicalize():
    F = GF(7)
    p = canonicalize([2, 4, 6], F)
    assert p.coords == (1, 2, 3)
    with pytest.raises(ZeroVector):
        canonicalize([0, 0, 0], F)


def test_pointset_rejects_duplicates():
    F = GF(7)
    a = canonicalize([1, 2, 3], F)
    b = canonicalize([2, 4, 6], F)
    with pytest.raises(DuplicatePoint):
        point_set([a, b])


def test_enumeration_count_and_canonical():
    for n, p in [(1, 5), (2, 5), (2, 7), (3, 3)]:
        pts = list(enumerate_projective(n, p))
        assert len(pts) == projective_count(n, p)
        assert len({q.coords for q in pts}) == len(pts)
        for q in pts:
            nz = next(c for c in q.coords if c)
            assert nz == 1


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        list(enumerate_projective(3, 101, scan_cap=10))


def test_coords_table_matches_enumeration():
    import numpy as np

    for n, p in [(2, 5), (3, 3)]:
        table = coords_table(n, p)
        pts = list(enumerate_projective(n, p))
        assert table.shape == (len(pts), n + 1)
        for row, q in zip(table, pts):
            assert tuple(int(v) for v in row) == q.coords


def test_span_dim():
    F = GF(7)
    a = canonicalize([1, 0, 0], F)
    b = canonicalize([0, 1, 0], F)
    c = canonicalize([1, 1, 0], F)
    assert span_dim([a]) == 0
    assert span_dim([a, b]) == 1
    assert span_dim([a, b, c]) == 1


def test_projection_from_seeded_center():
    F = GF(101)
    center = random_center(4, 2, F, seed=3)
    sigma = point_set(
        [canonicalize([1, t, t * t % 101, (t**3) % 101, 5], F) for t in range(8)]
    )
    report = project_set(sigma, center)
    assert report.image.ambient_dim == 2
    assert report.injective == (len(report.image) == len(sigma))


def test_projection_center_hit():
    F = GF(101)
    g = canonicalize([0, 0, 0, 0, 1], F)
    center = LinearCenter((g,), (0, 1, 2, 3))
    with pytest.raises(CenterHit):
        project_point(g, center)
    # a generic point projects by dropping the last coordinate
    q = canonicalize([1, 2, 3, 4, 5], F)
    assert project_point(q, center).coords == (1, 2, 3, 4)


def test_point_set_file_roundtrip():
    F = GF(101)
    sigma = point_set([canonicalize([1, t, t + 1], F) for t in range(4)])
    text = dump_point_set(sigma)
    again = load_point_set(text)
    assert again == sigma


def test_point_set_file_comments_and_rational():
    text = "# header comment\nP 2 QQ\n1,2,3\n# another\n1/2,1,0\n"
    sigma = load_point_set(text)
    assert len(sigma) == 2
    assert sigma.field == QQ
    assert sigma.points[1].coords[1] == 2  # canonicalized: 1/2 scaled to 1
