import pytest

from conftest import layered_entries, load
from veerkit import build_boundary, check_veering_rule
from veerkit.boundary import DOWNWARD, UPWARD, ladder_summary

TOKENS = [e.token for e in layered_entries()]


def test_figure_eight_ladders(fig8):
    boundary = build_boundary(fig8)
    kinds = sorted(lad.kind for lad in boundary.ladders)
    assert kinds == [DOWNWARD, DOWNWARD, UPWARD, UPWARD]
    summary = ladder_summary(boundary)
    assert [(c["upward"], c["downward"]) for c in summary] == [(2, 2)]


@pytest.mark.parametrize("token", TOKENS)
def test_cusp_tori(token):
    tri = load(token)
    boundary = build_boundary(tri)
    assert len(boundary.cusps) == tri.num_cusps
    assert set(boundary.euler_characteristics().values()) == {0}
    # 4 flat triangles per tetrahedron, tiled into ladders
    assert sum(len(lad.triangles) for lad in boundary.ladders) == 4 * tri.n
    for c in ladder_summary(boundary):
        assert c["upward"] == c["downward"] >= 1


@pytest.mark.parametrize("token", TOKENS)
def test_veering_rule(token):
    report = check_veering_rule(build_boundary(load(token)))
    assert report.checks and report.ok, report.failures


@pytest.mark.parametrize("token", TOKENS[:12])
def test_reversal_swaps_ladder_kinds(token):
    tri = load(token)
    fwd = ladder_summary(build_boundary(tri))
    back = ladder_summary(build_boundary(tri.reversed()))
    assert [(c["upward"], c["downward"]) for c in fwd] == \
        [(c["downward"], c["upward"]) for c in back]
    assert check_veering_rule(build_boundary(tri.reversed())).ok
