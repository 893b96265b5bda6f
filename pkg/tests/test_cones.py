import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_generators
from veerkit import RationalCone
from veerkit.cones import dot
from veerkit.errors import DimensionGuard, DimensionMismatch


def _cone(seed):
    dim, gens = random_generators(random.Random(seed))
    return RationalCone.from_generators(gens, dim), gens


def _probe_points(dim, radius=2):
    return list(itertools.product(range(-radius, radius + 1), repeat=dim))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_double_dual_and_certificate(seed):
    cone, gens = _cone(seed)
    assert cone.certify()
    dual = cone.dual()
    assert dual.certify()
    assert dual.dual() == cone
    for g in gens:
        assert cone.contains(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_dual_matches_definition(seed):
    cone, _ = _cone(seed)
    if cone.dim > 3:
        return
    dual = cone.dual()
    for y in _probe_points(cone.dim):
        assert dual.contains(y) == all(dot(y, g) >= 0 for g in cone.generators)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_constraint_round_trip(seed):
    cone, _ = _cone(seed)
    again = RationalCone.from_constraints(cone.dim, cone.facets, cone.equations)
    assert again == cone
    assert (again.rays, again.lineality) == (cone.rays, cone.lineality)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_interior_points(seed):
    cone, _ = _cone(seed)
    total = tuple(sum(col) for col in zip(*cone.generators)) if cone.generators else (0,) * cone.dim
    assert cone.contains_interior(total)


def test_special_cones():
    zero = RationalCone.from_generators([], 3)
    assert zero.is_zero and zero.dimension == 0
    assert zero.dual() == RationalCone.from_generators([(1, 0, 0), (-1, 0, 0), (0, 1, 0),
                                                        (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    half = RationalCone.from_constraints(2, inequalities=[(1, 0)])
    assert not half.is_pointed and half.rays == ((1, 0),) and half.lineality == ((0, 1),)
    assert half.dual() == RationalCone.from_generators([(1, 0)])
    orthant = RationalCone.from_constraints(3, inequalities=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert orthant.rays == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert orthant.dual() == orthant


def test_square_pyramid_has_four_rays():
    cone = RationalCone.from_generators([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1), (0, 0, 1)])
    assert len(cone.extreme_rays()) == 4 and len(cone.facets) == 4


def test_dimension_errors(monkeypatch):
    cone = RationalCone.from_generators([(1, 0), (0, 1)])
    with pytest.raises(DimensionMismatch):
        cone.contains((1, 2, 3))
    with pytest.raises(DimensionMismatch):
        cone.equals(RationalCone.from_generators([(1, 0, 0)]))
    with pytest.raises(DimensionMismatch):
        RationalCone.from_generators([(1, 0), (1, 0, 0)])
    monkeypatch.setenv("VEERKIT_DIM_CAP", "1")
    with pytest.raises(DimensionGuard):
        cone.dual()
