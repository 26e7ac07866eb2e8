"""Double description core, checked against brute-force grid oracles."""

import random
from fractions import Fraction
from itertools import product

import pytest

from uppersets.ddm import (
    GeometryError,
    cone_vrep,
    hrep_feasible,
    hrep_to_vrep,
    rref_basis,
    vrep_to_hrep,
)
from uppersets.linalg import dot, primitive, rank, vec


def in_cone_by_rows(rows, x):
    return all(dot(r, x) >= 0 for r in rows)


def valid_rows_for(lineality, rays, dim):
    # All small-integer inequalities valid on cone(rays) + span(lineality);
    # an independent H-description built by brute force.
    grid = [vec(p) for p in product(range(-3, 4), repeat=dim)]
    return [
        g
        for g in grid
        if all(dot(g, r) >= 0 for r in rays) and all(dot(g, l) == 0 for l in lineality)
    ]


def test_dual_of_orthant_rows_is_orthant():
    rows = [(1, 0), (0, 1)]
    lin, rays = cone_vrep(rows, 2)
    assert lin == []
    assert rays == [(0, 1), (1, 0)]


def test_wedge_dual():
    # {w : w1 >= 0, w1 + w2 >= 0} is generated by (0,1) and (1,-1)
    lin, rays = cone_vrep([(1, 0), (1, 1)], 2)
    assert lin == []
    assert sorted(rays) == [(0, 1), (1, -1)]


def test_halfspace_cone_has_lineality():
    lin, rays = cone_vrep([(1, 1)], 2)
    assert lin == [(1, -1)]
    # the single extreme ray is only defined modulo lineality
    assert len(rays) == 1 and dot(rays[0], (1, 1)) > 0


def test_zero_dual_of_full_space():
    lin, rays = cone_vrep([], 3)
    assert rays == []
    assert len(lin) == 3


def test_infeasible_strict_opposites_leave_zero_cone():
    lin, rays = cone_vrep([(1, 0), (-1, 0), (0, 1), (0, -1)], 2)
    assert lin == [] and rays == []


@pytest.mark.parametrize("seed", range(12))
def test_cone_vrep_matches_grid_oracle(seed):
    # Random small integer rows in dims 2..4: every grid point must agree
    # between the H-description and the computed V-description.
    rng = random.Random(seed)
    dim = rng.choice([2, 2, 3, 3, 4])
    rows = [tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(rng.randint(1, 5))]
    lin, rays = cone_vrep(rows, dim)
    oracle_rows = valid_rows_for(lin, rays, dim)
    for x in product(range(-2, 3), repeat=dim):
        lhs = in_cone_by_rows(rows, x)
        rhs = all(dot(g, x) >= 0 for g in oracle_rows)
        assert lhs == rhs, (rows, x, lin, rays)


@pytest.mark.parametrize("seed", range(12))
def test_cone_vrep_rays_are_extreme(seed):
    # Independent minimality oracle: an output ray r is extreme iff the rows
    # tight at r have a solution space of dimension dim(lineality) + 1.
    rng = random.Random(100 + seed)
    dim = rng.choice([2, 3, 3, 4])
    rows = [tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(rng.randint(2, 6))]
    lin, rays = cone_vrep(rows, dim)
    nonzero = [r for r in rows if any(r)]
    for r in rays:
        tight = [row for row in nonzero if dot(row, r) == 0]
        sol_dim = dim - rank(tight) if tight else dim
        assert sol_dim == len(lin) + 1, (rows, r)
        assert in_cone_by_rows(rows, r)


def test_hrep_to_vrep_simplex():
    ineqs = [((1, 0), 0), ((0, 1), 0), ((-1, -1), -2)]  # x,y >= 0, x+y <= 2
    points, rays, lin = hrep_to_vrep(ineqs, 2)
    assert points == [(0, 0), (0, 2), (2, 0)]
    assert rays == [] and lin == []


def test_hrep_to_vrep_translated_orthant():
    ineqs = [((1, 0), 1), ((0, 1), 2)]
    points, rays, lin = hrep_to_vrep(ineqs, 2)
    assert points == [(1, 2)]
    assert rays == [(0, 1), (1, 0)]
    assert lin == []


def test_hrep_to_vrep_halfspace_lineality():
    points, rays, lin = hrep_to_vrep([((1, 1), 0)], 2)
    assert lin == [(1, -1)]
    assert points == [(0, 0)]


def test_hrep_infeasible():
    assert not hrep_feasible([((1, 0), 1), ((-1, 0), 0)], 2)
    assert hrep_feasible([((1, 0), 1), ((-1, 0), -1)], 2)


def test_vrep_to_hrep_staircase():
    facets = vrep_to_hrep([(1, 0), (0, 1)], [(1, 0), (0, 1)], [], 2)
    assert sorted(facets) == [((0, 1), 0), ((1, 0), 0), ((1, 1), 1)]


def test_vrep_to_hrep_full_space():
    facets = vrep_to_hrep([(0, 0)], [], [(1, 0), (0, 1)], 2)
    assert facets == []


def test_vrep_to_hrep_lower_dimensional_rejected():
    with pytest.raises(GeometryError):
        vrep_to_hrep([(0, 0)], [], [(1, 0)], 2)


@pytest.mark.parametrize("seed", range(10))
def test_hrep_vrep_round_trip(seed):
    # Full-dimensional random polyhedra: H -> V -> H must reproduce the set;
    # verified pointwise on a grid, independent of facet normalization.
    rng = random.Random(2000 + seed)
    dim = rng.choice([2, 2, 3])
    ineqs = []
    for _ in range(rng.randint(1, 4)):
        w = tuple(rng.randint(-2, 2) for _ in range(dim))
        if not any(w):
            continue
        ineqs.append((w, Fraction(rng.randint(-2, 1))))
    points, rays, lin = hrep_to_vrep(ineqs, dim)
    if not points:
        return
    interior_hits = 0
    grid = list(product(range(-3, 4), repeat=dim))
    for x in grid:
        if all(dot(w, x) > b for w, b in ineqs):
            interior_hits += 1
    if interior_hits == 0:
        return  # possibly lower-dimensional; facet enumeration not applicable
    facets = vrep_to_hrep(points, rays, lin, dim)
    for x in grid:
        original = all(dot(w, x) >= b for w, b in ineqs)
        recovered = all(dot(w, x) >= b for w, b in facets)
        assert original == recovered, (ineqs, facets, x)


def test_rref_basis_canonical():
    assert rref_basis([(2, 4), (1, 2)], 2) == [(1, 2)]
    assert rref_basis([(1, 1), (1, -1)], 2) == [(1, 0), (0, 1)]
    assert rref_basis([(0, 0)], 2) == []


def test_primitive_normalization():
    assert primitive((Fraction(2, 3), Fraction(-4, 3))) == (1, -2)
    assert primitive((0, 0)) == (0, 0)
    assert primitive((-2, -4)) == (-1, -2)
