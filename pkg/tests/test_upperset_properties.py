"""Algebraic and order laws of the upper-set lattice, property-based."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from uppersets import Cone, orthant
from uppersets.linalg import NEG_INF, dot, ext_add, ext_scale
from uppersets.upperset import (
    UpperSet,
    canonicalize,
    cone_upper_set,
    halfspace_set,
    inf_set,
    point_plus_cone,
    sup_set,
)

CONES = [orthant(2), Cone(2, ((1, 0), (1, 1)), (2, 1)), orthant(3)]

rationals = st.builds(
    Fraction, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=3)
)


def points_for(cone):
    return st.lists(
        st.tuples(*[rationals] * cone.dim).map(tuple), min_size=1, max_size=3
    )


@st.composite
def upper_sets(draw, allow_special=True):
    cone = draw(st.sampled_from(CONES))
    choice = draw(st.integers(0, 9))
    if allow_special and choice == 0:
        return UpperSet.empty(cone)
    if allow_special and choice == 1:
        return UpperSet.full(cone)
    if choice in (2, 3):
        w = draw(st.sampled_from(cone.dual_generators))
        return halfspace_set(cone, w, draw(rationals))
    pts = draw(points_for(cone))
    return canonicalize(cone, points=pts)


@st.composite
def same_cone_pairs(draw, n=2, allow_special=True):
    cone = draw(st.sampled_from(CONES))
    out = []
    for _ in range(n):
        choice = draw(st.integers(0, 9))
        if allow_special and choice == 0:
            out.append(UpperSet.empty(cone))
        elif choice in (1, 2):
            w = draw(st.sampled_from(cone.dual_generators))
            out.append(halfspace_set(cone, w, draw(rationals)))
        else:
            out.append(canonicalize(cone, points=draw(points_for(cone))))
    return cone, out


SETTINGS = dict(max_examples=40, deadline=None)


@settings(**SETTINGS)
@given(same_cone_pairs(n=2))
def test_oplus_commutative(pair):
    _, (d, e) = pair
    assert d.oplus(e).set_equal(e.oplus(d))


@settings(**SETTINGS)
@given(same_cone_pairs(n=3))
def test_oplus_associative(triple):
    _, (d, e, f) = triple
    assert d.oplus(e).oplus(f).set_equal(d.oplus(e.oplus(f)))


@settings(**SETTINGS)
@given(upper_sets())
def test_cone_is_neutral(d):
    assert d.oplus(cone_upper_set(d.cone)).set_equal(d)


@settings(**SETTINGS)
@given(upper_sets(), st.sampled_from([Fraction(1, 2), Fraction(2), Fraction(3, 2)]))
def test_scale_composition(d, lam):
    nu = Fraction(2, 3)
    assert d.scale(lam).scale(nu).set_equal(d.scale(lam * nu))


@settings(**SETTINGS)
@given(same_cone_pairs(n=2), st.sampled_from([Fraction(1, 2), Fraction(3)]))
def test_scale_distributes_over_oplus(pair, lam):
    _, (d, e) = pair
    assert d.oplus(e).scale(lam).set_equal(d.scale(lam).oplus(e.scale(lam)))


@settings(**SETTINGS)
@given(same_cone_pairs(n=2))
def test_support_additivity(pair):
    cone, (d, e) = pair
    s = d.oplus(e)
    for w in cone.dual_generators:
        lhs = s.support(w)
        rhs = ext_add(d.support(w), e.support(w))
        assert lhs == rhs


@settings(**SETTINGS)
@given(upper_sets(allow_special=False), st.sampled_from([Fraction(1, 2), Fraction(5, 2)]))
def test_support_positively_homogeneous_in_lambda(d, lam):
    for w in d.cone.dual_generators:
        sig = d.support(w)
        scaled = d.scale(lam).support(w)
        if sig == NEG_INF:
            assert scaled == NEG_INF
        else:
            assert scaled == ext_scale(lam, sig)


@settings(**SETTINGS)
@given(same_cone_pairs(n=3))
def test_inf_sup_are_bounds(triple):
    cone, family = triple
    lo = inf_set(cone, family)
    hi = sup_set(cone, family)
    for d in family:
        assert d.subset_of(lo)
        assert hi.subset_of(d)
    # glb/lub against a fourth comparable element built from the family
    assert hi.subset_of(lo)


@settings(**SETTINGS)
@given(same_cone_pairs(n=2))
def test_inf_is_greatest_lower_bound(pair):
    cone, (d, e) = pair
    lo = inf_set(cone, [d, e])
    # any set containing both members contains their hull
    witness = inf_set(cone, [d, e, point_plus_cone(cone, tuple(0 for _ in range(cone.dim)))])
    assert d.subset_of(witness) and e.subset_of(witness)
    assert lo.subset_of(witness)


@settings(**SETTINGS)
@given(upper_sets(allow_special=False))
def test_separation_at_facets(d):
    rebuilt = sup_set(d.cone, [d.supporting_halfspace(w) for w in d.facet_normals()])
    assert rebuilt.set_equal(d)
    for w in d.facet_normals():
        assert d.subset_of(d.supporting_halfspace(w))


@settings(**SETTINGS)
@given(upper_sets())
def test_set_equal_matches_mutual_subset(d):
    again = (
        d
        if d.kind != "proper"
        else canonicalize(d.cone, points=d.points, rays=d.rays, lineality=d.lineality)
    )
    assert d.set_equal(again)
    assert d.subset_of(again) and again.subset_of(d)


@settings(**SETTINGS)
@given(same_cone_pairs(n=2))
def test_subset_agreement_with_structural_equality(pair):
    _, (d, e) = pair
    mutual = d.subset_of(e) and e.subset_of(d)
    assert mutual == d.set_equal(e)


@settings(**SETTINGS)
@given(upper_sets(allow_special=False))
def test_recession_contains_cone(d):
    for g in d.cone.generators:
        for h in d.halfspaces:
            assert dot(g, h.normal) >= 0


@settings(**SETTINGS)
@given(upper_sets(allow_special=False))
def test_canonicalize_is_fixed_point(d):
    assert canonicalize(d.cone, halfspaces=d.hrep_rows()) == d
