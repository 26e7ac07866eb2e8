"""Axiom checks, measure reconstruction, representation and the mutants."""

from fractions import Fraction

import pytest

from uppersets import Cone, ValidationError, orthant
from uppersets.axioms import (
    AXIOM_ORDER,
    MUTANT_NAMES,
    SampleSet,
    SetFunctional,
    check_additivity,
    check_indicator,
    check_interchange,
    check_nullity,
    check_positive_homogeneity,
    decompose_nonneg,
    extract_scalar,
    integral_functional,
    mutant_catalog,
    reconstruct_measure,
    run_axiom_checks,
    verify_representation,
)
from uppersets.integral import aumann_integral
from uppersets.measure_space import (
    AtomicMeasure,
    ScalarFunction,
    VectorFunction,
    cone_translates,
    space,
)
from uppersets.upperset import (
    UpperSet,
    cone_upper_set,
    halfspace_set,
    point_plus_cone,
)

R2 = orthant(2)
X2 = space("x1", "x2")
MU = AtomicMeasure.from_map(X2, {"x1": 2, "x2": 1})


@pytest.fixture(scope="module")
def samples():
    return SampleSet(X2, R2, seed=0, count=12)


def test_extract_scalar_cases():
    assert extract_scalar(point_plus_cone(R2, (2, 2)), R2) == 2
    assert extract_scalar(cone_upper_set(R2), R2) == 0
    assert extract_scalar(halfspace_set(R2, (1, 1), 0), R2) == "not_of_form"
    assert extract_scalar(UpperSet.empty(R2), R2) == "empty"
    assert extract_scalar(UpperSet.full(R2), R2) == "not_of_form"
    assert extract_scalar(point_plus_cone(R2, (-1, -1)), R2) == "not_of_form"
    for k in (Fraction(0), Fraction(1, 3), Fraction(7, 2)):
        s = point_plus_cone(R2, tuple(k * x for x in R2.interior_point))
        assert extract_scalar(s, R2) == k


def test_integral_passes_all_axioms(samples):
    phi = integral_functional(MU)
    report = run_axiom_checks(phi, samples)
    assert report.passed, report.describe()
    assert tuple(r.axiom for r in report.results) == AXIOM_ORDER


def test_shifted_functional_fails_additivity(samples):
    # phi(F) = ∫F dμ ⊕ B with B = (1,0)+C carries one B on the left and two
    # on the right of the additivity identity
    bump = point_plus_cone(R2, (1, 0))
    phi = SetFunctional("shifted", lambda F: aumann_integral(F, MU).value.oplus(bump))
    result = check_additivity(phi, samples)
    assert result.status == "fail"


def test_translating_functional_fails_homogeneity(samples):
    shift = (1, 1)
    phi = SetFunctional(
        "translated", lambda F: aumann_integral(F, MU).value.translate(shift)
    )
    result = check_positive_homogeneity(phi, samples)
    assert result.status == "fail"


def test_padded_functional_fails_nullity(samples):
    c = R2.interior_point
    pad = point_plus_cone(R2, c)
    phi = SetFunctional("padded", lambda F: aumann_integral(F, MU).value.oplus(pad))
    result = check_nullity(phi, samples)
    assert result.status == "fail"
    # H(w) ⊕ (c+C) is strictly inside H(w) because <c, w> > 0
    w = R2.dual_generators[0]
    padded = halfspace_set(R2, w, 0).oplus(pad)
    assert padded.subset_of(halfspace_set(R2, w, 0))
    assert not halfspace_set(R2, w, 0).subset_of(padded)


def test_halfspace_projection_fails_indicator(samples):
    w0 = (1, 1)
    phi = SetFunctional(
        "projected", lambda F: aumann_integral(F, MU).value.supporting_halfspace(w0)
    )
    result, _ = check_indicator(phi, samples)
    assert result.status == "fail"
    assert any("form" in line for line in result.details)


def test_extraneous_constraint_fails_interchange(samples):
    # an extraneous halfspace applied on multi-facet inputs only: the left
    # side is strictly smaller than the intersection of the halfspace images,
    # which never see the extra constraint
    extra = halfspace_set(R2, (2, 1), 4)

    def evaluator(F):
        from uppersets.axioms import is_halfspace_valued
        from uppersets.upperset import sup_set

        value = aumann_integral(F, MU).value
        if is_halfspace_valued(F):
            return value
        return sup_set(R2, [value, extra])

    phi = SetFunctional("tightened", evaluator)
    result = check_interchange(phi, samples)
    assert result.status == "fail"


def test_indicator_table_matches_measure(samples):
    phi = integral_functional(MU)
    result, table = check_indicator(phi, samples)
    assert result.status == "pass"
    for xi, value in table:
        assert value == xi.integral(MU)


def test_indicator_example_values():
    mu = AtomicMeasure.from_map(X2, {"x1": 2, "x2": 5})
    phi = integral_functional(mu)
    one_x1 = ScalarFunction.indicator(X2, ["x1"])
    assert extract_scalar(phi(cone_translates(one_x1, R2)), R2) == 2
    zero = ScalarFunction.constant(X2, 0)
    assert extract_scalar(phi(cone_translates(zero, R2)), R2) == 0


def test_reconstruct_measure_exact():
    sp = space("a", "b", "c")
    mu = AtomicMeasure.from_map(sp, {"a": 1, "b": 2, "c": 3})
    rec = reconstruct_measure(integral_functional(mu), sp, R2)
    assert rec.ok and rec.measure == mu
    mu0 = AtomicMeasure.from_map(sp, {"a": 1})
    rec0 = reconstruct_measure(integral_functional(mu0), sp, R2)
    assert rec0.ok and rec0.measure == mu0
    single = space("only")
    mu5 = AtomicMeasure.from_map(single, {"only": 5})
    rec5 = reconstruct_measure(integral_functional(mu5), single, R2)
    assert rec5.ok and rec5.measure.weights == (5,)


def test_reconstruct_flags_infinite_atom():
    def evaluator(F):
        # claim non-integrability whenever the first atom's value moves
        if not F.value("x1").set_equal(cone_upper_set(R2)):
            return UpperSet.empty(R2)
        return aumann_integral(F, MU).value

    rec = reconstruct_measure(SetFunctional("spiky", evaluator), X2, R2)
    assert not rec.ok
    assert rec.weights[0] == "infinite"


def test_reconstruct_rejects_non_additive():
    def evaluator(F):
        # a superadditive corruption: squares the singleton masses
        value = aumann_integral(F, MU).value
        k = extract_scalar(value, R2)
        if isinstance(k, Fraction) and k > 1:
            return point_plus_cone(R2, tuple(k * k * x for x in R2.interior_point))
        return value

    rec = reconstruct_measure(SetFunctional("squared", evaluator), X2, R2)
    assert not rec.ok and rec.additivity_failures


def test_verify_representation_same_measure():
    phi = integral_functional(MU)
    report = verify_representation(phi, MU, X2, R2, seed=4)
    assert report.passed, report.describe()


def test_verify_representation_detects_corruption():
    corrupted = AtomicMeasure.from_map(X2, {"x1": 3, "x2": 1})  # +1 on one atom
    phi = integral_functional(MU)
    report = verify_representation(phi, corrupted, X2, R2, seed=4)
    assert not report.passed
    assert any("point-plus-cone" in f or "constant" not in f for f in report.failures)


def test_decompose_nonneg_examples():
    f = VectorFunction(space("a"), ((-1, 2),))
    xi, g = decompose_nonneg(f, R2)
    assert xi.values == (2,)
    assert g.values == ((3, 0),)
    f2 = VectorFunction(space("a"), ((-2, -3),))
    xi2, g2 = decompose_nonneg(f2, R2)
    assert xi2.values == (0,) and g2.values == ((2, 3),)
    f3 = VectorFunction(space("a"), (R2.interior_point,))
    xi3, g3 = decompose_nonneg(f3, R2)
    assert xi3.values == (1,) and g3.values == ((0, 0),)


def test_decompose_nonneg_minimality_random():
    import random

    rng = random.Random(3)
    wedge = Cone(2, ((1, 0), (1, 1)), (2, 1))
    for cone in (R2, wedge):
        c = cone.interior_point
        for _ in range(25):
            f = VectorFunction(
                space("a"),
                ((Fraction(rng.randint(-8, 8), 2), Fraction(rng.randint(-8, 8), 2)),),
            )
            xi, g = decompose_nonneg(f, cone)
            x = xi.values[0]
            assert x >= 0 and cone.contains(g.values[0])
            recomposed = tuple(x * ci - gi for ci, gi in zip(c, g.values[0]))
            assert recomposed == f.values[0]
            if x > 0:
                for delta in (Fraction(1, 1000), x / 2, x):
                    smaller = x - delta
                    candidate = tuple(
                        smaller * ci - fi for ci, fi in zip(c, f.values[0])
                    )
                    assert not cone.contains(candidate)


def test_mutants_fail_exactly_their_axiom(samples):
    catalog = mutant_catalog(samples, MU)
    assert set(catalog) == set(MUTANT_NAMES)
    targets = {
        "additivity-shift": "A",
        "homogeneity-translate": "P",
        "continuity-jump": "C",
        "nullity-pad": "N",
        "indicator-deform": "I",
        "interchange-tighten": "S",
    }
    for name, phi in catalog.items():
        report = run_axiom_checks(phi, samples)
        statuses = {r.axiom: r.status for r in report.results}
        expected_fail = targets[name]
        assert statuses[expected_fail] == "fail", f"{name}: {report.describe()}"
        for axiom, status in statuses.items():
            if axiom != expected_fail:
                assert status == "pass", f"{name} leaked into ({axiom}): {report.describe()}"


def test_mutant_catalog_requires_pointed_cone(samples):
    halfplane = Cone(2, ((1, 1), (1, -1), (-1, 1)), (1, 1))
    sp = space("x1", "x2")
    mu = AtomicMeasure.from_map(sp, {"x1": 1, "x2": 1})
    flat_samples = SampleSet(sp, halfplane, seed=1, count=4)
    with pytest.raises(ValidationError):
        mutant_catalog(flat_samples, mu)


def test_report_renders_deterministically(samples):
    phi = integral_functional(MU)
    a = run_axiom_checks(phi, samples).describe()
    b = run_axiom_checks(integral_functional(MU), samples).describe()
    assert a == b
    assert "overall: PASS" in a


def test_homogeneity_worked_instance():
    # lambda = 3 on the constant c+C function with total mass 2: both sides 6c+C
    mu2 = AtomicMeasure.from_map(X2, {"x1": 1, "x2": 1})
    phi = integral_functional(mu2)
    from uppersets.measure_space import constant_function

    F = constant_function(X2, point_plus_cone(R2, R2.interior_point))
    lhs = phi(F.scale(3))
    rhs = phi(F).scale(3)
    six_c = point_plus_cone(R2, tuple(6 * x for x in R2.interior_point))
    assert lhs.set_equal(rhs) and lhs.set_equal(six_c)


def test_run_axiom_checks_skips_parametric_without_measure(samples):
    # a functional that defeats measure extraction: nonconstant cone
    # translates map to the full space, so singleton indicators classify as
    # not_of_form and no candidate measure exists
    from uppersets.axioms import is_nonconstant_cone_translate

    def evaluator(F):
        if is_nonconstant_cone_translate(F):
            return UpperSet.full(R2)
        return aumann_integral(F, MU).value

    report = run_axiom_checks(SetFunctional("weird", evaluator), samples)
    assert report.result("I").status == "fail"
    c_result = report.result("C")
    assert c_result.skipped >= 1 or c_result.status == "fail"
