import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra import (GeneratorTable, GradedSeries, add, body, check_law_case, degree_of, evaluate,
                     invert, mul, scale, substitute, truncate, verify_algebra_laws)
from errors import (ConfigurationError, DegreeMismatch, InvalidTruncation, TableMismatch,
                    ZeroBody)
from grading import DegreeVector, sign
from sampling import SamplingConfig, random_images, random_series


def D(*bits):
    return DegreeVector(bits)


# x central, a and b odd of degree (1)
N1 = GeneratorTable(1, [("x", D(0)), ("a", D(1)), ("b", D(1))], label="n1")
# x central, eta even non-central, xi and zeta odd
N2 = GeneratorTable(2, [("x", D(0, 0)), ("eta", D(1, 1)), ("xi", D(0, 1)), ("zeta", D(1, 0))],
                    label="n2")
CFG = SamplingConfig()


def g(table, name, trunc=3):
    return GradedSeries.generator(table, trunc, name)


def c(table, value, trunc=3):
    return GradedSeries.constant(table, trunc, value)


# ── table ─────────────────────────────────────────────────────────────────────

def test_table_rejects_duplicate_names():
    with pytest.raises(ConfigurationError):
        GeneratorTable(1, [("x", D(0)), ("x", D(1))])


def test_table_classifies_generators():
    assert [x.name for x in N2.central] == ["x"]
    assert [x.name for x in N2.graded] == ["eta", "xi", "zeta"]
    assert N2.odd_positions == frozenset({1, 2})


def test_table_without_central_generators():
    t = GeneratorTable(1, [("z1", D(1)), ("z2", D(1))], label="odd")
    f = mul(c(t, 2) + g(t, "z1"), g(t, "z2"))
    assert body(f) == 0
    assert degree_of(f) == D(1)


# ── add / mul ─────────────────────────────────────────────────────────────────

def test_add_examples():
    x, xi = g(N2, "x"), g(N2, "xi")
    zero = GradedSeries.zero(N2, 3)
    assert add(x, zero) == x
    assert add(add(x, xi), -xi) == x
    inv_x = 1 / N2.central_symbol("x")
    assert add(scale(xi, inv_x), scale(xi, inv_x)) == scale(xi, 2 * inv_x)


def test_add_rejects_other_table_or_trunc():
    with pytest.raises(TableMismatch):
        add(g(N1, "x"), g(N2, "x"))
    with pytest.raises(TableMismatch):
        add(g(N1, "x", 2), g(N1, "x", 3))


def test_odd_transposition_sign():
    a, b = g(N1, "a"), g(N1, "b")
    assert mul(b, a) == -mul(a, b)
    assert mul(b, a).terms == {(1, 1): -N1.field.one}


def test_odd_square_vanishes():
    a = g(N1, "a")
    assert mul(a, a).is_zero


def test_even_difference_of_squares():
    x, eta = g(N2, "x"), g(N2, "eta")
    assert mul(x + eta, x - eta) == mul(x, x) - mul(eta, eta)


def test_mixed_degrees_commute_by_sign():
    eta, xi, zeta = g(N2, "eta"), g(N2, "xi"), g(N2, "zeta")
    # ⟨(1,1),(0,1)⟩ = 1, ⟨(0,1),(1,0)⟩ = 0
    assert mul(xi, eta) == -mul(eta, xi)
    assert mul(zeta, xi) == mul(xi, zeta)


def test_mul_truncates():
    eta = g(N2, "eta", 2)
    assert mul(mul(eta, eta), eta).is_zero


# ── body / invert ─────────────────────────────────────────────────────────────

def test_body_examples():
    x, a, b = g(N1, "x"), g(N1, "a"), g(N1, "b")
    assert body(x + mul(a, b)) == N1.central_symbol("x")
    assert body(a) == 0
    eta = g(N2, "eta")
    assert body(c(N2, Fraction(3, 2)) + mul(eta, eta)) == Fraction(3, 2)


def test_invert_geometric_series():
    eta = g(N2, "eta")
    one = c(N2, 1)
    expected = one + eta + mul(eta, eta) + mul(mul(eta, eta), eta)
    assert invert(one - eta) == expected


def test_invert_central():
    x = N1.central_symbol("x")
    assert invert(g(N1, "x")) == c(N1, 1 / x)


def test_invert_nilpotent_tail():
    x = N1.central_symbol("x")
    ab = mul(g(N1, "a"), g(N1, "b"))
    f = g(N1, "x") + ab
    assert invert(f) == c(N1, 1 / x) - scale(ab, 1 / x ** 2)
    assert mul(f, invert(f)) == c(N1, 1)


def test_invert_zero_body():
    with pytest.raises(ZeroBody):
        invert(g(N1, "a"))


# ── substitute ────────────────────────────────────────────────────────────────

def identity_images(table, trunc=3):
    return {name: g(table, name, trunc) for name in table.names}


def test_substitute_identity():
    f = mul(g(N2, "x") + g(N2, "eta"), invert(g(N2, "x") - g(N2, "eta")))
    assert substitute(f, identity_images(N2)) == f


def test_substitute_reciprocal():
    x = N1.central_symbol("x")
    images = identity_images(N1)
    images["x"] = c(N1, 1 / x)
    assert substitute(c(N1, 1 / x), images) == g(N1, "x")


def test_substitute_linear():
    images = identity_images(N2)
    eta2 = mul(g(N2, "eta"), g(N2, "eta"))
    images["x"] = g(N2, "x") + eta2
    f = g(N2, "x") + g(N2, "xi")
    assert substitute(f, images) == g(N2, "x") + eta2 + g(N2, "xi")


def test_substitute_checks_degrees():
    images = identity_images(N2)
    images["xi"] = g(N2, "zeta")
    with pytest.raises(DegreeMismatch):
        substitute(g(N2, "xi"), images)


def test_substitute_zero_body_denominator():
    x = N1.central_symbol("x")
    images = identity_images(N1)
    images["x"] = mul(g(N1, "a"), g(N1, "b"))
    with pytest.raises(ZeroBody):
        substitute(c(N1, 1 / x), images)


def test_substitute_missing_image():
    images = identity_images(N1)
    del images["b"]
    with pytest.raises(ConfigurationError):
        substitute(g(N1, "a"), images)


# ── truncate / degree_of / evaluate ───────────────────────────────────────────

def test_truncate_examples():
    eta = g(N2, "eta")
    one = c(N2, 1)
    assert truncate(one + eta + mul(eta, eta), 1) == truncate(one + eta, 1)
    f = one + eta
    assert truncate(f, 3) == f
    assert truncate(mul(g(N2, "xi"), g(N2, "zeta")), 1).is_zero
    with pytest.raises(InvalidTruncation):
        truncate(f, 4)


def test_degree_of_examples():
    xi = g(N2, "xi")
    assert degree_of(xi) == D(0, 1)
    assert degree_of(mul(g(N2, "x"), xi)) == D(0, 1)
    assert degree_of(g(N2, "x") + xi) is None
    assert degree_of(GradedSeries.zero(N2, 3)) == D(0, 0)


def test_evaluate_body():
    x = N1.central_symbol("x")
    f = c(N1, (x ** 2 + 1) / x) + mul(g(N1, "a"), g(N1, "b"))
    assert evaluate(f, {"x": Fraction(2)}) == Fraction(5, 2)
    with pytest.raises(ZeroBody):
        evaluate(f, {"x": 0})
    with pytest.raises(ConfigurationError):
        evaluate(f, {})


def test_evaluate_several_central_generators():
    t = GeneratorTable(1, [("y1", D(0)), ("y2", D(0)), ("a", D(1))], label="y")
    y1, y2 = t.central_symbol("y1"), t.central_symbol("y2")
    f = c(t, (y1 + 2 * y2) / y1) + g(t, "a")
    assert evaluate(f, {"y1": 2, "y2": "1/3"}) == Fraction(4, 3)
    assert evaluate(f, {"y1": -1, "y2": 0}) == 1


def test_evaluate_without_central_generators():
    t = GeneratorTable(1, [("z1", D(1)), ("z2", D(1))], label="odd")
    assert evaluate(c(t, Fraction(3, 2)) + g(t, "z1"), {}) == Fraction(3, 2)
    assert evaluate(g(t, "z1"), {}) == 0


def test_series_json_schema():
    x = N1.central_symbol("x")
    f = scale(mul(g(N1, "a"), g(N1, "b")), 1 / x)
    data = f.to_json()
    assert data == {"trunc": 3, "terms": [{
        "mono": [["a", 1], ["b", 1]],
        "coeff": {"num": [[[], "1"]], "den": [[[["x", 1]], "1"]]},
    }]}
    assert GradedSeries.from_json(data, N1) == f


# ── ring laws ─────────────────────────────────────────────────────────────────

def rand_series(rng, table=N2, homogeneous=True):
    if homogeneous:
        return random_series(rng, table, 3, table.chain[rng.randrange(4)], CFG)
    total = GradedSeries.zero(table, 3)
    for d in table.chain:
        total = total + random_series(rng, table, 3, d, CFG)
    return total


seeds = st.integers(0, 2 ** 32)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_associativity(seed):
    rng = random.Random(seed)
    f, h, k = (rand_series(rng, homogeneous=False) for _ in range(3))
    assert mul(mul(f, h), k) == mul(f, mul(h, k))


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_graded_commutativity(seed):
    rng = random.Random(seed)
    f, h = rand_series(rng), rand_series(rng)
    assert mul(f, h) == scale(mul(h, f), sign(degree_of(f), degree_of(h)))


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_body_is_a_homomorphism(seed):
    rng = random.Random(seed)
    f, h = rand_series(rng, homogeneous=False), rand_series(rng, homogeneous=False)
    assert body(mul(f, h)) == body(f) * body(h)
    assert body(add(f, h)) == body(f) + body(h)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_inverse(seed):
    rng = random.Random(seed)
    f = random_series(rng, N2, 3, N2.chain.zero, CFG)
    if body(f):
        assert mul(f, invert(f)) == c(N2, 1)
        assert mul(invert(f), f) == c(N2, 1)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_substitution_is_a_homomorphism(seed):
    rng = random.Random(seed)
    images = random_images(rng, N2, N2, 3, CFG)
    f, h = rand_series(rng, homogeneous=False), rand_series(rng, homogeneous=False)
    assert substitute(mul(f, h), images) == mul(substitute(f, images), substitute(h, images))
    assert substitute(add(f, h), images) == add(substitute(f, images), substitute(h, images))


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 3))
def test_truncation_is_a_quotient(seed, order):
    rng = random.Random(seed)
    f, h = rand_series(rng, homogeneous=False), rand_series(rng, homogeneous=False)
    assert truncate(mul(f, h), order) == truncate(mul(truncate(f, order), truncate(h, order)), order)


def test_algebra_law_sweep_small():
    report = verify_algebra_laws(checks=10, seed=7, n=2, central=1, graded=1, trunc=3,
                                 sampling=CFG)
    assert report.passed, report.summary()
    assert {case.key[0] for case in report.cases} >= {
        "associativity", "graded_commutativity", "body_homomorphism", "inverse"}


def test_inverse_law_reports_checks_run():
    result = check_law_case("inverse", seed=1, checks=20, n=1, central=1, graded=2, trunc=2,
                            sampling=CFG)
    assert result.passed and not result.skipped
    assert 0 < result.detail["checks"] <= result.detail["drawn"] == 20
