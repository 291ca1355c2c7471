"""Nilpotent chern symbols and the series bridges."""

import random
from fractions import Fraction

import pytest

from fglcalc import (
    ADDITIVE,
    FREE,
    MULTIPLICATIVE,
    BackendMismatchError,
    ChernPolynomial,
    ConstantTermError,
    FormalGroupLaw,
    GradedPolynomial,
    OrderError,
    TruncatedSeries,
    ValidationError,
    a_gen,
    chern_substitute,
    evaluate_at_chern,
    fgl_tensor_identity_check,
    log_backend,
)


def _sym(i, nvars=2, bound=3, backend=FREE):
    return ChernPolynomial.symbol(i, nvars, bound, backend)


def _random_chern(rng, nvars, bound, backend=FREE):
    terms = {}
    for _ in range(rng.randrange(1, 6)):
        exps = tuple(rng.randrange(bound + 1) for _ in range(nvars))
        if sum(exps) > bound:
            continue
        coeff = Fraction(rng.randrange(-3, 4))
        poly = GradedPolynomial.constant(coeff, backend)
        prev = terms.get(exps)
        terms[exps] = poly if prev is None else prev + poly
    return ChernPolynomial(nvars, bound, backend, terms)


# -- truncation semantics ---------------------------------------------------

def test_symbols_are_nilpotent_at_the_bound():
    c1 = _sym(1, bound=2)
    assert not (c1 * c1).is_zero()
    assert (c1 * c1 * c1).is_zero()


def test_symbol_at_bound_zero_is_zero():
    assert _sym(1, bound=0).is_zero()


def test_constructor_drops_over_bound_terms():
    cp = ChernPolynomial(2, 1, FREE, {(1, 1): 1, (1, 0): 2})
    assert cp.coefficient((1, 0)) == 2
    assert cp.coefficient((1, 1)).is_zero()


def test_constructor_validation():
    with pytest.raises(ValidationError):
        ChernPolynomial(2, 2, FREE, {(1,): 1})
    with pytest.raises(ValidationError):
        ChernPolynomial(2, -1, FREE)
    with pytest.raises(BackendMismatchError):
        ChernPolynomial(1, 2, FREE, {(1,): GradedPolynomial.one(ADDITIVE)})


def test_arithmetic_laws_randomized():
    rng = random.Random(3)
    for _ in range(40):
        a = _random_chern(rng, 2, 3)
        b = _random_chern(rng, 2, 3)
        c = _random_chern(rng, 2, 3)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()


def test_mixed_shapes_rejected():
    with pytest.raises(ValidationError):
        _sym(1, nvars=2, bound=3) + _sym(1, nvars=3, bound=3)
    with pytest.raises(ValidationError):
        _sym(1, bound=3) + _sym(1, bound=2)
    with pytest.raises(BackendMismatchError):
        _sym(1, backend=FREE) + _sym(1, backend=ADDITIVE)


# -- evaluation of series ---------------------------------------------------

def test_evaluate_law_at_bound_two_frozen():
    law = FormalGroupLaw(FREE, order=2)
    cp = evaluate_at_chern(law.series, 2)
    a11 = GradedPolynomial.generator(a_gen(1, 1), FREE)
    assert cp.coefficient((1, 0)) == 1
    assert cp.coefficient((0, 1)) == 1
    assert cp.coefficient((1, 1)) == a11
    assert cp.coefficient((2, 0)).is_zero()


def test_evaluate_requires_enough_order():
    law = FormalGroupLaw(FREE, order=2)
    with pytest.raises(OrderError):
        evaluate_at_chern(law.series, 3)
    evaluate_at_chern(law.series, 2)


def test_evaluate_is_ring_map():
    rng = random.Random(17)
    variables = ("u1", "u2")
    for _ in range(25):
        def rand_series():
            terms = {}
            for _ in range(rng.randrange(1, 6)):
                exps = (rng.randrange(4), rng.randrange(4))
                if sum(exps) <= 3:
                    terms[exps] = rng.randrange(-3, 4)
            return TruncatedSeries(variables, 3, FREE, terms)

        s, t = rand_series(), rand_series()
        for bound in (0, 1, 2, 3):
            assert evaluate_at_chern(s + t, bound) == evaluate_at_chern(s, bound) + evaluate_at_chern(t, bound)
            assert evaluate_at_chern(s * t, bound) == evaluate_at_chern(s, bound) * evaluate_at_chern(t, bound)


def test_chern_substitute_matches_direct_evaluation():
    # substituting the plain symbols must agree with re-reading variables
    for backend in (FREE, ADDITIVE, MULTIPLICATIVE, log_backend(4)):
        law = FormalGroupLaw(backend, order=4)
        for bound in (0, 1, 2, 3, 4):
            c1 = ChernPolynomial.symbol(1, 2, bound, backend)
            c2 = ChernPolynomial.symbol(2, 2, bound, backend)
            direct = evaluate_at_chern(law.series, bound)
            assert chern_substitute(law.series, [c1, c2]) == direct


def test_chern_substitute_composite_values():
    # F(c1*c2, c2^2) by hand at bound 3 on the free backend
    law = FormalGroupLaw(FREE, order=3)
    v1 = _sym(1, bound=3) * _sym(2, bound=3)
    v2 = _sym(2, bound=3) * _sym(2, bound=3)
    result = chern_substitute(law.series, [v1, v2])
    expected = v1 + v2 + (v1 * v2).scale(GradedPolynomial.generator(a_gen(1, 1), FREE))
    assert result == expected


def test_chern_substitute_rejects_constant_term():
    law = FormalGroupLaw(FREE, order=3)
    good = _sym(1, bound=3)
    bad = ChernPolynomial.one(2, 3, FREE)
    with pytest.raises(ConstantTermError):
        chern_substitute(law.series, [good, bad])


def test_chern_substitute_rejects_backend_mismatch():
    law = FormalGroupLaw(FREE, order=3)
    with pytest.raises(BackendMismatchError):
        chern_substitute(law.series, [_sym(1, backend=ADDITIVE), _sym(2, backend=ADDITIVE)])


def test_chern_substitute_needs_value_per_variable():
    law = FormalGroupLaw(FREE, order=3)
    with pytest.raises(ValidationError):
        chern_substitute(law.series, [_sym(1)])


# -- the tensor identity ----------------------------------------------------

def test_tensor_identity_all_backends_and_bounds():
    for backend in (FREE, ADDITIVE, MULTIPLICATIVE):
        for bound in range(0, 5):
            assert fgl_tensor_identity_check(bound, backend)
    lb = log_backend(5)
    for bound in range(0, 6):
        assert fgl_tensor_identity_check(bound, lb, law=FormalGroupLaw(lb, max(bound, 1)))


def test_tensor_identity_rejects_wrong_law():
    with pytest.raises(BackendMismatchError):
        fgl_tensor_identity_check(2, FREE, law=FormalGroupLaw(ADDITIVE, 2))


# -- serialization ----------------------------------------------------------

def test_json_round_trip_randomized():
    rng = random.Random(29)
    for _ in range(30):
        cp = _random_chern(rng, 3, 3)
        assert ChernPolynomial.from_json(cp.to_json(), FREE, nvars=3) == cp


def test_json_shape_frozen():
    law = FormalGroupLaw(FREE, order=2)
    data = evaluate_at_chern(law.series, 2).to_json()
    assert data["dim_bound"] == 2
    assert data["terms"][0] == {
        "c_exponents": [1, 0],
        "coeff": [{"coeff": "1", "monomial": {}}],
    }


def test_json_infers_and_checks_nvars():
    cp = _sym(1, nvars=2, bound=2)
    parsed = ChernPolynomial.from_json(cp.to_json(), FREE)
    assert parsed == cp
    with pytest.raises(ValidationError):
        ChernPolynomial.from_json({"dim_bound": 2, "terms": []}, FREE)
    assert ChernPolynomial.from_json({"dim_bound": 2, "terms": []}, FREE, nvars=2).is_zero()


def test_json_rejects_garbage():
    with pytest.raises(ValidationError):
        ChernPolynomial.from_json({"terms": []}, FREE, nvars=1)
    with pytest.raises(ValidationError):
        ChernPolynomial.from_json(
            {"dim_bound": 1, "terms": [{"c_exponents": [-1], "coeff": []}]}, FREE
        )
