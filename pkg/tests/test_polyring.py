import random

import pytest

from clusterkit.polyring import (
    ArenaMismatch,
    NotDivisible,
    Poly,
    exact_div,
    min_exponent_vector,
    parse_poly,
    poly_arith,
    poly_from_json,
    poly_to_json,
    substitute,
    to_text,
)

XY = ("x1", "x2", "y1", "y2")
Y = ("y1", "y2")


def brute_multiply(a, b):
    """Independent term-by-term multiplier used as the oracle for products."""
    out = {}
    for e1, c1 in a.iter_terms():
        for e2, c2 in b.iter_terms():
            key = tuple(x + y for x, y in zip(e1, e2))
            out[key] = out.get(key, 0) + c1 * c2
    return Poly(a.arena, out)


def random_poly(rng, arena, max_terms=5, bound=4, laurent=False):
    lo = -2 if laurent else 0
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(lo, 3) for _ in arena)
        terms[exps] = rng.randint(-bound, bound)
    return Poly(arena, terms)


def test_product_hand_expansion():
    # (1+y1)(1+y2+y1y2) expanded by hand, cross-checked with the brute oracle
    a = parse_poly(Y, "1 + y1")
    b = parse_poly(Y, "1 + y2 + y1*y2")
    expected = parse_poly(Y, "1 + y1 + y2 + 2*y1*y2 + y1^2*y2")
    assert a * b == expected
    assert brute_multiply(a, b) == expected


def test_add_zero_identity():
    p = parse_poly(Y, "3*y1 - y2^2")
    assert p + Poly.zero(Y) == p
    assert poly_arith(p, Poly.zero(Y), "add") == p


def test_binomial_square_identity():
    # y1 + (1+y2+y1y2)^2 == (1+y1)(1+2y2+y2^2+y1y2^2)
    lhs = parse_poly(Y, "y1") + parse_poly(Y, "1 + y2 + y1*y2") ** 2
    rhs = parse_poly(Y, "1 + y1") * parse_poly(Y, "1 + 2*y2 + y2^2 + y1*y2^2")
    assert lhs == rhs


def test_arena_mismatch_raises():
    with pytest.raises(ArenaMismatch):
        parse_poly(Y, "y1") * parse_poly(("y1",), "y1")


def test_exact_div_constructed_product():
    q = parse_poly(Y, "1 + 2*y2 + y2^2 + y1*y2^2")
    d = parse_poly(Y, "1 + y2")
    assert exact_div(q * d, d) == q


def test_exact_div_cyclotomic():
    a = ("x1",)
    q = exact_div(parse_poly(a, "x1^3 + 1"), parse_poly(a, "x1 + 1"))
    assert q == parse_poly(a, "x1^2 - x1 + 1")
    assert not q.has_nonneg_coeffs()


def test_exact_div_laurent_shift():
    a = ("x1", "x2")
    num = parse_poly(a, "x2 + x1^-1*x2^2")
    den = parse_poly(a, "x1 + x2")
    # num = x1^-1 * x2 * (x1 + x2)
    assert exact_div(num, den) == parse_poly(a, "x1^-1*x2")


def test_exact_div_failure_raises():
    with pytest.raises(NotDivisible):
        exact_div(parse_poly(Y, "1 + y1 + y2"), parse_poly(Y, "1 + y1"))


def test_exact_div_random_products(rng):
    for _ in range(200):
        a = random_poly(rng, Y, laurent=True)
        b = random_poly(rng, Y, laurent=True)
        if a.is_zero() or b.is_zero():
            continue
        assert exact_div(a * b, b) == a


def test_substitute_monomial_images():
    # exchange polynomial 1+y1 at y1 -> y1*x2
    p = parse_poly(Y, "1 + y1")
    image = substitute(p, {"y1": parse_poly(XY, "y1*x2"), "y2": parse_poly(XY, "y2")})
    assert image == parse_poly(XY, "1 + y1*x2")


def test_substitute_identity():
    p = parse_poly(Y, "1 + y2 + 3*y1*y2^2")
    image = substitute(p, {v: Poly.var(Y, v) for v in Y})
    assert image == p


def test_substitute_laurent_monomials():
    # 1 + y2 + y1 y2 at y1 -> y1 x2, y2 -> y2 x1^-1
    p = parse_poly(Y, "1 + y2 + y1*y2")
    image = substitute(
        p, {"y1": parse_poly(XY, "y1*x2"), "y2": parse_poly(XY, "y2*x1^-1")}
    )
    assert image == parse_poly(XY, "1 + y2*x1^-1 + y1*y2*x1^-1*x2")


def test_substitute_missing_variable():
    with pytest.raises(KeyError):
        substitute(parse_poly(Y, "y1 + y2"), {"y1": Poly.var(Y, "y1")})


def test_substitute_respects_products(rng):
    assign = {
        "y1": parse_poly(XY, "x1 + y1"),
        "y2": parse_poly(XY, "x2^2 + 1"),
    }
    for _ in range(50):
        p = random_poly(rng, Y, max_terms=3, bound=3)
        q = random_poly(rng, Y, max_terms=3, bound=3)
        lhs = substitute(p * q, assign)
        rhs = substitute(p, assign) * substitute(q, assign)
        assert lhs == rhs


def test_min_exponent_vector():
    p = parse_poly(XY, "x2^-1 + y2*x1^-1*x2^-1 + y1*y2*x1^-1")
    assert min_exponent_vector(p, range(2)) == (-1, -1)
    assert min_exponent_vector(parse_poly(XY, "x1")) == (1, 0, 0, 0)
    with pytest.raises(ValueError):
        min_exponent_vector(Poly.zero(XY))


def test_min_exponent_g2_variable():
    p = parse_poly(
        XY,
        "x1*x2^-3 + 3*y2*x2^-3 + 3*y2^2*x1^-1*x2^-3 + y2^3*x1^-2*x2^-3"
        " + 3*y1*y2^2*x1^-1 + 2*y1*y2^3*x1^-2 + y1^2*y2^3*x1^-2*x2^3",
    )
    assert min_exponent_vector(p, range(2)) == (-2, -3)


def test_constant_term_and_nonneg():
    p = parse_poly(Y, "1 + y2 + y1*y2")
    assert p.constant_term() == 1
    assert p.has_nonneg_coeffs()
    q = parse_poly(("x1",), "x1^2 - x1 + 1")
    assert not q.has_nonneg_coeffs()
    z = Poly.zero(Y)
    assert z.constant_term() == 0
    assert z.has_nonneg_coeffs()


def test_ring_axioms_random(rng):
    for _ in range(100):
        a = random_poly(rng, Y, laurent=True)
        b = random_poly(rng, Y, laurent=True)
        c = random_poly(rng, Y, laurent=True)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == brute_multiply(a, b)


def test_canonical_serialization_roundtrip(rng):
    for _ in range(50):
        p = random_poly(rng, XY, laurent=True)
        assert poly_from_json(XY, poly_to_json(p)) == p
        assert parse_poly(XY, to_text(p)) == p
    # canonical: no duplicate monomials, no zero coefficients
    p = Poly(Y, {(1, 0): 2, (0, 0): 0})
    assert list(p.iter_terms()) == [((1, 0), 2)]
    assert p == Poly(Y, {(1, 0): 2})


def test_text_form_examples():
    assert to_text(parse_poly(Y, "1+y2+y1*y2")) == "1 + y2 + y1*y2"
    assert to_text(Poly.zero(Y)) == "0"
    assert to_text(parse_poly(("x1",), "x1^-1")) == "x1^-1"


def test_power_negative_unit_monomial():
    m = parse_poly(XY, "x1*x2^2")
    assert m ** -1 == parse_poly(XY, "x1^-1*x2^-2")
    with pytest.raises(NotDivisible):
        parse_poly(Y, "1 + y1") ** -1
