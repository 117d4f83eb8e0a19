import random
from fractions import Fraction

import pytest

from strictsmooth.errors import StructuralError
from strictsmooth.poly import (
    BlockOrder,
    GREVLEX,
    LEX,
    Monomial,
    Polynomial,
)
from strictsmooth.scalars import QQ, PrimeField


def variables(nvars, field=QQ):
    return [Polynomial.variable(i, nvars, field) for i in range(nvars)]


def random_poly(rng, nvars, max_degree=3, max_terms=5, field=QQ):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        terms[Monomial(exps)] = field.from_int(rng.randint(-4, 4))
    return Polynomial(nvars, field, terms)


# ----- arithmetic -----------------------------------------------------------


def test_difference_of_squares():
    x, y = variables(2)
    assert (x + y) * (x - y) == x**2 - y**2


def test_additive_inverse_is_empty_map():
    rng = random.Random(7)
    p = random_poly(rng, 3)
    z = p + (-p)
    assert z.is_zero and not dict(z.terms())


def test_multiplicative_identity():
    x1, x2, y1, y2 = variables(4)
    p = x1 * y1 + x2 * y2
    one = Polynomial.constant(1, 4)
    assert p * one == p


def test_mismatched_variable_counts_rejected():
    p = Polynomial.variable(0, 2)
    q = Polynomial.variable(0, 3)
    with pytest.raises(StructuralError):
        p + q
    with pytest.raises(StructuralError):
        p * q


def test_mixed_fields_rejected():
    p = Polynomial.variable(0, 2, QQ)
    q = Polynomial.variable(0, 2, PrimeField(5))
    with pytest.raises(StructuralError):
        p + q


def test_ring_axioms_on_random_triples():
    rng = random.Random(20240901)
    for _ in range(40):
        n = rng.choice((1, 2, 3))
        p, q, r = (random_poly(rng, n) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + q == q + p
        assert p * q == q * p


def test_no_zero_coefficients_stored():
    rng = random.Random(5)
    for _ in range(30):
        p = random_poly(rng, 2) * random_poly(rng, 2) + random_poly(rng, 2)
        assert all(c for _, c in p.terms())
        assert all(len(m.exps) == 2 for m in p.monomials())


# ----- monomial invariants --------------------------------------------------


def test_monomial_cached_degree():
    m = Monomial((2, 0, 3))
    assert m.degree == 5 == sum(m.exps)
    with pytest.raises(StructuralError):
        Monomial((1, -1))


def test_orders_are_total_and_respect_multiplication():
    rng = random.Random(99)
    for order in (GREVLEX, LEX, BlockOrder(2)):
        for _ in range(60):
            a = Monomial(tuple(rng.randint(0, 3) for _ in range(4)))
            b = Monomial(tuple(rng.randint(0, 3) for _ in range(4)))
            c = Monomial(tuple(rng.randint(0, 3) for _ in range(4)))
            ka, kb = order.key(a), order.key(b)
            if a.exps == b.exps:
                assert ka == kb
            else:
                assert ka != kb
            if ka < kb:
                assert order.key(a.mul(c)) < order.key(b.mul(c))
            unit = Monomial.unit(4)
            if a.exps != unit.exps:
                assert order.key(a) > order.key(unit)


def test_grevlex_vs_lex_disagree_where_expected():
    # x1*x3 vs x2^2: grevlex prefers the smaller exponent in the last variable
    a = Monomial((1, 0, 1))
    b = Monomial((0, 2, 0))
    assert GREVLEX.key(a) < GREVLEX.key(b)
    assert LEX.key(a) > LEX.key(b)
    c = Monomial((0, 1, 1))
    d = Monomial((1, 0, 0))
    assert LEX.key(d) > LEX.key(c)          # lex: any x1 beats none
    assert GREVLEX.key(c) > GREVLEX.key(d)  # grevlex: higher degree wins


# ----- calculus -------------------------------------------------------------


def test_partial_of_pairing_quadric():
    x1, x2, y1, y2 = variables(4)
    p = x1 * y1 + x2 * y2
    assert p.partial(0) == y1
    assert p.partial(2) == x1


def test_partial_of_constant_is_zero():
    c = Polynomial.constant(5, 3)
    assert c.partial(1).is_zero


def test_partial_in_characteristic_two():
    F2 = PrimeField(2)
    x = Polynomial.variable(0, 1, F2)
    assert (x**2).partial(0).is_zero


def test_leibniz_rule_on_random_pairs():
    rng = random.Random(31337)
    for _ in range(30):
        n = rng.choice((2, 3))
        p, q = random_poly(rng, n), random_poly(rng, n)
        i = rng.randrange(n)
        lhs = (p * q).partial(i)
        rhs = p.partial(i) * q + p * q.partial(i)
        assert lhs == rhs


# ----- substitution ---------------------------------------------------------


def test_substitute_hand_expansion():
    x1, y1 = variables(2)
    t = Polynomial.variable(0, 2)
    u = Polynomial.variable(1, 2)
    image = (x1 * y1).substitute({0: t, 1: t * u})
    assert image == t * t * u


def test_identity_substitution():
    rng = random.Random(11)
    p = random_poly(rng, 3)
    assert p.substitute({}) == p
    assert p.substitute({i: Polynomial.variable(i, 3) for i in range(3)}) == p


def test_substitute_kill_variable():
    x, y = variables(2)
    p = x + y
    assert p.substitute({1: Polynomial.zero(2)}) == x


def test_extended_ring():
    x = Polynomial.variable(0, 1)
    lifted = x.extended(3)
    assert lifted.nvars == 3 and lifted == Polynomial.variable(0, 3)


# ----- graded parts ---------------------------------------------------------


def test_graded_part_term_inspection():
    x, y = variables(2)
    p = x * y + y**3
    assert p.graded_part((1,), 1) == x * y
    assert p.graded_part((1,), 3) == y**3


def test_graded_part_full_variable_set():
    x1, x2, y1, y2 = variables(4)
    p = x1 * y1 + x2 * y2
    assert p.graded_part(range(4), 2) == p


def test_graded_part_above_degree_is_zero():
    x, y = variables(2)
    p = x**2 + y
    assert p.graded_part((0, 1), 7).is_zero


def test_graded_parts_sum_back():
    rng = random.Random(R := 404)
    for _ in range(25):
        n = rng.choice((2, 3, 4))
        p = random_poly(rng, n)
        subset = tuple(sorted(rng.sample(range(n), rng.randint(1, n))))
        total = Polynomial.zero(n)
        for k in range(0, p.total_degree() + 2 if not p.is_zero else 1):
            total = total + p.graded_part(subset, k)
        assert total == p


# ----- rendering ------------------------------------------------------------


def test_render_canonical_examples():
    x1, x2, y1, y2 = variables(4)
    p = x1 * y1 + x2 * y2
    assert p.render(("x1", "x2", "y1", "y2")) == "x1*y1 + x2*y2"
    x, y = variables(2)
    assert (x**2 - y**2).render(("x", "y")) == "x^2 - y^2"
    assert Polynomial.zero(2).render(("x", "y")) == "0"
    half = Polynomial.constant(Fraction(1, 2), 2)
    assert (half * x).render(("x", "y")) == "1/2*x"
    assert (-x + Polynomial.constant(1, 2)).render(("x", "y")) == "-x + 1"


def test_render_prime_field_coefficients():
    F7 = PrimeField(7)
    x = Polynomial.variable(0, 1, F7)
    p = x * 10 + 6  # 3*x + 6 mod 7
    assert p.render(("x",)) == "3*x + 6"
