from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rank0quot.arith import (
    GF, BinaryForm, UniPoly, binary_discriminant, discriminant, factorint, integer_roots, is_prime,
    is_squarefree, legendre, poly_gcd, primes_up_to, rat, resultant, sqrt_mod_p, sylvester_resultant,
)
from rank0quot.errors import ZeroPolynomial

small = st.integers(-20, 20)
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=6)


def poly(cs):
    return UniPoly([Fraction(c) for c in cs])


def test_resultant_examples():
    assert resultant(poly([-2, 1]), poly([-3, 1])) == -1
    assert resultant(poly([1, 0, 1]), poly([1, 0, 1])) == 0
    assert discriminant(poly([0, -1, 0, 1])) == 4


def test_resultant_of_linear_factors_matches_product_formula():
    # Res(prod (x - a_i), g) = prod g(a_i)
    f = poly([-2, 1]) * poly([3, 1]) * poly([-5, 1])
    g = poly([7, -1, 0, 2])
    assert resultant(f, g) == g(2) * g(-3) * g(5)


@given(st.lists(rationals, min_size=2, max_size=6), st.lists(rationals, min_size=2, max_size=6))
def test_subresultant_agrees_with_sylvester(a, b):
    f, g = UniPoly(a), UniPoly(b)
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sylvester_resultant(list(f.coeffs), list(g.coeffs), f.degree, g.degree)


def test_gcd_and_squarefree():
    assert poly_gcd(poly([0, 1, 0, 1]), poly([1, 0, 1])) == poly([1, 0, 1])
    assert is_squarefree(poly([1, -4, 2, 0, 1]))
    assert not is_squarefree(poly([1, -2, 1]))
    with pytest.raises(ZeroPolynomial):
        is_squarefree(UniPoly())


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/4") == Fraction(3, 4)


def test_binary_discriminant_detects_repeated_factor():
    G = BinaryForm(4, [0, 0, 1, -2, 1])  # x^2 z^2 ... has the repeated factor z^2
    assert binary_discriminant(G) == 0
    assert binary_discriminant(BinaryForm(4, [1, 0, 0, 0, 1])) != 0


def test_primes_and_factoring():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [n for n in range(100) if is_prime(n)] == primes_up_to(99)
    assert is_prime(10 ** 12 + 39) and not is_prime((10 ** 6 + 3) * (10 ** 6 + 33))


@given(st.integers(1, 10 ** 14))
def test_factorint_reconstructs(n):
    fac = factorint(n)
    prod = 1
    for p, e in fac.items():
        assert is_prime(p)
        prod *= p ** e
    assert prod == n


@given(st.lists(small, min_size=2, max_size=5))
def test_integer_roots_match_brute_force(cs):
    if all(c == 0 for c in cs):
        return
    f = UniPoly(cs)
    if f.degree < 1:
        return
    roots = integer_roots(cs)
    # every integer root divides the lowest nonzero coefficient, so this window is exhaustive
    bound = max(abs(c) for c in cs) + 1
    assert roots == [x for x in range(-bound, bound + 1) if f(x) == 0]


@given(st.sampled_from([3, 5, 7, 11, 13, 17, 101, 1009]), st.integers(0, 10 ** 6))
def test_sqrt_mod_p(p, a):
    r = sqrt_mod_p(a, p)
    if legendre(a, p) == -1:
        assert r is None
    else:
        assert r * r % p == a % p


def test_gf_field_arithmetic():
    a, b = GF(3, 7), GF(5, 7)
    assert a + b == 1 and a * b == 1 and a / b == GF(3 * 3, 7)
    assert a - Fraction(1, 2) == GF(3 - 4, 7)
    assert a ** -1 == b
