"""Rational and finite-field polynomials: arithmetic, resultants, factoring."""

import random
from fractions import Fraction

import pytest

from torusembed.arith.polyfp import (
    PolyFp,
    factor_mod_p,
    ff_is_square,
    is_irreducible_mod_p,
)
from torusembed.arith.polyq import (
    MAX_IRREDUCIBILITY_DEGREE,
    PolyQ,
    discriminant,
    integerize,
    is_irreducible,
    lagrange_interpolate,
    rational_roots,
    resultant,
    resultant_in_y,
)
from torusembed.arith.sturm import (
    RealRoot,
    isolate_real_roots,
    real_root_count,
    root_bound,
)

P = PolyQ.of


def random_poly(rng: random.Random, degree: int, with_fractions: bool = True) -> PolyQ:
    while True:
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(degree + 1)]
        if with_fractions:
            coeffs = [c / rng.randint(1, 4) for c in coeffs]
        if coeffs[-1] != 0:
            return P(coeffs)


def sylvester_resultant(f: PolyQ, g: PolyQ) -> Fraction:
    """Independent oracle: determinant of the Sylvester matrix by Gaussian
    elimination over Q."""
    m, n = f.degree, g.degree
    if m == 0:
        return f.coeff(0) ** n
    if n == 0:
        return g.coeff(0) ** m
    size = m + n
    rows = []
    fc = list(reversed([f.coeff(i) for i in range(m + 1)]))
    gc = list(reversed([g.coeff(i) for i in range(n + 1)]))
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] / rows[col][col]
            if factor:
                rows[r] = [
                    a - factor * b for a, b in zip(rows[r], rows[col], strict=True)
                ]
    return det


def test_poly_basic_arithmetic():
    f = P([1, 2, 3])
    g = P([0, 1])
    assert (f + g).coeffs == (1, 3, 3)
    assert (f - f).is_zero
    assert (f * g).coeffs == (0, 1, 2, 3)
    assert f.evaluate(Fraction(2)) == 17
    assert f.scale(Fraction(1, 3)).coeffs == (
        Fraction(1, 3),
        Fraction(2, 3),
        Fraction(1),
    )
    assert g.shift_up(2).coeffs == (0, 0, 0, 1)
    assert P([2, 4]).monic().coeffs == (Fraction(1, 2), 1)
    assert P([0, 0]).is_zero
    assert f.degree == 2 and P([5]).degree == 0 and PolyQ.zero().degree == -1


def test_poly_divmod_and_gcd_random():
    rng = random.Random(17)
    for _ in range(100):
        f = random_poly(rng, rng.randint(0, 6))
        g = random_poly(rng, rng.randint(0, 4))
        q, r = f.divmod(g)
        assert (q * g + r - f).is_zero
        assert r.is_zero or r.degree < g.degree
        h = random_poly(rng, rng.randint(0, 3))
        d = (f * h).gcd(g * h)
        assert (d % h.monic()).is_zero or h.degree == 0
        assert d.is_zero or d.lc == 1  # gcd is monic


def test_derivative_and_squarefree_part():
    f = P([-2, 0, 1]) * P([-2, 0, 1]) * P([1, 1])
    sf = f.squarefree_part()
    assert (sf % P([-2, 0, 1])).is_zero
    assert (sf % P([1, 1])).is_zero
    assert sf.degree == 3
    assert P([1, 2, 3]).derivative().coeffs == (2, 6)


def test_resultant_frozen_values():
    assert resultant(P([-2, 0, 1]), P([-3, 0, 1])) == 1
    assert resultant(P([-3, 1]), P([1, 1, 1])) == 13  # g(3)
    assert resultant(P([1, 0, 1]), P([1, 1])) == 2
    assert resultant(P([5]), P([1, 1, 1])) == 25


def test_resultant_matches_sylvester_oracle():
    rng = random.Random(23)
    for _ in range(60):
        f = random_poly(rng, rng.randint(1, 5))
        g = random_poly(rng, rng.randint(1, 5))
        assert resultant(f, g) == sylvester_resultant(f, g), (f.coeffs, g.coeffs)


def test_discriminant_frozen_values():
    assert discriminant(P([1, 0, 1])) == -4
    assert discriminant(P([0, -1, 0, 1])) == 4
    assert discriminant(P([-2, 0, 0, 0, 1])) == -2048
    assert discriminant(P([1, 0, 0, 0, 1])) == 256
    assert discriminant(P([2, 0, 4, 0, 1])) == 2048
    assert discriminant(P([-1, 0, 1])) == 4
    assert discriminant(P([Fraction(1, 2), 1])) == 1  # linear


def test_lagrange_interpolate_roundtrip():
    points = [(Fraction(k), Fraction(k**3 - 2 * k + 1)) for k in range(4)]
    f = lagrange_interpolate(points)
    assert f.degree <= 3
    for x, y in points:
        assert f.evaluate(x) == y
    assert f.evaluate(Fraction(10)) == 981


def test_integerize_clears_denominators():
    f = P([Fraction(1, 2), Fraction(2, 3), Fraction(1, 6)])
    coeffs, scale = integerize(f)
    assert coeffs == [3, 4, 1]
    assert scale == 6


def test_rational_roots():
    f = P([-3, 5, -1, 5, 2])  # (2x - 1)(x + 3)(x^2 + 1)
    assert rational_roots(f) == [Fraction(-3), Fraction(1, 2)]
    assert rational_roots(P([1, 0, 1])) == []


def test_is_irreducible():
    assert is_irreducible(P([1, 0, 0, 0, 1]))  # x^4 + 1
    assert is_irreducible(P([2, 0, -4, 0, 1]))  # x^4 - 4x^2 + 2
    assert is_irreducible(P([1, 0, -1, 0, 1]))  # 12th cyclotomic
    assert not is_irreducible(P([4, 0, 0, 0, 1]))  # (x^2+2x+2)(x^2-2x+2)
    assert not is_irreducible(P([-1, 0, 0, 0, 1]))
    assert is_irreducible(P([-2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]))  # x^12 - 2
    assert not is_irreducible(P([1, 2, 1]))
    assert is_irreducible(P([7, 1]))
    assert MAX_IRREDUCIBILITY_DEGREE == 12
    with pytest.raises(ValueError):
        is_irreducible(P([1] + [0] * 12 + [1]))


def test_resultant_in_y_eliminates_the_variable():
    # h(x) = Res_y(f(y), x^2 - theta(y)) for f = y^2 - 2, theta = y gives f(x^2).
    f_rows = [PolyQ.constant(-2), PolyQ.zero(), PolyQ.one()]
    g_rows = [P([0, 0, 1]), PolyQ.constant(-1)]  # (x^2) - 1*y
    h = resultant_in_y(f_rows, g_rows)
    assert h.coeffs == (-2, 0, 0, 0, 1)
    # Constant theta: Res_y(f(y), x^2 - c) = (x^2 - c)^(deg f).
    h2 = resultant_in_y(f_rows, [P([-3, 0, 1])])
    assert h2.coeffs == (9, 0, -6, 0, 1)
    with pytest.raises(ValueError):
        resultant_in_y([PolyQ.one(), P([0, 1])], [PolyQ.zero(), PolyQ.one()])
    with pytest.raises(ValueError):
        resultant_in_y([], [PolyQ.one()])


def test_factor_mod_p_roundtrip_random():
    rng = random.Random(13)
    for _ in range(120):
        p = rng.choice((2, 3, 5, 7, 11, 13))
        degree = rng.randint(1, 8)
        coeffs = [rng.randrange(p) for _ in range(degree)] + [
            rng.randrange(1, p)
        ]
        f = PolyFp.of(p, coeffs)
        factors = factor_mod_p(f)
        product = PolyFp.of(p, [f.coeffs[-1]])
        for g, e in factors:
            assert is_irreducible_mod_p(g)
            assert g.coeffs[-1] == 1  # monic
            for _ in range(e):
                product = product * g
        assert product.coeffs == f.coeffs


def test_factor_mod_p_frozen_cases():
    factors = factor_mod_p(PolyFp.of(5, [1, 0, 1]))
    assert sorted(tuple(g.coeffs) for g, _ in factors) == [(2, 1), (3, 1)]
    assert all(e == 1 for _, e in factors)
    (g, e), = factor_mod_p(PolyFp.of(3, [1, 2, 1]))
    assert tuple(g.coeffs) == (1, 1) and e == 2
    assert is_irreducible_mod_p(PolyFp.of(3, [1, 0, 1]))
    assert not is_irreducible_mod_p(PolyFp.of(5, [1, 0, 1]))


def test_ff_is_square_in_f9():
    modulus = PolyFp.of(3, [1, 0, 1])  # F_9 = F_3[x]/(x^2+1)
    assert ff_is_square(PolyFp.of(3, [2]), modulus)  # -1 has order 2
    assert ff_is_square(PolyFp.of(3, [0, 1]), modulus)  # x has order 4
    assert not ff_is_square(PolyFp.of(3, [1, 1]), modulus)  # x+1 generates
    # Consistency with the prime field: squares mod 7 are {1, 2, 4}.
    m7 = PolyFp.of(7, [3, 1])
    for a, expected in ((1, True), (2, True), (3, False), (4, True), (5, False)):
        assert ff_is_square(PolyFp.of(7, [a]), m7) == expected


def test_sturm_real_root_counts():
    assert real_root_count(P([0, -1, 0, 1])) == 3
    assert real_root_count(P([1, 0, 1])) == 0
    assert real_root_count(P([-2, 0, 1])) == 2
    assert real_root_count(P([-2, 0, 0, 0, 1])) == 2
    assert real_root_count(P([2, 0, 4, 0, 1])) == 0
    assert real_root_count(P([2, 0, -4, 0, 1])) == 4


def test_isolate_and_refine_real_roots():
    f = P([-2, 0, 1]) * P([-3, 0, 1])
    roots = isolate_real_roots(f)
    assert len(roots) == 4
    approxes = []
    for r in roots:
        r.refine(Fraction(1, 10**6))
        approxes.append(float(r.approx()))
    expected = [-(3**0.5), -(2**0.5), 2**0.5, 3**0.5]
    for got, want in zip(approxes, expected, strict=True):
        assert abs(got - want) < 1e-5
    bound = root_bound(f)
    assert all(abs(a) <= float(bound) for a in approxes)


def test_real_root_sign_of():
    f = P([-2, 0, 1])
    neg_root, pos_root = isolate_real_roots(f)
    g = P([0, 1])  # evaluates the root itself
    assert neg_root.sign_of(g) == -1
    assert pos_root.sign_of(g) == 1
    assert pos_root.sign_of(P([-2, 0, 1])) == 0  # vanishes at the root
    assert neg_root.sign_of(P([5])) == 1
