"""Embedded consistency suites.

These run with no third-party dependencies and give an offline sanity check
of the arithmetic kernels and the decision pipeline: Hilbert symbols against
a brute-force solvability search, algebraic symbol laws, factorization round
trips, real-root isolation, trace-form identities, and the golden decision
examples.  ``torusembed selftest`` drives :func:`run_all`.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .arith import (
    PolyQ,
    factor_integer,
    hilbert_symbol,
    is_probable_prime,
    isolate_real_roots,
    real_root_count,
    squarefree_part,
    symbol_support,
)
from .arith.places import INFINITY, Place
from .arith.polyfp import PolyFp, factor_mod_p, is_irreducible_mod_p
from .engine import decide
from .etale import GeneralSpec, QuadSpec, build_algebra
from .oracle import (
    enumerate_symmetric_units,
    make_element,
    ramified_sign_counts,
    sigma_apply,
    trace_form,
)
from .qform import QuadraticSpace

__all__ = ["run_all"]


def _brute_hilbert(a: int, b: int, v: Place) -> int:
    """Solvability of a*x^2 + b*y^2 = z^2 by exhaustive search with enough
    p-adic precision: mod 32 at p = 2 and mod p^3 at odd p, after reducing
    both entries to squarefree representatives (so valuations are at most 1;
    when both are divisible by p, (a, b) is replaced by the equal symbol
    (a, squarefree(-a*b))).  A nonzero primitive solution at that precision
    lifts, so the symbol bit is 0 exactly when one exists."""
    if v.is_infinite:
        return 1 if a < 0 and b < 0 else 0
    p = v.p
    a = squarefree_part(a)
    b = squarefree_part(b)
    if a % p == 0 and b % p == 0:
        b = squarefree_part(-a * b)
    m = 32 if p == 2 else p**3
    rng = range(m)
    # One coordinate can always be scaled to a unit, so three cases suffice.
    for y in rng:  # x = 1
        lhs = a + b * y * y
        for z in rng:
            if (lhs - z * z) % m == 0:
                return 0
    for x in rng:  # y = 1
        lhs = a * x * x + b
        for z in rng:
            if (lhs - z * z) % m == 0:
                return 0
    for x in rng:  # z = 1
        lhs = a * x * x - 1
        for y in rng:
            if (lhs + b * y * y) % m == 0:
                return 0
    return 1


def _suite_hilbert_brute() -> None:
    rng = random.Random(20260814)
    pool = [n for n in range(-10, 11) if n != 0]
    pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(20)]
    pairs += [(-1, -1), (2, 3), (-2, 5), (3, 3), (8, -4), (6, 10)]
    for a, b in pairs:
        for v in (Place.finite(2), Place.finite(3), Place.finite(5), INFINITY):
            fast = hilbert_symbol(a, b, v)
            brute = _brute_hilbert(a, b, v)
            assert fast == brute, f"hilbert({a},{b}) at {v}: {fast} != {brute}"


def _suite_hilbert_laws() -> None:
    rng = random.Random(7)
    pool = [n for n in range(-30, 31) if n != 0]
    places = [Place.finite(2), Place.finite(3), Place.finite(7), INFINITY]
    for _ in range(60):
        a, b, c = (rng.choice(pool) for _ in range(3))
        for v in places:
            assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
            lhs = hilbert_symbol(a, b * c, v)
            rhs = (hilbert_symbol(a, b, v) + hilbert_symbol(a, c, v)) % 2
            assert lhs == rhs, f"bilinearity fails for ({a},{b},{c}) at {v}"
            assert hilbert_symbol(a, -a, v) == 0
        if a not in (0, 1):
            for v in places:
                assert hilbert_symbol(a, 1 - a, v) == 0
    for a, b in [(rng.choice(pool), rng.choice(pool)) for _ in range(40)]:
        assert len(symbol_support(a, b)) % 2 == 0, f"odd support for ({a},{b})"


def _suite_integer_kernels() -> None:
    rng = random.Random(11)
    for _ in range(120):
        a = rng.randint(-10_000, 10_000)
        if a == 0:
            continue
        k = rng.randint(1, 40)
        assert squarefree_part(a * k * k) == squarefree_part(a)
        s = squarefree_part(a)
        assert (s > 0) == (a > 0)
        sign, factors = factor_integer(a)
        prod = sign
        for p, e in factors:
            assert is_probable_prime(p) and e >= 1
            prod *= p**e
        assert prod == a, f"factorization of {a} does not multiply back"


def _suite_factor_mod_p() -> None:
    rng = random.Random(13)
    for p in (2, 3, 5, 7):
        for _ in range(25):
            deg = rng.randint(1, 6)
            coeffs = [rng.randrange(p) for _ in range(deg)] + [1]
            f = PolyFp.of(p, coeffs)
            prod = PolyFp.one(p)
            for g, e in factor_mod_p(f):
                assert is_irreducible_mod_p(g), f"reducible factor mod {p}"
                for _ in range(e):
                    prod = prod * g
            assert prod == f, f"factors of {f} mod {p} do not multiply back"


def _suite_real_roots() -> None:
    cases = [
        ((2, 0, 1), 0),           # x^2 + 2
        ((-2, 0, 1), 2),          # x^2 - 2
        ((0, -1, 0, 1), 3),       # x^3 - x
        ((-6, 11, -6, 1), 3),     # (x-1)(x-2)(x-3)
        ((1, 0, 0, 0, 1), 0),     # x^4 + 1
        ((-2, 0, 0, 0, 1), 2),    # x^4 - 2
    ]
    for coeffs, expected in cases:
        f = PolyQ.of(coeffs)
        assert real_root_count(f) == expected, f"root count of {f}"
        roots = isolate_real_roots(f)
        assert len(roots) == expected
        for r in roots:
            if not r.exact:
                r.refine(Fraction(1, 1000))
        values = sorted(r.approx() for r in roots)
        assert values == [r.approx() for r in roots] or values == sorted(values)


def _suite_trace_identities() -> None:
    y = PolyQ.x()
    algebras = [
        build_algebra([QuadSpec(-1)]),
        build_algebra([QuadSpec(-3)]),
        build_algebra([QuadSpec(5)]),
        build_algebra([QuadSpec(-1), QuadSpec(-3)]),
        build_algebra([GeneralSpec(PolyQ.of((-2, 0, 1)), y)]),
    ]
    for algebra in algebras:
        count = 0
        for alpha in enumerate_symmetric_units(algebra, 1):
            assert sigma_apply(sigma_apply(alpha)) == alpha
            result = trace_form(algebra, alpha)
            assert result.invariants.disc == algebra.disc_class, (
                f"disc identity fails for {alpha}"
            )
            pos, neg = ramified_sign_counts(algebra, alpha)
            w = algebra.unramified_real_weight
            assert result.invariants.signature == (2 * pos + w, 2 * neg + w), (
                f"signature identity fails for {alpha}"
            )
            count += 1
            if count >= 12:
                break


def _suite_decision_goldens() -> None:
    Qi = build_algebra([QuadSpec(-1)])
    pair = build_algebra([QuadSpec(-1), QuadSpec(-3)])
    d1 = decide(Qi, QuadraticSpace.of([1, 1]))
    assert d1.verdict == "realizable" and d1.fast_path == "cm"
    assert d1.parity == (0,)
    d2 = decide(Qi, QuadraticSpace.of([1, -1]))
    assert d2.verdict == "locally_fails"
    assert d2.local.failing_condition == "signature"
    d3 = decide(pair, QuadraticSpace.of([1, 1, 1, 3]))
    assert d3.verdict == "realizable" and sum(d3.parity) % 2 == 0
    d4 = decide(pair, QuadraticSpace.of([1, 1, 1, 1]))
    assert d4.verdict == "locally_fails" and d4.local.failing_condition == "disc"


_SUITES = [
    ("hilbert symbols vs brute-force solvability", _suite_hilbert_brute),
    ("hilbert symbol laws and product formula", _suite_hilbert_laws),
    ("integer factorization and squarefree parts", _suite_integer_kernels),
    ("polynomial factorization mod p", _suite_factor_mod_p),
    ("real root isolation", _suite_real_roots),
    ("trace form identities", _suite_trace_identities),
    ("decision pipeline goldens", _suite_decision_goldens),
]


def run_all(quiet: bool = False) -> int:
    """Run every suite; return 0 when all pass, 1 otherwise."""
    failures = 0
    for name, suite in _SUITES:
        try:
            suite()
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures += 1
            if not quiet:
                print(f"FAIL - {name}: {exc}")
        else:
            if not quiet:
                print(f"ok - {name}")
    if not quiet:
        total = len(_SUITES)
        print(f"{total - failures}/{total} suites passed")
    return 0 if failures == 0 else 1
