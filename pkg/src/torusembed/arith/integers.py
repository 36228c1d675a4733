"""Integer arithmetic: primality, factorization, squarefree parts, square classes.

Inputs are desk-scale: factorization does trial division up to 10^4 and then
Pollard rho (Brent variant) on the < 2^64-ish cofactors that remain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

TRIAL_DIVISION_BOUND = 10_000


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return tuple(i for i, f in enumerate(flags) if f)


_SMALL_PRIMES = _sieve(TRIAL_DIVISION_BOUND)

# Deterministic Miller-Rabin base set: correct for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def iter_primes():
    """Yield 2, 3, 5, ... without bound."""
    yield from _SMALL_PRIMES
    n = _SMALL_PRIMES[-1] + 2
    while True:
        if is_probable_prime(n):
            yield n
        n += 2


def _pollard_brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of an odd composite n (Brent's cycle variant)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_integer(n: int) -> tuple[int, list[tuple[int, int]]]:
    """Factor nonzero n as (sign, [(prime, exponent), ...]) with primes ascending."""
    if n == 0:
        raise ValueError("cannot factor zero")
    sign = -1 if n < 0 else 1
    m = abs(n)
    counts: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        # The pseudo-random stream is local to this call and seeded from n,
        # so repeated factorizations are reproducible.
        rng = random.Random(m ^ 0x5DEECE66D)
        stack = [m]
        while stack:
            x = stack.pop()
            if is_probable_prime(x):
                counts[x] = counts.get(x, 0) + 1
                continue
            d = _pollard_brent(x, rng)
            stack.append(d)
            stack.append(x // d)
    return sign, sorted(counts.items())


def divisors(n: int) -> list[int]:
    """All positive divisors of nonzero n, ascending."""
    _, facs = factor_integer(n)
    out = [1]
    for p, e in facs:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def squarefree_part(x: int | Fraction) -> int:
    """The unique squarefree integer s with x = s * (nonzero rational square)."""
    if x == 0:
        raise ValueError("zero has no squarefree part")
    fr = Fraction(x)
    s = 1
    for part in (fr.numerator, fr.denominator):
        if abs(part) != 1:
            _, facs = factor_integer(part)
            for p, e in facs:
                if e % 2:
                    s *= p
    return s if fr > 0 else -s


@dataclass(frozen=True)
class SquareClass:
    """A rational square class, represented by its signed squarefree integer."""

    rep: int

    @classmethod
    def of(cls, x: int | Fraction) -> "SquareClass":
        return cls(squarefree_part(x))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(squarefree_part(self.rep * other.rep))

    @property
    def is_trivial(self) -> bool:
        return self.rep == 1

    def __str__(self) -> str:
        return str(self.rep)
