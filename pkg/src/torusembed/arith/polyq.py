"""Exact univariate polynomial arithmetic over Q.

Includes resultants (integer subresultant PRS), discriminants, rational root
extraction, and irreducibility testing over Q by Hensel lifting a mod-p
factorization and trying factor recombinations (degrees up to 12 are
supported, which keeps the subset search trivial).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

from torusembed.arith.integers import divisors, iter_primes
from torusembed.arith.polyfp import PolyFp, factor_mod_p

MAX_IRREDUCIBILITY_DEGREE = 12


@dataclass(frozen=True)
class PolyQ:
    """Polynomial over Q, coefficients ascending, no trailing zeros."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, coeffs) -> "PolyQ":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def zero(cls) -> "PolyQ":
        return cls(())

    @classmethod
    def one(cls) -> "PolyQ":
        return cls.of((1,))

    @classmethod
    def x(cls) -> "PolyQ":
        return cls.of((0, 1))

    @classmethod
    def constant(cls, c) -> "PolyQ":
        return cls.of((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "PolyQ") -> "PolyQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ.of(out)

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other: "PolyQ") -> "PolyQ":
        if self.is_zero or other.is_zero:
            return PolyQ.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ.of(out)

    def scale(self, c) -> "PolyQ":
        c = Fraction(c)
        return PolyQ.of([c * a for a in self.coeffs])

    def shift_up(self, k: int) -> "PolyQ":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return PolyQ((Fraction(0),) * k + self.coeffs)

    def monic(self) -> "PolyQ":
        if self.is_zero:
            return self
        return self.scale(1 / self.lc)

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        q = [Fraction(0)] * max(len(rem) - d, 0)
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            c = rem[-1] / other.lc
            q[k] = c
            for i, oc in enumerate(other.coeffs):
                rem[k + i] -= c * oc
            while rem and rem[-1] == 0:
                rem.pop()
        return PolyQ.of(q), PolyQ.of(rem)

    def __mod__(self, other: "PolyQ") -> "PolyQ":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "PolyQ") -> "PolyQ":
        return self.divmod(other)[0]

    def gcd(self, other: "PolyQ") -> "PolyQ":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "PolyQ":
        return PolyQ.of([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def squarefree_part(self) -> "PolyQ":
        if self.degree < 1:
            return self.monic()
        return (self // self.gcd(self.derivative())).monic()

    def pow(self, e: int) -> "PolyQ":
        result = PolyQ.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def reduce_mod_p(self, p: int) -> PolyFp:
        """Image in F_p[x]; every coefficient denominator must be prime to p."""
        out = []
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise ValueError(f"coefficient denominator divisible by {p}")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return PolyFp.of(p, out)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(terms)


def integerize(f: PolyQ) -> tuple[list[int], int]:
    """(integer coefficient list, positive d) with f = (1/d) * those coefficients."""
    d = 1
    for c in f.coeffs:
        d = d * c.denominator // gcd(d, c.denominator)
    return [int(c * d) for c in f.coeffs], d


def _ip_strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ip_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _ip_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over Z: lc(b)^(deg a - deg b + 1) * a mod b."""
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = len(a) - len(b) + 1
    while rem and len(rem) - 1 >= db:
        k = len(rem) - 1 - db
        c = rem[-1]
        rem = [lb * r for r in rem]
        for i, bc in enumerate(b):
            rem[k + i] -= c * bc
        _ip_strip(rem)
        steps -= 1
    for _ in range(max(steps, 0)):
        rem = [lb * r for r in rem]
    return rem


def _int_resultant(A: list[int], B: list[int]) -> int:
    """Resultant of integer polynomials via the subresultant PRS (exact)."""
    A = _ip_strip(list(A))
    B = _ip_strip(list(B))
    if not A or not B:
        return 0
    if len(A) == 1:
        return A[0] ** (len(B) - 1)
    if len(B) == 1:
        return B[0] ** (len(A) - 1)
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
        A, B = B, A
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        d = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _ip_prem(A, B)
        A = B
        if not R:
            return 0
        denom = g * h**d
        B = [c // denom for c in R]
        g = A[-1]
        if d == 1:
            h = g
        elif d > 1:
            h = g**d // h ** (d - 1)
        if len(B) == 1:
            dA = len(A) - 1
            return s * (B[0] ** dA // h ** (dA - 1))


def resultant(f: PolyQ, g: PolyQ) -> Fraction:
    """Res(f, g) over Q (exact)."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined here")
    if f.degree == 0:
        return Fraction(f.lc) ** g.degree
    if g.degree == 0:
        return Fraction(g.lc) ** f.degree
    A, da = integerize(f)
    B, db = integerize(g)
    r = _int_resultant(A, B)
    return Fraction(r, da**g.degree * db**f.degree)


def discriminant(f: PolyQ) -> Fraction:
    """disc(f) = (-1)^(m(m-1)/2) Res(f, f') / lc(f) for deg f = m >= 1."""
    m = f.degree
    if m < 1:
        raise ValueError("discriminant requires degree >= 1")
    if m == 1:
        return Fraction(1)
    r = resultant(f, f.derivative())
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * r / f.lc


def lagrange_interpolate(points: list[tuple[Fraction, Fraction]]) -> PolyQ:
    """The unique polynomial of degree < len(points) through the given points."""
    result = PolyQ.zero()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = PolyQ.one()
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * PolyQ.of((-xj, 1))
            den *= xi - xj
        result = result + num.scale(yi / den)
    return result


def resultant_in_y(F: list[PolyQ], G: list[PolyQ]) -> PolyQ:
    """Res_y of two polynomials in y whose coefficients are polynomials in x.

    ``F[j]``/``G[j]`` is the coefficient of y^j.  The leading y-coefficients
    must be nonzero constants so that specialization at any x preserves the
    y-degrees; the resultant is then computed by evaluation/interpolation.
    """
    F = list(F)
    G = list(G)
    while F and F[-1].is_zero:
        F.pop()
    while G and G[-1].is_zero:
        G.pop()
    if not F or not G:
        raise ValueError("resultant of the zero polynomial is undefined here")
    dy_f, dy_g = len(F) - 1, len(G) - 1
    if dy_g == 0:
        return G[0].pow(dy_f)
    if dy_f == 0:
        return F[0].pow(dy_g)
    if F[-1].degree != 0 or G[-1].degree != 0:
        raise ValueError("leading y-coefficients must be constants")
    dx_f = max(c.degree for c in F)
    dx_g = max(c.degree for c in G)
    bound = dy_f * dx_g + dy_g * dx_f
    points: list[tuple[Fraction, Fraction]] = []
    x0 = 0
    while len(points) < bound + 1:
        fx = PolyQ.of([c.evaluate(x0) for c in F])
        gx = PolyQ.of([c.evaluate(x0) for c in G])
        points.append((Fraction(x0), resultant(fx, gx)))
        x0 = -x0 + (1 if x0 <= 0 else 0)
    return lagrange_interpolate(points)


def rational_roots(f: PolyQ) -> list[Fraction]:
    """The distinct rational roots of nonzero f, ascending."""
    if f.is_zero:
        raise ValueError("the zero polynomial has every root")
    if f.degree < 1:
        return []
    roots = set()
    A, _ = integerize(f)
    while A and A[0] == 0:
        A = A[1:]
        roots.add(Fraction(0))
    if len(A) > 1:
        c = 0
        for a in A:
            c = gcd(c, a)
        A = [a // c for a in A]
        for num in divisors(abs(A[0])):
            for den in divisors(abs(A[-1])):
                if gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if f.evaluate(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# Irreducibility over Q: mod-p factorization, Hensel lifting, recombination.
# ---------------------------------------------------------------------------


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def _fp_bezout(a: PolyFp, b: PolyFp) -> tuple[PolyFp, PolyFp]:
    """(s, t) with s*a + t*b = 1 for coprime a, b over F_p."""
    p = a.p
    r0, r1 = a, b
    s0, s1 = PolyFp.one(p), PolyFp.zero(p)
    t0, t1 = PolyFp.zero(p), PolyFp.one(p)
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.degree != 0:
        raise ValueError("polynomials are not coprime")
    inv = pow(r0.lc, -1, p)
    return s0.scale(inv), t0.scale(inv)


def _hensel_pair(
    f: list[int], g: list[int], h: list[int], p: int, target: int
) -> tuple[list[int], list[int]]:
    """Lift f = g*h (mod p) with f, g, h monic to modulus p^target (linear steps)."""
    gp = PolyFp.of(p, g)
    hp = PolyFp.of(p, h)
    s, t = _fp_bezout(gp, hp)
    m = p
    G = [c % p for c in g]
    H = [c % p for c in h]
    k = 1
    while k < target:
        mm = m * p
        prod = _ip_mul(G, H)
        e = [fc - pc for fc, pc in _zip_pad(f, prod)]
        ep = PolyFp.of(p, [(c // m) % p for c in e])
        u = (t * ep) % gp
        q = (t * ep) // gp
        w = s * ep + q * hp
        G = _ip_strip([(a + m * b) % mm for a, b in _zip_pad(G, list(u.coeffs))])
        H = _ip_strip([(a + m * b) % mm for a, b in _zip_pad(H, list(w.coeffs))])
        m = mm
        k += 1
    return G, H


def _lift_factors(
    f: list[int], factors: list[PolyFp], p: int, target: int
) -> list[list[int]]:
    """Lift a mod-p factorization of monic integer f to factors mod p^target."""
    if len(factors) == 1:
        m = p**target
        return [_ip_strip([c % m for c in f])]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    gp = PolyFp.one(p)
    for fac in left:
        gp = gp * fac
    hp = PolyFp.one(p)
    for fac in right:
        hp = hp * fac
    G, H = _hensel_pair(f, list(gp.coeffs), list(hp.coeffs), p, target)
    return _lift_factors(G, left, p, target) + _lift_factors(H, right, p, target)


def _centered(a: list[int], m: int) -> list[int]:
    return _ip_strip([c - m if c > m // 2 else c for c in [x % m for x in a]])


def _ip_divides(cand: list[int], f: list[int]) -> bool:
    """Whether monic integer cand divides f over Z."""
    rem = list(f)
    d = len(cand) - 1
    while rem and len(rem) - 1 >= d:
        k = len(rem) - 1 - d
        c = rem[-1]
        for i, cc in enumerate(cand):
            rem[k + i] -= c * cc
        _ip_strip(rem)
    return not rem


def _monicize(A: list[int]) -> list[int]:
    """lc^(n-1) * A(x/lc): monic, integer, same splitting behavior as A."""
    lc = A[-1]
    n = len(A) - 1
    return [A[i] * lc ** (n - 1 - i) for i in range(n)] + [1]


def is_irreducible(f: PolyQ) -> bool:
    """Whether f is irreducible over Q.  Supports degrees up to 12."""
    n = f.degree
    if n > MAX_IRREDUCIBILITY_DEGREE:
        raise ValueError(f"unsupported degree {n} (max {MAX_IRREDUCIBILITY_DEGREE})")
    if n <= 0:
        return False
    if n == 1:
        return True
    if f.gcd(f.derivative()).degree > 0:
        return False
    A, _ = integerize(f)
    if A[0] == 0:
        return False
    g = _monicize(A)

    # An irreducible reduction mod any good prime settles it; otherwise keep
    # the prime giving the fewest modular factors to minimize recombination.
    best: tuple[int, list[PolyFp]] | None = None
    tried = 0
    for p in iter_primes():
        if p == 2:
            continue
        gp = PolyFp.of(p, g)
        if gp.degree != n or gp.gcd(gp.derivative()).degree != 0:
            continue
        facs = [fac for fac, _ in factor_mod_p(gp)]
        if len(facs) == 1:
            return True
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if tried >= 4:
            break
    assert best is not None
    p, facs = best

    # Landau-Mignotte style bound on coefficients of any monic factor of g.
    bound = (2**n) * (isqrt(sum(x * x for x in g)) + 1)
    target = 1
    while p**target < 2 * bound + 1:
        target += 1
    lifted = _lift_factors(g, facs, p, target)
    m = p**target
    r = len(lifted)
    for size in range(1, r // 2 + 1):
        for subset in combinations(range(r), size):
            prod = [1]
            for i in subset:
                prod = _ip_strip([c % m for c in _ip_mul(prod, lifted[i])])
            cand = _centered(prod, m)
            if cand and cand[-1] == 1 and _ip_divides(cand, g):
                return False
    return True
