"""Ground-truth side of the decision procedure.

Given an etale algebra ``E`` with involution (built in :mod:`torusembed.etale`)
and an invertible element ``alpha`` fixed by the involution, the bilinear form

    q_alpha(x, y) = Tr_{E/Q}(alpha * x * sigma(y))

is an exact rational quadratic form on the underlying 2n-dimensional vector
space.  This module computes these forms symbolically, enumerates candidate
elements ``alpha`` up to a coefficient height, and searches for an element
whose trace form is rationally equivalent to a target form.  A successful
search is an unconditional realizability certificate, independent of the
local-data engine in :mod:`torusembed.engine`; a failed bounded search proves
nothing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .arith import PolyQ
from .etale import Component, EtaleAlgebra
from .qform import QuadraticSpace, equivalent_over_q

__all__ = [
    "AlgebraElement",
    "TraceFormResult",
    "SearchResult",
    "make_element",
    "one_element",
    "sigma_apply",
    "is_symmetric",
    "is_unit",
    "trace_form",
    "enumerate_symmetric_units",
    "search_realizing_element",
    "fixed_field_image",
    "signs_at_ramified_embeddings",
    "ramified_sign_counts",
]


@dataclass(frozen=True)
class AlgebraElement:
    """An element of the product algebra, one polynomial part per component.

    Part ``i`` is a polynomial in the generator of ``K_i = Q[y]/(h_i)``,
    always kept reduced mod ``h_i``.  Elements fixed by the involution use
    only even powers of the generator.
    """

    parts: tuple[PolyQ, ...]

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


def make_element(algebra: EtaleAlgebra, parts: Sequence) -> AlgebraElement:
    """Build an element from one entry per component.

    Entries may be :class:`PolyQ`, integers, or :class:`Fraction`; each is
    reduced mod the component's defining polynomial.
    """
    comps = algebra.components
    if len(parts) != len(comps):
        raise ValueError(
            f"expected {len(comps)} parts, got {len(parts)}"
        )
    reduced = []
    for comp, part in zip(comps, parts):
        poly = part if isinstance(part, PolyQ) else PolyQ.constant(part)
        reduced.append(poly % comp.h)
    return AlgebraElement(tuple(reduced))


def one_element(algebra: EtaleAlgebra) -> AlgebraElement:
    """The multiplicative identity of the algebra."""
    return AlgebraElement(tuple(PolyQ.one() for _ in algebra.components))


def sigma_apply(x: AlgebraElement) -> AlgebraElement:
    """Apply the involution: negate the odd-power coefficients of every part.

    Each defining polynomial ``h_i`` is even, so ``y -> -y`` is an algebra
    automorphism; applying it twice is the identity.
    """
    flipped = []
    for part in x.parts:
        coeffs = [(-c if i % 2 else c) for i, c in enumerate(part.coeffs)]
        flipped.append(PolyQ.of(coeffs))
    return AlgebraElement(tuple(flipped))


def is_symmetric(x: AlgebraElement) -> bool:
    """True when the involution fixes ``x`` (only even powers appear)."""
    return all(
        c == 0
        for part in x.parts
        for i, c in enumerate(part.coeffs)
        if i % 2
    )


def is_unit(algebra: EtaleAlgebra, x: AlgebraElement) -> bool:
    """True when every part is coprime to its component's defining poly."""
    return all(
        not part.is_zero and part.gcd(comp.h).degree == 0
        for comp, part in zip(algebra.components, x.parts)
    )


def _component_trace(h: PolyQ, z: PolyQ) -> Fraction:
    """Trace of multiplication by ``z`` on Q[y]/(h): the sum of the diagonal
    of the multiplication matrix, whose column t is ``z * y^t mod h``."""
    total = Fraction(0)
    cur = z % h
    for t in range(h.degree):
        if t:
            cur = cur.shift_up(1) % h
        total += cur.coeff(t)
    return total


def _component_gram(h: PolyQ, part: PolyQ) -> list[list[Fraction]]:
    """Gram block of q_alpha restricted to one component, over the monomial
    basis 1, y, ..., y^(d-1):  B[u][v] = Tr(part * y^u * sigma(y^v))
                                       = (-1)^v * Tr(part * y^(u+v))."""
    d = h.degree
    traces = []
    cur = part % h
    for w in range(2 * d - 1):
        if w:
            cur = cur.shift_up(1) % h
        traces.append(_component_trace(h, cur))
    return [
        [(-traces[u + v] if v % 2 else traces[u + v]) for v in range(d)]
        for u in range(d)
    ]


@dataclass(frozen=True)
class TraceFormResult:
    """The exact trace form of one element: Gram matrix over the monomial
    basis plus its diagonalization and invariants."""

    gram: tuple[tuple[Fraction, ...], ...]
    space: QuadraticSpace

    @property
    def invariants(self):
        return self.space.invariants


def trace_form(algebra: EtaleAlgebra, alpha: AlgebraElement) -> TraceFormResult:
    """The quadratic form x -> Tr(alpha * x * sigma(x)) on the algebra.

    ``alpha`` must be fixed by the involution and invertible; the Gram matrix
    is block diagonal across components because cross-component products
    vanish.
    """
    if len(alpha.parts) != len(algebra.components):
        raise ValueError("element does not match the algebra's components")
    if not is_symmetric(alpha):
        raise ValueError("element is not fixed by the involution")
    if not is_unit(algebra, alpha):
        raise ValueError("singular trace form: element is not a unit")
    size = algebra.rank
    rows = [[Fraction(0)] * size for _ in range(size)]
    offset = 0
    for comp, part in zip(algebra.components, alpha.parts):
        block = _component_gram(comp.h, part)
        d = comp.degree
        for u in range(d):
            for v in range(d):
                rows[offset + u][offset + v] = block[u][v]
        offset += d
    gram = tuple(tuple(r) for r in rows)
    return TraceFormResult(gram=gram, space=QuadraticSpace.from_gram(rows))


def _component_vectors(dim: int, height: int) -> Iterator[tuple[int, ...]]:
    """All nonzero integer vectors of the given dimension with entries in
    [-height, height], in ascending lexicographic order."""
    rng = range(-height, height + 1)
    for vec in itertools.product(rng, repeat=dim):
        if any(vec):
            yield vec


def _vector_to_part(vec: Sequence[int]) -> PolyQ:
    """Even-power polynomial with these coefficients: vec[m] * y^(2m)."""
    coeffs: list[int] = []
    for c in vec:
        coeffs.append(c)
        coeffs.append(0)
    return PolyQ.of(coeffs[:-1] if coeffs else [0])


def enumerate_symmetric_units(
    algebra: EtaleAlgebra, height: int
) -> Iterator[AlgebraElement]:
    """All involution-fixed units whose even-power coefficients are integers
    in [-height, height].

    Deterministic order: component-wise lexicographic, with the first
    component varying slowest.  The zero vector is excluded per component;
    since every component is a field, all remaining candidates are units.
    """
    if height < 1:
        raise ValueError("height must be at least 1")
    streams = [
        [_vector_to_part(vec) for vec in _component_vectors(comp.fixed_degree, height)]
        for comp in algebra.components
    ]
    for combo in itertools.product(*streams):
        candidate = AlgebraElement(tuple(combo))
        if is_unit(algebra, candidate):
            yield candidate


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a bounded realizability search."""

    element: AlgebraElement | None
    form: TraceFormResult | None
    height: int

    @property
    def found(self) -> bool:
        return self.element is not None


def search_realizing_element(
    algebra: EtaleAlgebra, target: QuadraticSpace, height: int
) -> SearchResult:
    """First enumerated element whose trace form is equivalent to ``target``.

    An exhausted search is a bounded outcome only: it never proves that no
    realizing element exists.
    """
    if target.dim != algebra.rank:
        raise ValueError(
            f"form dimension {target.dim} does not match algebra rank {algebra.rank}"
        )
    want = target.invariants
    for candidate in enumerate_symmetric_units(algebra, height):
        result = trace_form(algebra, candidate)
        if result.invariants == want:
            return SearchResult(element=candidate, form=result, height=height)
    return SearchResult(element=None, form=None, height=height)


def fixed_field_image(component: Component, part: PolyQ) -> PolyQ:
    """Rewrite an even-power part as a polynomial in the fixed field.

    The fixed subfield of ``K_i`` is generated by the square of the
    generator, which satisfies the component's base polynomial ``f`` with
    root value ``theta``; substituting gives ``sum c_{2m} * theta^m mod f``.
    """
    if any(c != 0 for i, c in enumerate(part.coeffs) if i % 2):
        raise ValueError("element is not fixed by the involution")
    f = component.f
    theta = component.theta % f
    result = PolyQ.zero()
    power = PolyQ.one()
    for m in range(part.degree // 2 + 1):
        c = part.coeff(2 * m)
        if c:
            result = result + power.scale(c)
        power = (power * theta) % f
    return result


def signs_at_ramified_embeddings(component: Component, part: PolyQ) -> list[int]:
    """Signs of an involution-fixed part at the component's ramified real
    embeddings, in the order of the base polynomial's real roots."""
    image = fixed_field_image(component, part)
    signs = []
    for root, theta_sign in zip(component.real_roots, component.theta_signs):
        if theta_sign < 0:
            signs.append(root.sign_of(image))
    return signs


def ramified_sign_counts(
    algebra: EtaleAlgebra, alpha: AlgebraElement
) -> tuple[int, int]:
    """(positive, negative) counts of ``alpha`` over all ramified real
    embeddings of the algebra.  The trace form's signature is then
    (2*pos + w, 2*neg + w) with w the unramified real weight."""
    pos = neg = 0
    for comp, part in zip(algebra.components, alpha.parts):
        for s in signs_at_ramified_embeddings(comp, part):
            if s > 0:
                pos += 1
            elif s < 0:
                neg += 1
            else:  # pragma: no cover - units have no real roots in common
                raise ValueError("element vanishes at a real embedding")
    return pos, neg
