"""Trace forms and the bounded realizing-element search."""

import itertools
import random
from fractions import Fraction

import pytest

from torusembed.arith.places import INFINITY, Place
from torusembed.arith.polyq import PolyQ
from torusembed.oracle import (
    enumerate_symmetric_units,
    fixed_field_image,
    is_symmetric,
    is_unit,
    make_element,
    one_element,
    ramified_sign_counts,
    search_realizing_element,
    sigma_apply,
    signs_at_ramified_embeddings,
    trace_form,
)
from torusembed.qform import QuadraticSpace, equivalent_over_q

import helpers
from helpers import algebra, diag, general, quad, symmetric_part

P = PolyQ.of
V3, V5 = Place.finite(3), Place.finite(5)


def test_make_element_coercions_and_reduction():
    alg = algebra(general([-2, 0, 1], [0, 1]))  # h = x^4 - 2
    e = make_element(alg, [P([0, 0, 0, 0, 1])])  # x^4 reduces to 2
    assert e.parts[0].coeffs == (2,)
    e2 = make_element(alg, [3])
    assert e2.parts[0].coeffs == (3,)
    e3 = make_element(alg, [Fraction(1, 2)])
    assert e3.parts[0].coeffs == (Fraction(1, 2),)
    with pytest.raises(ValueError):
        make_element(alg, [1, 2])  # wrong number of parts


def test_sigma_and_symmetry():
    alg = algebra(general([-2, 0, 1], [0, 1]))
    x = make_element(alg, [P([1, 1, 1, 1])])
    sx = sigma_apply(x)
    assert sx.parts[0].coeffs == (1, -1, 1, -1)
    assert not is_symmetric(x)
    assert is_symmetric(make_element(alg, [P([1, 0, 5])]))
    assert sigma_apply(sx).parts == x.parts  # sigma is an involution


def test_is_unit():
    alg = algebra(quad(-1), quad(5))
    assert is_unit(alg, make_element(alg, [1, 1]))
    assert not is_unit(alg, make_element(alg, [0, 1]))
    assert not is_unit(alg, make_element(alg, [1, 0]))
    assert is_unit(alg, make_element(alg, [Fraction(-1, 3), 7]))


def test_one_element_trace_form_gaussian():
    alg = algebra(quad(-1))
    result = trace_form(alg, one_element(alg))
    assert result.gram == ((2, 0), (0, 2))
    inv = result.space.invariants
    assert inv.disc.rep == -1
    assert inv.signature == (2, 0)


def test_trace_form_frozen_quartic_gram():
    alg = algebra(general([-2, 0, 1], [0, 1]))  # h = x^4 - 2
    result = trace_form(alg, one_element(alg))
    assert result.gram == (
        (4, 0, 0, 0),
        (0, 0, 0, -8),
        (0, 0, 8, 0),
        (0, -8, 0, 0),
    )
    inv = result.space.invariants
    assert inv.disc.rep == -2
    assert inv.signature == (3, 1)


def test_trace_form_is_block_diagonal_across_components():
    alg = algebra(quad(-1), quad(5))
    alpha = make_element(alg, [2, -3])
    result = trace_form(alg, alpha)
    gram = result.gram
    assert all(gram[i][j] == 0 for i in range(2) for j in range(2, 4))
    single1 = trace_form(algebra(quad(-1)), make_element(algebra(quad(-1)), [2]))
    single2 = trace_form(algebra(quad(5)), make_element(algebra(quad(5)), [-3]))
    assert gram[0][0] == single1.gram[0][0]
    assert gram[2][2] == single2.gram[0][0]


def test_trace_form_rejects_bad_elements():
    alg = algebra(general([-2, 0, 1], [0, 1]))
    with pytest.raises(ValueError, match="not fixed by the involution"):
        trace_form(alg, make_element(alg, [P([0, 1])]))
    with pytest.raises(ValueError, match="not a unit"):
        trace_form(alg, make_element(alg, [0]))
    from torusembed.oracle import AlgebraElement

    wrong_arity = AlgebraElement((P([1]), P([1])))
    with pytest.raises(ValueError, match="does not match"):
        trace_form(alg, wrong_arity)


def test_trace_form_identities_random(unit_corpus):
    """disc q_alpha = disc E and the signature law, on the shared corpus."""
    for name, alg, alpha, result in unit_corpus:
        inv = result.space.invariants
        assert inv.dim == alg.rank
        assert inv.disc == alg.disc_class, name
        pos, neg = ramified_sign_counts(alg, alpha)
        w = alg.unramified_real_weight
        assert inv.signature == (2 * pos + w, 2 * neg + w), name


def test_gram_is_symmetric_and_det_class_matches_disc(unit_corpus):
    for _, alg, _, result in unit_corpus[:40]:
        gram = result.gram
        n = len(gram)
        for i in range(n):
            for j in range(n):
                assert gram[i][j] == gram[j][i]


def test_enumerate_symmetric_units_order_and_count():
    galg = algebra(quad(-1))
    els = list(enumerate_symmetric_units(galg, 1))
    assert [e.parts[0].coeffs for e in els] == [(-1,), (1,)]
    assert len(list(enumerate_symmetric_units(galg, 2))) == 4
    qalg = algebra(general([-2, 0, 1], [0, 1]))
    quartic_units = list(enumerate_symmetric_units(qalg, 1))
    assert len(quartic_units) == 8  # 3^2 - 1 nonzero vectors, all units
    assert quartic_units[0].parts[0].coeffs == (-1, 0, -1)
    pair = algebra(quad(-1), quad(5))
    combos = [
        tuple(part.coeffs[0] for part in e.parts)
        for e in enumerate_symmetric_units(pair, 1)
    ]
    assert combos == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    with pytest.raises(ValueError):
        list(enumerate_symmetric_units(pair, 0))


def test_enumerated_elements_are_symmetric_units():
    alg = algebra(general([-2, 0, 1], [-2, 1]), quad(-3))
    for e in itertools.islice(enumerate_symmetric_units(alg, 2), 50):
        assert is_symmetric(e)
        assert is_unit(alg, e)


def test_search_finds_planted_element():
    alg = algebra(general([-2, 0, 1], [0, 1]))
    planted = make_element(alg, [symmetric_part([2, -1])])
    target = trace_form(alg, planted).space
    result = search_realizing_element(alg, target, 3)
    assert result.found
    assert equivalent_over_q(trace_form(alg, result.element).space, target)
    # The search returns the first match in enumeration order, which may be
    # an earlier element than the planted one.
    assert result.height == 3


def test_search_respects_dimension_and_reports_misses():
    alg = algebra(quad(-1))
    with pytest.raises(ValueError, match="dimension"):
        search_realizing_element(alg, diag(1, 1, 1), 2)
    missing = search_realizing_element(alg, diag(1, -1), 4)
    assert not missing.found
    assert missing.element is None and missing.form is None


def test_search_deterministic_first_hit():
    alg = algebra(quad(-1))
    result = search_realizing_element(alg, diag(2, 2), 3)
    assert result.found
    assert result.element.parts[0].coeffs == (1,)
    again = search_realizing_element(alg, diag(2, 2), 3)
    assert again.element.parts == result.element.parts


def test_local_bits_cover_both_classes_at_nonsplit_places():
    """At an odd nonsplit place the trace forms realize both Hasse bits;
    at a split place only the hyperbolic bit appears."""
    cases = [
        (algebra(quad(-1)), V3, 3, V5),  # 3 inert, 5 split in Q(i)
        (algebra(quad(-3)), V5, 5, Place.finite(13)),  # 5 inert, 13 = 1 mod 3
        (algebra(general([-2, 0, 1], [0, 1])), V5, 5, None),
        (algebra(general([-2, 0, 1], [-2, 1])), V5, 5, None),
        (algebra(quad(2)), V5, 5, Place.finite(7)),  # 2 nonresidue mod 5
        (algebra(quad(-7)), V5, 5, Place.finite(2)),  # -7 = 1 mod 8: 2 splits
    ]
    for alg, nonsplit_v, height, split_v in cases:
        # Flipping the bit at an odd place needs an element of odd valuation
        # there, so the search height must reach the prime itself.
        assert alg.split_at(nonsplit_v).is_nonsplit
        bits = set()
        for e in enumerate_symmetric_units(alg, height):
            bits.add(trace_form(alg, e).space.local_hasse_bit(nonsplit_v))
            if len(bits) == 2:
                break
        assert bits == {0, 1}, (alg, nonsplit_v)
        if split_v is None:
            continue
        assert alg.split_at(split_v).is_split
        hyper_bit = QuadraticSpace.of([1, -1] * alg.half_rank).local_hasse_bit(
            split_v
        )
        for e in itertools.islice(enumerate_symmetric_units(alg, 2), 24):
            assert trace_form(alg, e).space.local_hasse_bit(split_v) == hyper_bit


def test_fixed_field_image():
    comp = algebra(general([-2, 0, 1], [0, 1])).components[0]
    image = fixed_field_image(comp, symmetric_part([0, 1]))  # x^2 -> theta = y
    assert image.coeffs == (0, 1)
    image2 = fixed_field_image(comp, symmetric_part([3, 2]))  # 3 + 2 theta
    assert image2.coeffs == (3, 2)
    with pytest.raises(ValueError):
        fixed_field_image(comp, P([0, 1]))


def test_signs_at_ramified_embeddings():
    comp = algebra(general([-2, 0, 1], [0, 1])).components[0]
    # Only the embedding y -> -sqrt(2) is ramified (theta < 0 there).
    assert signs_at_ramified_embeddings(comp, symmetric_part([1])) == [1]
    assert signs_at_ramified_embeddings(comp, symmetric_part([0, 1])) == [-1]
    cm = algebra(general([-2, 0, 1], [-2, 1])).components[0]
    assert signs_at_ramified_embeddings(cm, symmetric_part([1])) == [1, 1]
    assert signs_at_ramified_embeddings(cm, symmetric_part([-1])) == [-1, -1]


def test_ramified_sign_counts_pairs():
    alg = algebra(quad(-1), quad(-3))
    assert ramified_sign_counts(alg, make_element(alg, [1, -1])) == (1, 1)
    assert ramified_sign_counts(alg, make_element(alg, [2, 5])) == (2, 0)
    really_mixed = algebra(general([-2, 0, 1], [0, 1]))
    assert ramified_sign_counts(
        really_mixed, make_element(really_mixed, [symmetric_part([0, 1])])
    ) == (0, 1)


def test_signature_spectrum_matches_achievable_signatures():
    """Across many units of the CM quartic the trace forms realize exactly
    the two definite signatures, never the mixed ones."""
    alg = algebra(general([-2, 0, 1], [-2, 1]))
    seen = set()
    for e in enumerate_symmetric_units(alg, 2):
        seen.add(trace_form(alg, e).space.invariants.signature)
    assert seen == {(4, 0), (0, 4), (2, 2)}
