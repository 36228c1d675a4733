"""Session fixtures: the algebra pool and a shared (algebra, unit) corpus."""

from __future__ import annotations

import random

import pytest

from torusembed.oracle import trace_form

import helpers


def build_pool():
    """Named algebras covering quadratic, CM, mixed, and quartic shapes."""
    return [
        ("gaussian", helpers.algebra(helpers.quad(-1))),
        ("real-quad-5", helpers.algebra(helpers.quad(5))),
        ("cm-pair", helpers.algebra(helpers.quad(-3), helpers.quad(-1))),
        ("quartic-mixed", helpers.algebra(helpers.general([-2, 0, 1], [0, 1]))),
        ("quartic-cm", helpers.algebra(helpers.general([-2, 0, 1], [-2, 1]))),
        ("quartic-unramified", helpers.algebra(helpers.general([-2, 0, 1], [2, 1]))),
        ("mixed-pair", helpers.algebra(helpers.quad(2), helpers.quad(-5))),
        ("quartic-over-root5", helpers.algebra(helpers.general([-5, 0, 1], [0, 1]))),
        # -7 and 17 are 1 mod 8, so these components split at 2; they keep the
        # always-bad place 2 from being vacuous in split-place checks.
        ("cm-seven", helpers.algebra(helpers.quad(-7))),
        ("real-quad-17", helpers.algebra(helpers.quad(17))),
        ("split-two-pair", helpers.algebra(helpers.quad(-7), helpers.quad(17))),
    ]


@pytest.fixture(scope="session")
def algebra_pool():
    return build_pool()


@pytest.fixture(scope="session")
def unit_corpus(algebra_pool):
    """100 random (name, algebra, unit, trace-form result) tuples."""
    rng = random.Random(20260814)
    corpus = []
    for k in range(100):
        name, alg = algebra_pool[k % len(algebra_pool)]
        alpha = helpers.random_symmetric_unit(alg, rng, height=4, halves=True)
        corpus.append((name, alg, alpha, trace_form(alg, alpha)))
    return corpus
