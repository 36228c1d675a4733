"""Shared builders for the test suite."""

from __future__ import annotations

import contextlib
import io
import random
from fractions import Fraction

from torusembed.arith.polyq import PolyQ
from torusembed.cli import main as cli_main
from torusembed.etale import EtaleAlgebra, GeneralSpec, QuadSpec, build_algebra
from torusembed.oracle import AlgebraElement, make_element
from torusembed.qform import QuadraticSpace


def P(*coeffs) -> PolyQ:
    return PolyQ.of(coeffs)


def quad(d: int) -> QuadSpec:
    return QuadSpec(d)


def general(f_coeffs, theta_coeffs) -> GeneralSpec:
    return GeneralSpec(f=PolyQ.of(f_coeffs), theta=PolyQ.of(theta_coeffs))


def algebra(*specs, annotations=None) -> EtaleAlgebra:
    return build_algebra(specs, annotations)


def diag(*entries) -> QuadraticSpace:
    return QuadraticSpace.of(entries)


def symmetric_part(values) -> PolyQ:
    """A polynomial with the given values at the even powers 1, x^2, x^4, ..."""
    coeffs: list[Fraction] = []
    for v in values:
        coeffs.append(Fraction(v))
        coeffs.append(Fraction(0))
    return PolyQ.of(coeffs[:-1] if coeffs else [])


def random_symmetric_unit(
    alg: EtaleAlgebra, rng: random.Random, height: int = 4, halves: bool = False
) -> AlgebraElement:
    """A random involution-fixed unit with coefficients in [-height, height]."""
    parts = []
    for comp in alg.components:
        while True:
            values = [
                Fraction(rng.randint(-height, height)) for _ in range(comp.fixed_degree)
            ]
            if halves and rng.random() < 0.3:
                k = rng.randrange(len(values))
                values[k] += Fraction(rng.choice((-1, 1)), 2)
            if any(values):
                break
        parts.append(symmetric_part(values))
    return make_element(alg, parts)


# --- the standing example pair: locally fine but needing a large witness ---

DEMO_ANNOTATIONS = {(0, 2): "nonsplit", (1, 2): "split"}


def demo_algebra() -> EtaleAlgebra:
    """Two quartic components over the same real quadratic fixed field whose
    only common nonsplit prime is 5, past the deliberately small bound 3."""
    return algebra(
        general([-2, 0, 1], [0, 1]),
        general([-2, 0, 1], [2, 1]),
        annotations=dict(DEMO_ANNOTATIONS),
    )


def demo_form() -> QuadraticSpace:
    return diag(1, -1, 1, -1, 1, -1, -3, -3)


def run_cli(argv: list[str], stdin_text: str | None = None):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    stack = contextlib.ExitStack()
    with stack:
        stack.enter_context(contextlib.redirect_stdout(out))
        stack.enter_context(contextlib.redirect_stderr(err))
        if stdin_text is not None:
            import sys

            old_stdin = sys.stdin
            sys.stdin = io.StringIO(stdin_text)
            stack.callback(lambda: setattr(sys, "stdin", old_stdin))
        code = cli_main(argv)
    return code, out.getvalue(), err.getvalue()
