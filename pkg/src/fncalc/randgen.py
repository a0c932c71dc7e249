"""Deterministic generators of random polynomial test data.

Axiom checks probe identities on coordinate basis fields plus randomized
polynomial fields; everything here is driven by an explicit seed so that
reports are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .calculus import Chart, KForm, VectorField, VectorValuedForm
from .scalar import GaussianRational, ScalarExpr

__all__ = [
    "random_scalar",
    "random_vector_field",
    "random_kform",
    "random_vvf",
]


def _monomials(dim: int, degree: int):
    for total in range(degree + 1):
        for exps in itertools.combinations_with_replacement(range(dim), total):
            counts = [0] * dim
            for e in exps:
                counts[e] += 1
            yield tuple(counts)


def random_scalar(
    chart: Chart,
    rng: random.Random,
    degree: int = 2,
    *,
    allow_imaginary: bool = False,
) -> ScalarExpr:
    """A random polynomial with small integer (or Gaussian) coefficients."""
    out = chart.zero
    for monom in _monomials(chart.dim, degree):
        c = rng.randint(-2, 2)
        ci = rng.randint(-2, 2) if allow_imaginary else 0
        if c == 0 and ci == 0:
            continue
        coeff = chart.const(GaussianRational(Fraction(c), Fraction(ci)))
        term = coeff
        for name, exp in zip(chart.coord_names, monom):
            if exp:
                term = term * ScalarExpr.variable(chart.ring, name) ** exp
        out = out + term
    return out


def random_vector_field(
    chart: Chart, rng: random.Random, degree: int = 2
) -> VectorField:
    allow = chart.is_complexified
    return VectorField(
        chart,
        [
            random_scalar(chart, rng, degree, allow_imaginary=allow)
            for _ in range(chart.dim)
        ],
    )


def random_kform(
    chart: Chart, form_degree: int, rng: random.Random, degree: int = 2
) -> KForm:
    allow = chart.is_complexified
    coeffs = {
        key: random_scalar(chart, rng, degree, allow_imaginary=allow)
        for key in itertools.combinations(range(chart.dim), form_degree)
    }
    return KForm(chart, form_degree, coeffs)


def random_vvf(
    chart: Chart, form_degree: int, rng: random.Random, degree: int = 2
) -> VectorValuedForm:
    return VectorValuedForm(
        chart,
        form_degree,
        [random_kform(chart, form_degree, rng, degree) for _ in range(chart.dim)],
    )
