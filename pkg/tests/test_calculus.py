"""Exterior calculus layer: d, wedge, insertion, Lie derivative, brackets."""

import random
from fractions import Fraction

import pytest

from fncalc.calculus import (
    Chart,
    KForm,
    VectorField,
    VectorValuedForm,
    complexify_vvf,
    contracted_bracket,
    exterior_d,
    fn_bracket,
    fn_decompose,
    insertion,
    lie_bracket,
    lie_derivative,
    nijenhuis_torsion,
    rn_bracket,
    wedge,
)
from fncalc.fixtures import J0, J2, N0, chart_r2, chart_r3
from fncalc.randgen import random_kform, random_scalar, random_vector_field, random_vvf


def test_d_squared_zero():
    rng = random.Random(1)
    for chart in (chart_r2(), chart_r3()):
        for p in range(chart.dim):
            omega = random_kform(chart, p, rng)
            assert exterior_d(exterior_d(omega)).is_zero


def test_d_on_function_is_differential():
    ch = chart_r2()
    f = KForm(ch, 0, {(): ch.scalar("x^2*y")})
    df = exterior_d(f)
    assert df.coeffs[(0,)] == ch.scalar("2*x*y")
    assert df.coeffs[(1,)] == ch.scalar("x^2")


def test_wedge_graded_commutativity():
    ch = chart_r3()
    rng = random.Random(2)
    a = random_kform(ch, 1, rng)
    b = random_kform(ch, 1, rng)
    c = random_kform(ch, 2, rng)
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, c) == wedge(c, a)
    assert wedge(wedge(a, b), c).is_zero or wedge(a, wedge(b, c)) == wedge(
        wedge(a, b), c
    )


def test_leibniz_for_d():
    ch = chart_r3()
    rng = random.Random(3)
    f = KForm(ch, 0, {(): random_scalar(ch, rng)})
    a = random_kform(ch, 1, rng)
    assert exterior_d(wedge(f, a)) == wedge(exterior_d(f), a) + wedge(
        f, exterior_d(a)
    )


def test_insertion_identity_counts_degree():
    ch = chart_r3()
    rng = random.Random(4)
    identity = VectorValuedForm.identity(ch)
    for p in range(1, ch.dim + 1):
        omega = random_kform(ch, p, rng)
        assert insertion(identity, omega) == omega.scaled(ch.const(p))


def test_lie_derivative_identity_is_d():
    ch = chart_r2()
    rng = random.Random(5)
    identity = VectorValuedForm.identity(ch)
    for p in range(ch.dim + 1):
        omega = random_kform(ch, p, rng)
        assert lie_derivative(identity, omega) == exterior_d(omega)


def test_lie_derivative_vector_field_cartan():
    """Degree-0 case agrees with evaluation against transported arguments."""
    ch = chart_r2()
    rng = random.Random(6)
    X = random_vector_field(ch, rng)
    omega = random_kform(ch, 1, rng)
    K = VectorValuedForm.from_vector_field(X)
    lhs = lie_derivative(K, omega)
    for Y in ch.basis_vectors():
        expected = X(omega(Y)) - omega(lie_bracket(X, Y))
        assert lhs(Y) == expected


def test_fn_bracket_of_vector_fields_is_lie_bracket():
    ch = chart_r3()
    rng = random.Random(7)
    X = random_vector_field(ch, rng)
    Y = random_vector_field(ch, rng)
    result = fn_bracket(
        VectorValuedForm.from_vector_field(X), VectorValuedForm.from_vector_field(Y)
    )
    assert result.to_vector_field() == lie_bracket(X, Y)


def test_fn_bracket_graded_symmetry():
    """[A,B] = -(-1)^{ab} [B,A]: symmetric in odd-odd, antisymmetric in even-even."""
    ch = chart_r2()
    rng = random.Random(8)
    A = random_vvf(ch, 1, rng)
    B = random_vvf(ch, 1, rng)
    assert fn_bracket(A, B) == fn_bracket(B, A)
    X = VectorValuedForm.from_vector_field(random_vector_field(ch, rng))
    Y = VectorValuedForm.from_vector_field(random_vector_field(ch, rng))
    assert fn_bracket(X, Y) == -fn_bracket(Y, X)


def test_torsion_is_half_fn_self_bracket():
    ch = chart_r3()
    rng = random.Random(9)
    N = random_vvf(ch, 1, rng)
    half = ch.const(Fraction(1, 2))
    assert fn_bracket(N, N).scaled(half) == nijenhuis_torsion(N)


def test_torsion_fixture_value():
    N = N0()
    ch = N.chart
    T = nijenhuis_torsion(N)
    assert T(ch.basis_vector(2), ch.basis_vector(3)) == ch.basis_vector(0)
    value = T(ch.basis_vector(0), ch.basis_vector(1))
    assert value.is_zero


def test_rn_bracket_of_endomorphisms_vanishes_for_identity():
    ch = chart_r2()
    rng = random.Random(10)
    A = random_vvf(ch, 1, rng)
    identity = VectorValuedForm.identity(ch)
    # [A, Id]_RN = A ∘ Id - Id ∘ A = 0 at degree 1.
    assert rn_bracket(A, identity).is_zero


def test_contracted_bracket_formula():
    ch = chart_r2()
    rng = random.Random(11)
    N = random_vvf(ch, 1, rng)
    X = random_vector_field(ch, rng)
    Y = random_vector_field(ch, rng)
    expected = (
        lie_bracket(N.apply(X), Y)
        + lie_bracket(X, N.apply(Y))
        - N.apply(lie_bracket(X, Y))
    )
    assert contracted_bracket(N, X, Y) == expected


def test_fn_decompose_round_trip():
    ch = chart_r3()
    rng = random.Random(12)
    K = random_vvf(ch, 1, rng)
    L = random_vvf(ch, 2, rng)
    functions = []
    differentials = []
    for j in range(ch.dim):
        xj = ch.coordinate_function(j)
        functions.append(lie_derivative(K, xj) + insertion(L, xj))
        dxj = ch.dx(j)
        differentials.append(lie_derivative(K, dxj) + insertion(L, dxj))
    D = fn_decompose(ch, functions, differentials)
    assert D.K == K
    assert D.L == L


def test_fn_decompose_rejects_malformed_actions():
    from fncalc.calculus import CalculusError

    ch = chart_r2()
    rng = random.Random(13)
    K = random_vvf(ch, 1, rng)
    functions = [lie_derivative(K, ch.coordinate_function(j)) for j in range(2)]
    # differential actions must be 2-forms; 1-forms are not realizable
    bad = [random_kform(ch, 1, rng) for _ in range(2)]
    with pytest.raises(CalculusError):
        fn_decompose(ch, functions, bad)
    with pytest.raises(CalculusError):
        fn_decompose(ch, functions[:1], bad)


def test_complexified_torsion_splits():
    """T of the complexified endomorphism on X+iY decomposes into real torsions."""
    ch = chart_r2()
    rng = random.Random(14)
    for J in (J0(), random_vvf(ch, 1, rng)):
        cJ = complexify_vvf(J)
        cch = cJ.chart
        i_unit = cch.scalar("i")
        T = nijenhuis_torsion(J)
        cT = nijenhuis_torsion(cJ)
        X = random_vector_field(ch, rng)
        Y = random_vector_field(ch, rng)
        X2 = random_vector_field(ch, rng)
        Y2 = random_vector_field(ch, rng)

        def lift(v):
            return VectorField(cch, v.components)

        Z = lift(X) + lift(Y).scaled(i_unit)
        W = lift(X2) + lift(Y2).scaled(i_unit)
        expected = (
            lift(T(X, X2))
            - lift(T(Y, Y2))
            + (lift(T(Y, X2)) + lift(T(X, Y2))).scaled(i_unit)
        )
        assert cT(Z, W) == expected


def test_j2_torsion_value():
    J = J2()
    ch = J.chart
    T = nijenhuis_torsion(J)
    assert T(ch.basis_vector(0), ch.basis_vector(2)) == ch.basis_vector(0)
