"""Named geometric constructions: idempotent, complex, product, foliation and
tangent-bundle algebroids, with the side identities each one is known to satisfy.

Every construction validates its structural preconditions exactly (raising a
typed error on violation) and returns a :class:`TangentAlgebroid` or the
relevant operator data; the accompanying theorems (torsion relations,
bracket closed forms, cohomology of the decomposition pieces) are verified
by the construction itself where cheap, and by the test suite everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebroid import AlgebroidError, TangentAlgebroid
from .calculus import (
    CalculusError,
    Chart,
    DerivationDeg1,
    KForm,
    VectorField,
    VectorValuedForm,
    complexify_vvf,
    contracted_bracket,
    exterior_d,
    fn_bracket,
    insertion,
    lie_bracket,
    lie_derivative,
    nijenhuis_torsion,
)
from .linalg import column_space_basis
from .scalar import ScalarExpr

__all__ = [
    "StructureError",
    "NotIdempotentError",
    "ImageNotInvolutiveError",
    "TorsionNotZeroError",
    "NotAlmostComplexError",
    "NotAlmostProductError",
    "NotSemisprayError",
    "NotConnectionError",
    "idempotent_algebroid",
    "idempotent_tensorial_operator",
    "complement_operator",
    "complex_projectors",
    "complex_algebroid",
    "product_algebroid",
    "FoliationData",
    "foliation_connection",
    "BigradedForm",
    "bigrade",
    "d_components",
    "TangentChartData",
    "tangent_chart",
    "tangent_data_for_chart",
    "semispray",
    "is_semispray",
    "connection_from_semispray",
    "connection_algebroid",
    "adapted_frames",
]


class StructureError(CalculusError):
    pass


class NotIdempotentError(StructureError):
    pass


class ImageNotInvolutiveError(StructureError):
    def __init__(self, pair: tuple[int, int], residual: VectorField):
        super().__init__(
            f"image is not involutive: (Id-N)[N e{pair[0] + 1}, N e{pair[1] + 1}] = {residual}"
        )
        self.pair = pair
        self.residual = residual


class TorsionNotZeroError(StructureError):
    pass


class NotAlmostComplexError(StructureError):
    pass


class NotAlmostProductError(StructureError):
    pass


class NotSemisprayError(StructureError):
    pass


class NotConnectionError(StructureError):
    pass


# ---------------------------------------------------------------------------
# Idempotent endomorphisms
# ---------------------------------------------------------------------------


def _require_idempotent(N: VectorValuedForm) -> None:
    if N.degree != 1:
        raise StructureError("expected a degree-1 endomorphism field")
    if N.compose(N) != N:
        raise NotIdempotentError("endomorphism does not satisfy N^2 = N")


def _require_image_involutive(N: VectorValuedForm) -> None:
    """Check (Id-N)[N e_a, N e_b] = 0 on basis images.

    Basis images generate Im N as a module, and Leibniz correction terms of
    module generators stay inside the distribution, so the basis check
    decides involutivity. Membership of v in Im N is decided by Nv = v,
    exact for idempotents.
    """
    chart = N.chart
    basis = chart.basis_vectors()
    images = [N.apply(e) for e in basis]
    for a, b in itertools.combinations(range(chart.dim), 2):
        br = lie_bracket(images[a], images[b])
        residual = br - N.apply(br)
        if not residual.is_zero:
            raise ImageNotInvolutiveError((a, b), residual)


def bracket_full_form(
    N: VectorValuedForm, X: VectorField, Y: VectorField
) -> VectorField:
    """The alternative closed form [NX,NY] + (Id-N)([NX,Y] + [X,NY])."""
    nx, ny = N.apply(X), N.apply(Y)
    middle = lie_bracket(nx, Y) + lie_bracket(X, ny)
    return lie_bracket(nx, ny) + middle - N.apply(middle)


def idempotent_algebroid(N: VectorValuedForm) -> TangentAlgebroid:
    """Anchor N, bracket [X,Y]_N + T_N(X,Y), for idempotent N with involutive image."""
    _require_idempotent(N)
    _require_image_involutive(N)
    chart = N.chart
    torsion = nijenhuis_torsion(N)
    # N T_N = T_N is forced by the involutivity of the image.
    composed = VectorValuedForm(
        chart,
        2,
        [
            _linear_combination(chart, N.matrix()[j], torsion.components)
            for j in range(chart.dim)
        ],
    )
    if composed != torsion:
        raise StructureError("internal: N T_N = T_N failed for an accepted N")
    alg = TangentAlgebroid(N, -torsion)
    basis = chart.basis_vectors()
    for a, b in itertools.combinations(range(chart.dim), 2):
        if alg.bracket(basis[a], basis[b]) != bracket_full_form(
            N, basis[a], basis[b]
        ):
            raise StructureError(
                "internal: closed-form bracket disagrees with [X,Y]_N + T_N"
            )
    return alg


def _linear_combination(
    chart: Chart, weights: Sequence[ScalarExpr], forms: Sequence[KForm]
) -> KForm:
    out = KForm.zero(chart, forms[0].degree)
    for w, f in zip(weights, forms):
        if not w.is_zero:
            out = out + f.scaled(w)
    return out


def idempotent_tensorial_operator(N: VectorValuedForm) -> DerivationDeg1:
    """The purely tensorial square-zero operator i_{-T_N} of an accepted idempotent."""
    _require_idempotent(N)
    _require_image_involutive(N)
    chart = N.chart
    return DerivationDeg1(
        VectorValuedForm.zero(chart, 1), -nijenhuis_torsion(N)
    )


def complement_operator(N: VectorValuedForm) -> DerivationDeg1:
    """L_{Id-N} for a torsion-free idempotent N; a cohomology operator."""
    _require_idempotent(N)
    torsion = nijenhuis_torsion(N)
    if not torsion.is_zero:
        raise TorsionNotZeroError("complement operator requires T_N = 0")
    chart = N.chart
    complement = VectorValuedForm.identity(chart) - N
    if not nijenhuis_torsion(complement).is_zero:
        raise StructureError("internal: T_{Id-N} must vanish when T_N does")
    return DerivationDeg1(complement, VectorValuedForm.zero(chart, 2))


# ---------------------------------------------------------------------------
# Complex and product structures
# ---------------------------------------------------------------------------


def _imaginary_scaled(K: VectorValuedForm, factor: ScalarExpr) -> VectorValuedForm:
    return K.scaled(factor)


def complex_projectors(
    J: VectorValuedForm, eps: Fraction | int = 1
) -> tuple[VectorValuedForm, VectorValuedForm]:
    """The projectors p± = (Id ∓ (i/eps) J)/2 on the complexified chart.

    Requires J^2 = -eps^2 Id. The torsion relation
    T_{p+} = -(1/(4 eps^2)) T_J is validated structurally.
    """
    eps = Fraction(eps)
    if eps == 0:
        raise NotAlmostComplexError("eps must be nonzero")
    chart = J.chart
    minus_eps2 = chart.const(-(eps * eps))
    if J.compose(J) != VectorValuedForm.identity(chart).scaled(minus_eps2):
        raise NotAlmostComplexError(f"endomorphism does not satisfy J^2 = -{eps * eps} Id")
    cchart = chart.complexify()
    Jc = complexify_vvf(J)
    identity = VectorValuedForm.identity(cchart)
    i_over_eps = cchart.scalar("i") * cchart.const(1 / eps)
    half = cchart.const(Fraction(1, 2))
    p_plus = (identity - Jc.scaled(i_over_eps)).scaled(half)
    p_minus = (identity + Jc.scaled(i_over_eps)).scaled(half)
    for p in (p_plus, p_minus):
        if p.compose(p) != p:
            raise StructureError("internal: projector is not idempotent")
    if p_plus + p_minus != identity or not p_plus.compose(p_minus).is_zero:
        raise StructureError("internal: projector algebra failed")
    relation = nijenhuis_torsion(Jc).scaled(
        cchart.const(Fraction(-1, 4) / (eps * eps))
    )
    if nijenhuis_torsion(p_plus) != relation:
        raise StructureError("internal: torsion relation for p+ failed")
    return p_plus, p_minus


def _first_nonzero_entry(form: VectorValuedForm) -> str:
    chart = form.chart
    for j, comp in enumerate(form.components):
        for key in sorted(comp.coeffs):
            value = comp.coeffs[key]
            if not value.is_zero:
                args = ",".join(f"e_{chart.coord_names[a]}" for a in key)
                return f"T({args}) has d/d{chart.coord_names[j]} component {value}"
    return ""


def complex_algebroid(
    J: VectorValuedForm, eps: Fraction | int = 1
) -> TangentAlgebroid:
    """The algebroid with anchor p+ on the complexified chart; requires T_J = 0."""
    eps_f = Fraction(eps)
    chart = J.chart
    if eps_f == 0 or J.compose(J) != VectorValuedForm.identity(chart).scaled(
        chart.const(-(eps_f * eps_f))
    ):
        raise NotAlmostComplexError(
            f"endomorphism does not satisfy J^2 = -{eps_f * eps_f} Id"
        )
    torsion = nijenhuis_torsion(J)
    if not torsion.is_zero:
        raise TorsionNotZeroError(
            "almost-complex structure is not integrable: torsion nonzero, "
            + _first_nonzero_entry(torsion)
        )
    p_plus, p_minus = complex_projectors(J, eps)
    alg = idempotent_algebroid(p_plus)
    if not alg.correction.is_zero:
        raise StructureError("internal: T_{p+} must vanish for integrable J")
    cchart = alg.chart
    basis = cchart.basis_vectors()
    # Holomorphic involutivity: p^-[p^+ e_a, p^+ e_b] = 0.
    for a, b in itertools.combinations(range(cchart.dim), 2):
        br = lie_bracket(p_plus.apply(basis[a]), p_plus.apply(basis[b]))
        if not p_minus.apply(br).is_zero:
            raise StructureError("internal: holomorphic fields fail to close")
    return alg


def complex_bracket_form(
    J: VectorValuedForm, alg: TangentAlgebroid, X: VectorField, Y: VectorField
) -> VectorField:
    """The closed form ([Z,W] - i [Z,W]_J)/2 on the complexified chart."""
    cchart = alg.chart
    Jc = complexify_vvf(J)
    half = cchart.const(Fraction(1, 2))
    i_unit = cchart.scalar("i")
    plain = lie_bracket(X, Y)
    contracted = contracted_bracket(Jc, X, Y)
    return (plain - contracted.scaled(i_unit)).scaled(half)


def product_algebroid(
    P: VectorValuedForm, eps: Fraction | int = 1
) -> TangentAlgebroid:
    """The algebroid with anchor p- = (Id - P/eps)/2; requires P^2 = eps^2 Id, T_P = 0."""
    eps = Fraction(eps)
    if eps == 0:
        raise NotAlmostProductError("eps must be nonzero")
    chart = P.chart
    eps2 = chart.const(eps * eps)
    if P.compose(P) != VectorValuedForm.identity(chart).scaled(eps2):
        raise NotAlmostProductError(f"endomorphism does not satisfy P^2 = {eps * eps} Id")
    torsion = nijenhuis_torsion(P)
    if not torsion.is_zero:
        raise TorsionNotZeroError(
            "almost-product structure is not integrable: torsion nonzero, "
            + _first_nonzero_entry(torsion)
        )
    half = chart.const(Fraction(1, 2))
    p_minus = (
        VectorValuedForm.identity(chart)
        - P.scaled(chart.const(1 / eps))
    ).scaled(half)
    alg = idempotent_algebroid(p_minus)
    if not alg.correction.is_zero:
        raise StructureError("internal: T_{p-} must vanish for integrable P")
    return alg


def product_bracket_form(
    P: VectorValuedForm, X: VectorField, Y: VectorField, eps: Fraction | int = 1
) -> VectorField:
    """The closed form ([X,Y] - [X,Y]_{P/eps})/2."""
    chart = P.chart
    eps = Fraction(eps)
    half = chart.const(Fraction(1, 2))
    scaled = P.scaled(chart.const(1 / eps))
    return (lie_bracket(X, Y) - contracted_bracket(scaled, X, Y)).scaled(half)


# ---------------------------------------------------------------------------
# Foliations via Ehresmann projectors
# ---------------------------------------------------------------------------


def adapted_frames(
    gamma: VectorValuedForm,
) -> tuple[list[VectorField], list[VectorField]]:
    """(horizontal, vertical) frames spanning ker(gamma) and im(gamma).

    Columns of Id-gamma span the kernel and columns of gamma span the
    image; a maximal independent set of each is selected by exact column
    reduction over the rational-function field.
    """
    _require_idempotent(gamma)
    chart = gamma.chart
    gmat = gamma.matrix()
    hmat = (VectorValuedForm.identity(chart) - gamma).matrix()

    def frame(mat) -> list[VectorField]:
        cols = column_space_basis(mat, chart)
        return [
            VectorField(chart, [mat[i][c] for i in range(chart.dim)]) for c in cols
        ]

    return frame(hmat), frame(gmat)


@dataclass(frozen=True)
class FoliationData:
    """Curvature, algebroid and bracket-table residuals of an Ehresmann projector."""

    curvature: VectorValuedForm
    algebroid: TangentAlgebroid
    horizontal: tuple[VectorField, ...]
    vertical: tuple[VectorField, ...]
    bracket_table: tuple[tuple[str, VectorField], ...]

    @property
    def table_passed(self) -> bool:
        return all(r.is_zero for _, r in self.bracket_table)


def foliation_connection(gamma: VectorValuedForm) -> FoliationData:
    """The foliation algebroid of a projector, with curvature R = T_gamma.

    The explicit four-case bracket table is re-verified on a frame adapted
    to ker(gamma) ⊕ im(gamma): horizontal pairs bracket to zero, vertical
    pairs to the plain Lie bracket, mixed pairs to the horizontal part of
    the Lie bracket.
    """
    alg = idempotent_algebroid(gamma)
    chart = gamma.chart
    curvature = nijenhuis_torsion(gamma)
    horizontal, vertical = adapted_frames(gamma)
    table: list[tuple[str, VectorField]] = []
    for a, b in itertools.combinations(range(len(horizontal)), 2):
        residual = alg.bracket(horizontal[a], horizontal[b])
        table.append((f"(h{a + 1},h{b + 1})", residual))
    for a, X in enumerate(horizontal):
        for b, Y in enumerate(vertical):
            br = lie_bracket(X, Y)
            expected = br - gamma.apply(br)
            table.append(
                (f"(h{a + 1},v{b + 1})", alg.bracket(X, Y) - expected)
            )
    for a, b in itertools.combinations(range(len(vertical)), 2):
        expected = lie_bracket(vertical[a], vertical[b])
        table.append(
            (f"(v{a + 1},v{b + 1})", alg.bracket(vertical[a], vertical[b]) - expected)
        )
    return FoliationData(
        curvature,
        alg,
        tuple(horizontal),
        tuple(vertical),
        tuple(table),
    )


@dataclass(frozen=True)
class BigradedForm:
    """A (p, q)-component of a form relative to the splitting of a projector."""

    form: KForm
    p: int
    q: int


def bigrade(omega: KForm, gamma: VectorValuedForm) -> list[BigradedForm]:
    """Decompose a form by horizontal/vertical argument counts.

    The (p, q)-component feeds every argument through Id-gamma except for q
    of them, which go through gamma, summed over all argument subsets. The
    components sum to the original form exactly.
    """
    _require_idempotent(gamma)
    chart = omega.chart
    d = omega.degree
    identity = VectorValuedForm.identity(chart)
    h_proj, v_proj = identity - gamma, gamma
    basis = chart.basis_vectors()
    out: list[BigradedForm] = []
    for q in range(d + 1):
        p = d - q
        coeffs = {}
        for key in itertools.combinations(range(chart.dim), d):
            value = chart.zero
            for vertical_slots in itertools.combinations(range(d), q):
                args = [
                    (v_proj if t in vertical_slots else h_proj).apply(basis[j])
                    for t, j in enumerate(key)
                ]
                value = value + omega(*args)
            if not value.is_zero:
                coeffs[key] = value
        component = KForm(chart, d, coeffs)
        if not component.is_zero:
            out.append(BigradedForm(component, p, q))
    total = KForm.zero(chart, d)
    for item in out:
        total = total + item.form
    if total != omega:
        raise StructureError("internal: bigraded components do not sum back")
    return out


def d_components(
    gamma: VectorValuedForm,
) -> tuple[DerivationDeg1, DerivationDeg1, DerivationDeg1]:
    """FN pairs of the three bigraded pieces of d: (d_{1,0}, d_{2,-1}, d_{0,1}).

    d_{1,0} = L_{Id-gamma} + i_{2R}, d_{2,-1} = i_{-R}, d_{0,1} = L_gamma + i_{-R},
    with R the curvature of the projector. Their generator actions are
    re-verified to sum to the exterior differential.
    """
    _require_idempotent(gamma)
    _require_image_involutive(gamma)
    chart = gamma.chart
    curvature = nijenhuis_torsion(gamma)
    two = chart.const(2)
    d10 = DerivationDeg1(
        VectorValuedForm.identity(chart) - gamma, curvature.scaled(two)
    )
    d2m1 = DerivationDeg1(VectorValuedForm.zero(chart, 1), -curvature)
    d01 = DerivationDeg1(gamma, -curvature)
    for j in range(chart.dim):
        for generator in (chart.coordinate_function(j), chart.dx(j)):
            total = d10(generator) + d2m1(generator) + d01(generator)
            if total != exterior_d(generator):
                raise StructureError(
                    "internal: bigraded components of d do not sum to d"
                )
    return d10, d2m1, d01


# ---------------------------------------------------------------------------
# Tangent structures, semisprays and connections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TangentChartData:
    """Chart (x^1..x^n, u^1..u^n) with vertical endomorphism and Liouville field."""

    chart: Chart
    vertical_endomorphism: VectorValuedForm
    liouville: VectorField

    @property
    def n(self) -> int:
        return self.chart.dim // 2


def tangent_chart(n: int) -> TangentChartData:
    """Canonical tangent-bundle data on a 2n-chart with coordinates x^i, u^i."""
    if n < 1:
        raise StructureError("n must be positive")
    names = tuple(f"x{i + 1}" for i in range(n)) + tuple(
        f"u{i + 1}" for i in range(n)
    )
    return tangent_data_for_chart(Chart(names))


def tangent_data_for_chart(chart: Chart) -> TangentChartData:
    """Tangent-bundle data on an even chart, fiber coordinates second.

    With the first n coordinates as base and the last n as fiber:
    J(∂x^i) = ∂u^i, J(∂u^i) = 0, C = Σ u^i ∂u^i. Verifies J^2 = 0,
    J C = 0, T_J = 0 and L_C J = -J.
    """
    if chart.dim % 2 or chart.dim == 0:
        raise StructureError("a tangent chart needs an even, positive dimension")
    n = chart.dim // 2
    zero, one = chart.zero, chart.one
    mat = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        mat[n + i][i] = one
    J = VectorValuedForm.from_matrix(chart, mat)
    C = VectorField(
        chart,
        [zero] * n + [chart.coordinate(n + i) for i in range(n)],
    )
    if not J.compose(J).is_zero:
        raise StructureError("internal: J^2 = 0 failed")
    if not J.apply(C).is_zero:
        raise StructureError("internal: J C = 0 failed")
    if not nijenhuis_torsion(J).is_zero:
        raise StructureError("internal: T_J = 0 failed")
    if fn_bracket(VectorValuedForm.from_vector_field(C), J) != -J:
        raise StructureError("internal: L_C J = -J failed")
    return TangentChartData(chart, J, C)


def semispray(tc: TangentChartData, force: Sequence[ScalarExpr]) -> VectorField:
    """S = u^i ∂x^i + f^i ∂u^i; satisfies J∘S = C by construction."""
    n = tc.n
    force = list(force)
    if len(force) != n:
        raise StructureError("one force component per base coordinate required")
    S = VectorField(
        tc.chart,
        [tc.chart.coordinate(n + i) for i in range(n)] + force,
    )
    if not is_semispray(tc, S):
        raise NotSemisprayError("constructed field fails J S = C")
    return S


def is_semispray(tc: TangentChartData, S: VectorField) -> bool:
    return tc.vertical_endomorphism.apply(S) == tc.liouville


def connection_from_semispray(
    tc: TangentChartData, S: VectorField
) -> VectorValuedForm:
    """The connection Gamma = -L_S J of a semispray, with its axioms verified."""
    if not is_semispray(tc, S):
        raise NotSemisprayError("field is not a semispray: J S != C")
    chart = tc.chart
    J = tc.vertical_endomorphism
    gamma = -fn_bracket(VectorValuedForm.from_vector_field(S), J)
    identity = VectorValuedForm.identity(chart)
    if gamma.compose(gamma) != identity:
        raise NotConnectionError("Gamma^2 != Id")
    if J.compose(gamma) != J or gamma.compose(J) != -J:
        raise NotConnectionError("J Gamma = J = -Gamma J failed")
    return gamma


def connection_algebroid(gamma: VectorValuedForm) -> TangentAlgebroid:
    """The algebroid of the vertical projector v = (Id - Gamma)/2 of a connection.

    Asserts the closed-form bracket ([A,B] - [A,B]_Gamma)/2 + T_Gamma(A,B)/4
    and the torsion relation T_v = T_Gamma/4.
    """
    chart = gamma.chart
    identity = VectorValuedForm.identity(chart)
    if gamma.compose(gamma) != identity:
        raise NotConnectionError("Gamma^2 != Id")
    half = chart.const(Fraction(1, 2))
    quarter = chart.const(Fraction(1, 4))
    v = (identity - gamma).scaled(half)
    alg = idempotent_algebroid(v)
    t_gamma = nijenhuis_torsion(gamma)
    if nijenhuis_torsion(v) != t_gamma.scaled(quarter):
        raise StructureError("internal: T_v = T_Gamma/4 failed")
    basis = chart.basis_vectors()
    for a, b in itertools.combinations(range(chart.dim), 2):
        A, B = basis[a], basis[b]
        closed = (
            lie_bracket(A, B) - contracted_bracket(gamma, A, B)
        ).scaled(half) + t_gamma(A, B).scaled(quarter)
        if alg.bracket(A, B) != closed:
            raise StructureError("internal: closed-form connection bracket failed")
    return alg
