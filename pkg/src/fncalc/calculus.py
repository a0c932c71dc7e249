"""Charts, vector fields, differential forms and the Frölicher-Nijenhuis calculus.

All objects live on a single coordinate chart with exact rational-function
coefficients (:mod:`fncalc.scalar`). Forms are stored sparsely over strictly
increasing multi-indices. The two operator brackets are implemented by
operator extraction: the Richardson-Nijenhuis bracket by acting with the
insertion commutator on coordinate differentials, the Frölicher-Nijenhuis
bracket by acting with the Lie-derivative commutator on coordinate
functions. Tensoriality of these extraction points is what makes the
component read-off valid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .scalar import (
    CoordinateRing,
    GaussianRational,
    ScalarError,
    ScalarExpr,
    coordinate_ring,
    parse_expr,
)

__all__ = [
    "CalculusError",
    "ChartMismatchError",
    "DecompositionError",
    "Chart",
    "VectorField",
    "KForm",
    "VectorValuedForm",
    "DerivationDeg1",
    "wedge",
    "exterior_d",
    "lie_bracket",
    "insertion",
    "lie_derivative",
    "graded_commutator_on",
    "rn_bracket",
    "fn_bracket",
    "nijenhuis_torsion",
    "contracted_bracket",
    "fn_decompose",
    "complexify",
    "conjugate",
]


class CalculusError(Exception):
    pass


class ChartMismatchError(CalculusError):
    pass


class DecompositionError(CalculusError):
    """The generator actions are inconsistent with any degree-1 derivation."""


@dataclass(frozen=True)
class Chart:
    """A single coordinate chart; ``is_complexified`` admits Gaussian coefficients."""

    coord_names: tuple[str, ...]
    is_complexified: bool = False

    def __post_init__(self):
        coordinate_ring(self.coord_names)  # validates the names

    @property
    def dim(self) -> int:
        return len(self.coord_names)

    @property
    def ring(self) -> CoordinateRing:
        return coordinate_ring(self.coord_names)

    def scalar(self, text: str) -> ScalarExpr:
        return parse_expr(
            text, self.coord_names, allow_imaginary=self.is_complexified
        )

    def const(self, value) -> ScalarExpr:
        return ScalarExpr.constant(self.ring, value)

    @property
    def zero(self) -> ScalarExpr:
        return self.const(0)

    @property
    def one(self) -> ScalarExpr:
        return self.const(1)

    def coordinate(self, j: int) -> ScalarExpr:
        return ScalarExpr.variable(self.ring, self.coord_names[j])

    def coordinate_function(self, j: int) -> "KForm":
        """x^j as a degree-0 form."""
        return KForm(self, 0, {(): self.coordinate(j)})

    def basis_vector(self, j: int) -> "VectorField":
        comps = [self.zero] * self.dim
        comps[j] = self.one
        return VectorField(self, tuple(comps))

    def basis_vectors(self) -> list["VectorField"]:
        return [self.basis_vector(j) for j in range(self.dim)]

    def dx(self, j: int) -> "KForm":
        return KForm(self, 1, {(j,): self.one})

    def complexify(self) -> "Chart":
        return Chart(self.coord_names, True)


def _check_chart(a, b) -> None:
    if a.chart != b.chart:
        raise ChartMismatchError(f"chart mismatch: {a.chart} vs {b.chart}")


def _check_real(chart: Chart, coeffs: Iterable[ScalarExpr]) -> None:
    if chart.is_complexified:
        return
    for c in coeffs:
        if c.has_imaginary:
            raise ScalarError(
                f"coefficient {c} has an imaginary part on a real chart"
            )


class VectorField:
    """A vector field, stored by its components along the coordinate frame."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Sequence[ScalarExpr]):
        components = tuple(components)
        if len(components) != chart.dim:
            raise CalculusError(
                f"{len(components)} components on a chart of dimension {chart.dim}"
            )
        _check_real(chart, components)
        self.chart = chart
        self.components = components

    @staticmethod
    def zero(chart: Chart) -> "VectorField":
        return VectorField(chart, [chart.zero] * chart.dim)

    def __add__(self, other: "VectorField") -> "VectorField":
        _check_chart(self, other)
        return VectorField(
            self.chart,
            [a + b for a, b in zip(self.components, other.components)],
        )

    def __sub__(self, other: "VectorField") -> "VectorField":
        _check_chart(self, other)
        return VectorField(
            self.chart,
            [a - b for a, b in zip(self.components, other.components)],
        )

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, [-a for a in self.components])

    def scaled(self, f: ScalarExpr) -> "VectorField":
        return VectorField(self.chart, [f * a for a in self.components])

    def __call__(self, f: ScalarExpr) -> ScalarExpr:
        """Directional derivative X(f)."""
        out = self.chart.zero
        for comp, name in zip(self.components, self.chart.coord_names):
            if not comp.is_zero:
                out = out + comp * f.partial(name)
        return out

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def conjugated(self) -> "VectorField":
        if not self.chart.is_complexified:
            raise CalculusError("conjugation requires a complexified chart")
        return VectorField(self.chart, [c.conjugate() for c in self.components])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorField)
            and self.chart == other.chart
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((self.chart, self.components))

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"

    def __repr__(self) -> str:
        return f"VectorField({self})"


class KForm:
    """A scalar-valued differential form, sparse over increasing multi-indices.

    Degrees above the chart dimension are representable (necessarily zero);
    degree-overflowing operations return such empty forms rather than raising.
    """

    __slots__ = ("chart", "degree", "coeffs")

    def __init__(
        self,
        chart: Chart,
        degree: int,
        coeffs: Mapping[tuple[int, ...], ScalarExpr] | None = None,
    ):
        if degree < 0:
            raise CalculusError("negative form degree")
        clean: dict[tuple[int, ...], ScalarExpr] = {}
        for key, value in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != degree or any(
                key[t] >= key[t + 1] for t in range(len(key) - 1)
            ):
                raise CalculusError(f"bad multi-index {key} for degree {degree}")
            if key and (key[0] < 0 or key[-1] >= chart.dim):
                raise CalculusError(f"multi-index {key} out of range")
            if not value.is_zero:
                clean[key] = value
        _check_real(chart, clean.values())
        self.chart = chart
        self.degree = degree
        self.coeffs = clean

    @staticmethod
    def zero(chart: Chart, degree: int) -> "KForm":
        return KForm(chart, degree)

    @staticmethod
    def function(chart: Chart, f: ScalarExpr) -> "KForm":
        return KForm(chart, 0, {(): f})

    def __add__(self, other: "KForm") -> "KForm":
        _check_chart(self, other)
        if self.degree != other.degree:
            raise CalculusError("adding forms of different degrees")
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            out[key] = out[key] + value if key in out else value
        return KForm(self.chart, self.degree, out)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return KForm(
            self.chart, self.degree, {k: -v for k, v in self.coeffs.items()}
        )

    def scaled(self, f: ScalarExpr) -> "KForm":
        return KForm(
            self.chart, self.degree, {k: f * v for k, v in self.coeffs.items()}
        )

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, KForm)
            and self.chart == other.chart
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(
            (self.chart, self.degree, tuple(sorted(self.coeffs.items(), key=lambda t: t[0])))
        )

    def __call__(self, *fields: VectorField) -> ScalarExpr:
        """Multilinear antisymmetric evaluation on vector fields."""
        if len(fields) != self.degree:
            raise CalculusError(
                f"degree-{self.degree} form evaluated on {len(fields)} fields"
            )
        for X in fields:
            _check_chart(self, X)
        if self.degree == 0:
            return self.coeffs.get((), self.chart.zero)
        out = self.chart.zero
        for key, value in self.coeffs.items():
            minor = [[X.components[j] for j in key] for X in fields]
            d = _det(minor, self.chart)
            if not d.is_zero:
                out = out + value * d
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        names = self.chart.coord_names
        parts = []
        for key in sorted(self.coeffs):
            basis = "^".join(f"d{names[j]}" for j in key)
            coeff = str(self.coeffs[key])
            parts.append(f"({coeff}) {basis}".strip())
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"KForm<{self.degree}>({self})"


def _det(matrix: list[list[ScalarExpr]], chart: Chart) -> ScalarExpr:
    n = len(matrix)
    if n == 0:
        return chart.one
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    out = chart.zero
    for col, head in enumerate(matrix[0]):
        if head.is_zero:
            continue
        minor = [row[:col] + row[col + 1 :] for row in matrix[1:]]
        term = head * _det(minor, chart)
        out = out - term if col % 2 else out + term
    return out


class VectorValuedForm:
    """A vector-valued form: one coefficient ``KForm`` per target coordinate.

    Degree 0 is a vector field in disguise, degree 1 an endomorphism field.
    """

    __slots__ = ("chart", "degree", "components")

    def __init__(self, chart: Chart, degree: int, components: Sequence[KForm]):
        components = tuple(components)
        if len(components) != chart.dim:
            raise CalculusError("one component form per target coordinate required")
        for comp in components:
            if comp.chart != chart or comp.degree != degree:
                raise CalculusError("component forms must share chart and degree")
        self.chart = chart
        self.degree = degree
        self.components = components

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(chart: Chart, degree: int) -> "VectorValuedForm":
        return VectorValuedForm(
            chart, degree, [KForm.zero(chart, degree)] * chart.dim
        )

    @staticmethod
    def from_matrix(
        chart: Chart, matrix: Sequence[Sequence[ScalarExpr]]
    ) -> "VectorValuedForm":
        """Degree-1 form from a matrix; ``matrix[i][j]`` multiplies ∂_i in the image of ∂_j."""
        if len(matrix) != chart.dim or any(len(row) != chart.dim for row in matrix):
            raise CalculusError("matrix shape must equal the chart dimension")
        comps = [
            KForm(
                chart,
                1,
                {(j,): matrix[i][j] for j in range(chart.dim)},
            )
            for i in range(chart.dim)
        ]
        return VectorValuedForm(chart, 1, comps)

    @staticmethod
    def identity(chart: Chart) -> "VectorValuedForm":
        return VectorValuedForm(chart, 1, [chart.dx(j) for j in range(chart.dim)])

    @staticmethod
    def from_vector_field(X: VectorField) -> "VectorValuedForm":
        return VectorValuedForm(
            X.chart, 0, [KForm.function(X.chart, c) for c in X.components]
        )

    def to_vector_field(self) -> VectorField:
        if self.degree != 0:
            raise CalculusError("only a degree-0 form is a vector field")
        return VectorField(
            self.chart,
            [c.coeffs.get((), self.chart.zero) for c in self.components],
        )

    def matrix(self) -> list[list[ScalarExpr]]:
        if self.degree != 1:
            raise CalculusError("only a degree-1 form has a matrix")
        return [
            [comp.coeffs.get((j,), self.chart.zero) for j in range(self.chart.dim)]
            for comp in self.components
        ]

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "VectorValuedForm") -> "VectorValuedForm":
        _check_chart(self, other)
        if self.degree != other.degree:
            raise CalculusError("adding vector-valued forms of different degrees")
        return VectorValuedForm(
            self.chart,
            self.degree,
            [a + b for a, b in zip(self.components, other.components)],
        )

    def __sub__(self, other: "VectorValuedForm") -> "VectorValuedForm":
        return self + (-other)

    def __neg__(self) -> "VectorValuedForm":
        return VectorValuedForm(
            self.chart, self.degree, [-c for c in self.components]
        )

    def scaled(self, f: ScalarExpr) -> "VectorValuedForm":
        return VectorValuedForm(
            self.chart, self.degree, [c.scaled(f) for c in self.components]
        )

    def scaled_by(self, q) -> "VectorValuedForm":
        """Scale by a rational constant."""
        return self.scaled(self.chart.const(Fraction(q)))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorValuedForm)
            and self.chart == other.chart
            and self.degree == other.degree
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((self.chart, self.degree, self.components))

    def __call__(self, *fields: VectorField) -> VectorField:
        return VectorField(self.chart, [c(*fields) for c in self.components])

    def apply(self, X: VectorField) -> VectorField:
        """Endomorphism action; degree-1 convenience alias."""
        if self.degree != 1:
            raise CalculusError("apply() requires a degree-1 form")
        return self(X)

    def compose(self, other: "VectorValuedForm") -> "VectorValuedForm":
        """Endomorphism composition self∘other of two degree-1 forms."""
        if self.degree != 1 or other.degree != 1:
            raise CalculusError("compose() requires degree-1 forms")
        _check_chart(self, other)
        a, b = self.matrix(), other.matrix()
        n = self.chart.dim
        prod = [
            [
                sum(
                    (a[i][k] * b[k][j] for k in range(n)),
                    start=self.chart.zero,
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
        return VectorValuedForm.from_matrix(self.chart, prod)

    def __str__(self) -> str:
        names = self.chart.coord_names
        parts = [
            f"d{names[i]}<-({comp})"
            for i, comp in enumerate(self.components)
            if not comp.is_zero
        ]
        return "; ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"VectorValuedForm<{self.degree}>({self})"


@dataclass(frozen=True)
class DerivationDeg1:
    """A degree-1 derivation by its FN data: D = L_K + i_L."""

    K: VectorValuedForm  # degree 1
    L: VectorValuedForm  # degree 2

    def __post_init__(self):
        if self.K.chart != self.L.chart:
            raise ChartMismatchError("K and L live on different charts")
        if self.K.degree != 1 or self.L.degree != 2:
            raise CalculusError("FN data must have degrees (1, 2)")

    @property
    def chart(self) -> Chart:
        return self.K.chart

    def __call__(self, omega: KForm) -> KForm:
        return lie_derivative(self.K, omega) + insertion(self.L, omega)


# ---------------------------------------------------------------------------
# Exterior algebra
# ---------------------------------------------------------------------------


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]):
    """Sorted merge of two increasing index tuples with the shuffle sign."""
    if set(left) & set(right):
        return None, 0
    combined = left + right
    order = sorted(range(len(combined)), key=lambda t: combined[t])
    inversions = sum(
        1
        for a in range(len(order))
        for b in range(a + 1, len(order))
        if order[a] > order[b]
    )
    return tuple(sorted(combined)), -1 if inversions % 2 else 1


def wedge(a: KForm, b: KForm) -> KForm:
    _check_chart(a, b)
    chart = a.chart
    out: dict[tuple[int, ...], ScalarExpr] = {}
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            key, sign = _merge_sign(ka, kb)
            if sign == 0:
                continue
            term = va * vb
            if sign < 0:
                term = -term
            out[key] = out[key] + term if key in out else term
    return KForm(chart, a.degree + b.degree, out)


def exterior_d(a: KForm) -> KForm:
    chart = a.chart
    out: dict[tuple[int, ...], ScalarExpr] = {}
    for key, value in a.coeffs.items():
        for j, name in enumerate(chart.coord_names):
            dv = value.partial(name)
            if dv.is_zero:
                continue
            merged, sign = _merge_sign((j,), key)
            if sign == 0:
                continue
            term = dv if sign > 0 else -dv
            out[merged] = out[merged] + term if merged in out else term
    return KForm(chart, a.degree + 1, out)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _check_chart(X, Y)
    return VectorField(
        X.chart,
        [X(Yj) - Y(Xj) for Xj, Yj in zip(X.components, Y.components)],
    )


# ---------------------------------------------------------------------------
# Insertion and Lie derivative
# ---------------------------------------------------------------------------


def _shuffles(indices: tuple[int, ...], first: int):
    """Split ``indices`` into (first, rest) blocks over all shuffles with sign."""
    n = len(indices)
    positions = range(n)
    for chosen in itertools.combinations(positions, first):
        sign = 1 if sum(chosen[t] - t for t in range(first)) % 2 == 0 else -1
        rest = [indices[p] for p in positions if p not in chosen]
        yield sign, tuple(indices[p] for p in chosen), tuple(rest)


def _eval_with_prefix(
    omega: KForm, V: VectorField, basis_rest: tuple[int, ...]
) -> ScalarExpr:
    """omega(V, e_{j_1}, ..., e_{j_{p-1}}) expanded over the components of V."""
    chart = omega.chart
    out = chart.zero
    for m, comp in enumerate(V.components):
        if comp.is_zero:
            continue
        key, sign = _merge_sign((m,), basis_rest)
        if sign == 0:
            continue
        coeff = omega.coeffs.get(key)
        if coeff is None:
            continue
        term = comp * coeff
        out = out - term if sign < 0 else out + term
    return out


def insertion(K: VectorValuedForm, omega: KForm) -> KForm:
    """The signed shuffle-sum insertion i_K, a tensorial derivation."""
    _check_chart(K, omega)
    chart = K.chart
    g, p = K.degree, omega.degree
    result_degree = max(g + p - 1, 0)
    if p == 0 or result_degree > chart.dim:
        return KForm.zero(chart, result_degree)
    out: dict[tuple[int, ...], ScalarExpr] = {}
    for key in itertools.combinations(range(chart.dim), result_degree):
        total = chart.zero
        for sign, head, rest in _shuffles(key, g):
            value = K(*[chart.basis_vector(j) for j in head])
            term = _eval_with_prefix(omega, value, rest)
            if term.is_zero:
                continue
            total = total - term if sign < 0 else total + term
        if not total.is_zero:
            out[key] = total
    return KForm(chart, result_degree, out)


def lie_derivative(K: VectorValuedForm, omega: KForm) -> KForm:
    """L_K = [i_K, d] as a graded commutator; classical Lie derivative at degree 0."""
    _check_chart(K, omega)
    first = insertion(K, exterior_d(omega))
    inserted = insertion(K, omega)
    if inserted.is_zero:
        # i_K omega vanished identically (e.g. omega is a function and K has
        # degree 0); its clipped degree may not match, so skip the d term.
        return first
    second = exterior_d(inserted)
    # i_K has degree (deg K - 1); the commutator sign follows.
    if (K.degree - 1) % 2 == 0:
        return first - second
    return first + second


def graded_commutator_on(
    op1: tuple[Callable[[KForm], KForm], int],
    op2: tuple[Callable[[KForm], KForm], int],
    omega: KForm,
) -> KForm:
    """[D1, D2] omega for two operators given with their declared degrees."""
    (f1, d1), (f2, d2) = op1, op2
    first = f1(f2(omega))
    second = f2(f1(omega))
    if (d1 * d2) % 2 == 0:
        return first - second
    return first + second


# ---------------------------------------------------------------------------
# The two brackets and the torsion
# ---------------------------------------------------------------------------


def rn_bracket(A: VectorValuedForm, B: VectorValuedForm) -> VectorValuedForm:
    """[A, B]_RN, extracted from [i_A, i_B] acting on coordinate differentials."""
    _check_chart(A, B)
    chart = A.chart
    degree = A.degree + B.degree - 1
    da, db = A.degree - 1, B.degree - 1
    comps = []
    for j in range(chart.dim):
        comps.append(
            graded_commutator_on(
                (lambda w, A=A: insertion(A, w), da),
                (lambda w, B=B: insertion(B, w), db),
                chart.dx(j),
            )
        )
    return VectorValuedForm(chart, degree, comps)


def fn_bracket(A: VectorValuedForm, B: VectorValuedForm) -> VectorValuedForm:
    """[A, B]_FN, extracted from [L_A, L_B] acting on coordinate functions."""
    _check_chart(A, B)
    chart = A.chart
    degree = A.degree + B.degree
    comps = []
    for j in range(chart.dim):
        comps.append(
            graded_commutator_on(
                (lambda w, A=A: lie_derivative(A, w), A.degree),
                (lambda w, B=B: lie_derivative(B, w), B.degree),
                chart.coordinate_function(j),
            )
        )
    return VectorValuedForm(chart, degree, comps)


def nijenhuis_torsion(N: VectorValuedForm) -> VectorValuedForm:
    """T_N(X,Y) = [NX,NY] - N[NX,Y] - N[X,NY] + N^2[X,Y] on basis pairs."""
    if N.degree != 1:
        raise CalculusError("torsion is defined for degree-1 forms")
    chart = N.chart
    comps = [dict() for _ in range(chart.dim)]
    basis = chart.basis_vectors()
    images = [N.apply(e) for e in basis]
    for a, b in itertools.combinations(range(chart.dim), 2):
        X, Y = basis[a], basis[b]
        value = (
            lie_bracket(images[a], images[b])
            - N.apply(lie_bracket(images[a], Y))
            - N.apply(lie_bracket(X, images[b]))
        )
        # [X, Y] = 0 for coordinate fields, so the N^2 term drops out here.
        for j, c in enumerate(value.components):
            if not c.is_zero:
                comps[j][(a, b)] = c
    return VectorValuedForm(
        chart, 2, [KForm(chart, 2, c) for c in comps]
    )


def contracted_bracket(
    K: VectorValuedForm, X: VectorField, Y: VectorField
) -> VectorField:
    """[X,Y]_K = [KX,Y] + [X,KY] - K[X,Y]."""
    if K.degree != 1:
        raise CalculusError("the contracted bracket needs a degree-1 form")
    _check_chart(K, X)
    _check_chart(K, Y)
    return (
        lie_bracket(K.apply(X), Y)
        + lie_bracket(X, K.apply(Y))
        - K.apply(lie_bracket(X, Y))
    )


# ---------------------------------------------------------------------------
# FN decomposition of degree-1 derivations
# ---------------------------------------------------------------------------


def fn_decompose(
    chart: Chart,
    action_on_functions: Sequence[KForm],
    action_on_differentials: Sequence[KForm],
) -> DerivationDeg1:
    """Recover the unique pair (K, L) with D = L_K + i_L from generator actions.

    ``action_on_functions[j]`` is D(x^j) (a 1-form) and
    ``action_on_differentials[j]`` is D(dx^j) (a 2-form). The reconstruction
    is verified by re-applying L_K + i_L to the generators; an inconsistent
    input raises :class:`DecompositionError`.
    """
    if len(action_on_functions) != chart.dim or len(
        action_on_differentials
    ) != chart.dim:
        raise CalculusError("one generator action per coordinate required")
    K = VectorValuedForm(chart, 1, action_on_functions)
    l_comps = []
    for j in range(chart.dim):
        l_comps.append(
            action_on_differentials[j] - lie_derivative(K, chart.dx(j))
        )
    L = VectorValuedForm(chart, 2, l_comps)
    D = DerivationDeg1(K, L)
    for j in range(chart.dim):
        if D(chart.coordinate_function(j)) != action_on_functions[j]:
            raise DecompositionError(
                f"reconstructed derivation disagrees on coordinate {j}"
            )
        if D(chart.dx(j)) != action_on_differentials[j]:
            raise DecompositionError(
                f"reconstructed derivation disagrees on differential {j}"
            )
    return D


# ---------------------------------------------------------------------------
# Complexification
# ---------------------------------------------------------------------------


def complexify(chart: Chart) -> Chart:
    return chart.complexify()


def conjugate(Z: VectorField) -> VectorField:
    return Z.conjugated()


def complexify_vvf(K: VectorValuedForm) -> VectorValuedForm:
    """The same vector-valued form regarded on the complexified chart."""
    chart = K.chart.complexify()
    comps = [KForm(chart, K.degree, dict(c.coeffs)) for c in K.components]
    return VectorValuedForm(chart, K.degree, comps)
