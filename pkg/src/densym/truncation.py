"""Truncated test spaces, matrix realizations, and brute-force equivariance.

Every identity in this package is a polynomial identity in finitely many
jets of the coefficients, so checking it exactly on a large enough truncated
basis is decisive.  The truncation is explicit: maps whose image leaves the
window raise instead of silently cutting off, and equivariance defects are
only ever evaluated on the sub-basis whose image provably stays inside.
"""
from __future__ import annotations

from fractions import Fraction

from . import rings
from .densities import (
    Density,
    DensityOperator,
    VectorField,
    lie_derivative_density,
    lie_derivative_operator,
)
from .errors import InapplicableSymmetryError, TruncationOverflowError
from .operators import CATALOG
from .linalg import nullspace, rank
from .rings import CIRCLE, LINE, PolyFn, TrigFn, rat


def ring_basis(space: str, M: int):
    """Monomial list: x^0..x^M on the line; 1, cos x, sin x, ... on the circle."""
    if space == LINE:
        return [PolyFn.monomial(t) for t in range(M + 1)]
    out = [TrigFn.constant(1)]
    for n in range(1, M + 1):
        out.append(TrigFn.cosine(n))
        out.append(TrigFn.sine(n))
    return out


def ring_dim(space: str, M: int) -> int:
    return M + 1 if space == LINE else 2 * M + 1


def ring_vector(fn, M: int):
    """Exact coordinates of a ring element in the monomial list, or overflow."""
    if fn.space == LINE:
        if fn.degree is not None and fn.degree > M:
            raise TruncationOverflowError(
                f"polynomial degree {fn.degree} exceeds the window M={M}"
            )
        return [fn.coefficient(t) for t in range(M + 1)]
    if fn.max_frequency > M:
        raise TruncationOverflowError(
            f"frequency {fn.max_frequency} exceeds the window M={M}"
        )
    vec = [fn.mean_coeff]
    for n in range(1, M + 1):
        vec.append(fn.cos.get(n, Fraction(0)))
        vec.append(fn.sin.get(n, Fraction(0)))
    return vec


def ring_content_size(fn) -> int:
    """Degree (line) or max frequency (circle); 0 for constants and zero."""
    if fn.space == LINE:
        return fn.degree or 0
    return fn.max_frequency


class TruncatedBasis:
    """Finite model of D^k_{lam,mu}: elements b_{i,m} = monomial_m * d^i.

    Ordering is i ascending then m ascending; this ordering is part of any
    serialized output and must not change.
    """

    def __init__(self, k: int, M: int, space: str, lam, mu):
        self.k = k
        self.M = M
        self.space = space
        self.lam = rat(lam)
        self.mu = rat(mu)
        self.monomials = ring_basis(space, M)
        self.elements = []
        z = rings.zero(space)
        for i in range(k + 1):
            for mono in self.monomials:
                coeffs = [z] * i + [mono]
                self.elements.append(DensityOperator(self.lam, self.mu, coeffs))

    @property
    def dim(self) -> int:
        return (self.k + 1) * len(self.monomials)

    def vector_of(self, A: DensityOperator):
        if (A.lam, A.mu) != (self.lam, self.mu):
            raise TruncationOverflowError("operator weights do not match the basis")
        if A.order > self.k and not all(c.is_zero for c in A.coeffs[self.k + 1:]):
            raise TruncationOverflowError(
                f"operator order {A.order} exceeds the window k={self.k}"
            )
        vec = []
        for i in range(self.k + 1):
            vec.extend(ring_vector(A.coefficient(i), self.M))
        return vec

    def operator_of(self, vec):
        n = len(self.monomials)
        coeffs = []
        for i in range(self.k + 1):
            fn = rings.zero(self.space)
            for m, c in enumerate(vec[i * n:(i + 1) * n]):
                if c:
                    fn = fn + rat(c) * self.monomials[m]
            coeffs.append(fn)
        return DensityOperator(self.lam, self.mu, coeffs)

    def density_vector(self, phi: Density):
        return ring_vector(phi.value, self.M)

    def safe_elements(self, X: VectorField):
        """Basis elements whose image under the X-action stays in the window."""
        growth = max(ring_content_size(X.value) - (1 if self.space == LINE else 0), 0)
        keep = []
        for b in self.elements:
            size = max(ring_content_size(c) for c in b.coeffs)
            if size + growth <= self.M:
                keep.append(b)
        return keep


class SymmetryMap:
    """A linear map on a truncated module, carried as an exact callable.

    The matrix (columns = images of basis elements) is materialized lazily;
    identity checks act on basis elements directly, which is much cheaper
    than matrix products.
    """

    def __init__(self, basis: TruncatedBasis, func, name="T", nonlocal_part=False):
        self.basis = basis
        self.func = func
        self.name = name
        self.nonlocal_part = nonlocal_part
        self._columns = None

    def __call__(self, A: DensityOperator) -> DensityOperator:
        return self.func(A)

    @property
    def columns(self):
        if self._columns is None:
            self._columns = [self.basis.vector_of(self.func(b)) for b in self.basis.elements]
        return self._columns

    @property
    def matrix(self):
        cols = self.columns
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.basis.dim)]

    def flat(self):
        return [v for col in self.columns for v in col]

    def compose(self, other: "SymmetryMap") -> "SymmetryMap":
        if other.basis is not self.basis:
            raise ValueError("maps live on different bases")
        return SymmetryMap(
            self.basis, lambda A: self.func(other.func(A)),
            name=f"{self.name}*{other.name}",
            nonlocal_part=self.nonlocal_part or other.nonlocal_part,
        )

    __matmul__ = compose

    def __add__(self, other):
        return SymmetryMap(
            self.basis, lambda A: self.func(A) + other.func(A),
            name=f"({self.name}+{other.name})",
            nonlocal_part=self.nonlocal_part or other.nonlocal_part,
        )

    def __sub__(self, other):
        return SymmetryMap(
            self.basis, lambda A: self.func(A) - other.func(A),
            name=f"({self.name}-{other.name})",
            nonlocal_part=self.nonlocal_part or other.nonlocal_part,
        )

    def __mul__(self, scalar):
        q = rat(scalar)
        return SymmetryMap(self.basis, lambda A: q * self.func(A),
                           name=f"{scalar}*{self.name}",
                           nonlocal_part=self.nonlocal_part)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def equals(self, other: "SymmetryMap") -> bool:
        return all(
            self.func(b) == other.func(b) for b in self.basis.elements
        )

    def is_zero(self) -> bool:
        return all(self.func(b).is_zero for b in self.basis.elements)


def realize(name_or_func, basis: TruncatedBasis) -> SymmetryMap:
    """Realize a cataloged endomorphism (by name) or a raw callable."""
    if callable(name_or_func) and not isinstance(name_or_func, str):
        return SymmetryMap(basis, name_or_func)
    entry = CATALOG.get(name_or_func)
    if entry is None:
        raise KeyError(f"unknown catalog name {name_or_func!r}")
    if entry.kind != "endo":
        raise InapplicableSymmetryError(
            f"{name_or_func!r} is a {entry.kind}, not an endomorphism"
        )
    if not entry.applies(basis.k, basis.lam, basis.mu, basis.space):
        raise InapplicableSymmetryError(
            f"{name_or_func!r} is not defined at k={basis.k}, "
            f"(lam, mu)=({basis.lam}, {basis.mu}) on the {basis.space}"
        )
    return SymmetryMap(basis, entry.make(basis.k, basis.lam, basis.mu),
                       name=name_or_func, nonlocal_part=(name_or_func == "L"))


# ----------------------------------------------------------------------
# generator families and equivariance defects
# ----------------------------------------------------------------------

def line_fields(max_degree: int = 3):
    """d/dx, x d/dx, ..., x^max_degree d/dx."""
    return [VectorField(PolyFn.monomial(p)) for p in range(max_degree + 1)]


def circle_fields(N: int = 2):
    """d/dx plus cos(nx) d/dx, sin(nx) d/dx for 1 <= n <= N."""
    if N < 2:
        raise ValueError("the circle family needs N >= 2")
    fields = [VectorField(TrigFn.constant(1))]
    for n in range(1, N + 1):
        fields.append(VectorField(TrigFn.cosine(n)))
        fields.append(VectorField(TrigFn.sine(n)))
    return fields


def generator_family(space: str, N: int = 2):
    return line_fields(3) if space == LINE else circle_fields(N)


def equivariance_defect(T: SymmetryMap, X: VectorField):
    """Matrix of T o L_X - L_X o T on the safe sub-basis (columns per element).

    The zero matrix is equivalent to equivariance at this truncation.
    """
    basis = T.basis
    safe = basis.safe_elements(X)
    if not safe:
        raise TruncationOverflowError("no safe sub-basis: window M is too small")
    cols = []
    for b in safe:
        lhs = T.func(lie_derivative_operator(X, b))
        rhs = lie_derivative_operator(X, T.func(b))
        cols.append(basis.vector_of(lhs - rhs))
    return cols


def projection_defect(pi_apply, basis: TruncatedBasis, X: VectorField):
    """Same defect for a map into densities."""
    safe = basis.safe_elements(X)
    if not safe:
        raise TruncationOverflowError("no safe sub-basis: window M is too small")
    cols = []
    for b in safe:
        lhs = pi_apply(lie_derivative_operator(X, b))
        rhs = lie_derivative_density(X, pi_apply(b))
        cols.append(ring_vector((lhs - rhs).value, basis.M))
    return cols


def bilinear_defect(J, space: str, M: int, fields):
    """Equivariance defect of a bilinear operator on density pairs.

    Checks J(L_X phi, psi) + J(phi, L_X psi) = L_X J(phi, psi) on all pairs of
    basis densities whose products stay inside the window.
    """
    monos = ring_basis(space, M)
    cols = []
    for X in fields:
        growth = ring_content_size(X.value)
        for f1 in monos:
            for f2 in monos:
                if ring_content_size(f1) + ring_content_size(f2) + growth > M:
                    continue
                phi = Density(J.nu, f1)
                psi = Density(J.lam, f2)
                lhs = J(lie_derivative_density(X, phi), psi) + \
                    J(phi, lie_derivative_density(X, psi))
                rhs = lie_derivative_density(X, J(phi, psi))
                cols.append(ring_vector((lhs - rhs).value, M))
    return cols


# ----------------------------------------------------------------------
# brute-force classification of local symmetries
# ----------------------------------------------------------------------

def falling(r: int, l: int) -> int:
    out = 1
    for t in range(l):
        out *= (r - t)
    return out


def component_unknowns(k: int):
    """Index map for the ansatz unknowns t[r,l], 0 <= l <= r <= k."""
    return [(r, l) for r in range(k + 1) for l in range(r + 1)]


def componentwise_map(coeffs: dict, k: int, lam, mu, space: str):
    """The translation/scaling-invariant ansatz as an operator map.

    coeffs maps (r, l) to the constant multiplying D^l on the degree-r
    component; the action on coefficient lists is
    (T A)_m = sum_l coeffs[m+l, l] * fall(m+l, l) * a_{m+l}^(l).
    """
    lam, mu = rat(lam), rat(mu)

    def act(A: DensityOperator) -> DensityOperator:
        out = [rings.zero(space) for _ in range(k + 1)]
        for (r, l), t in coeffs.items():
            if t == 0:
                continue
            src = A.coefficient(r)
            if src.is_zero:
                continue
            out[r - l] = out[r - l] + (t * falling(r, l)) * src.diff(l)
        return DensityOperator(lam, mu, out)

    return act


def brute_force_fields(space: str):
    # the ansatz already commutes with d/dx and x d/dx, so only the
    # quadratic and cubic directions (or their trig stand-ins) constrain it
    if space == LINE:
        return [VectorField(PolyFn.monomial(2)), VectorField(PolyFn.monomial(3))]
    return [
        VectorField(TrigFn.cosine(1)), VectorField(TrigFn.sine(1)),
        VectorField(TrigFn.cosine(2)), VectorField(TrigFn.sine(2)),
    ]


def brute_force_local_symmetries(k: int, lam, mu, space: str = LINE, M: int | None = None):
    """Exact nullspace of the equivariance conditions on the truncated basis.

    Independent of the recurrence route: the commutation relations are imposed
    as matrix identities on basis elements.  Returns (dimension, maps) where
    maps are SymmetryMap representatives on a TruncatedBasis.
    """
    if M is None:
        M = k + 4
    if M < k + 4:
        raise ValueError(f"window M={M} too small; need M >= k+4 = {k + 4}")
    lam, mu = rat(lam), rat(mu)
    basis = TruncatedBasis(k, M, space, lam, mu)
    idx = {u: i for i, u in enumerate(component_unknowns(k))}
    elementary = [
        componentwise_map({u: Fraction(1)}, k, lam, mu, space)
        for u in component_unknowns(k)
    ]
    rows = []
    for X in brute_force_fields(space):
        for b in basis.safe_elements(X):
            lie_b = lie_derivative_operator(X, b)
            defect_cols = []
            for e in elementary:
                lhs = e(lie_b)
                rhs = lie_derivative_operator(X, e(b))
                defect_cols.append(basis.vector_of(lhs - rhs))
            for coord in range(basis.dim):
                row = [defect_cols[u][coord] for u in range(len(idx))]
                if any(row):
                    rows.append(row)
    solutions = nullspace(rows, len(idx))
    maps = []
    for sol in solutions:
        coeffs = {u: sol[i] for u, i in idx.items() if sol[i] != 0}
        maps.append(SymmetryMap(
            basis, componentwise_map(coeffs, k, lam, mu, space), name="T"
        ))
    return len(solutions), maps


# ----------------------------------------------------------------------
# invariant linear functionals on densities (truncated)
# ----------------------------------------------------------------------

def invariant_functionals_dimension(lam, N: int) -> int:
    """Dimension of the invariant functionals on trig densities of frequency <= N.

    Counts linear functionals annihilating every Lie derivative computable
    inside the window; the unique surviving functional at weight 1 is the
    integral of 1-forms.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    lam = rat(lam)
    monos = ring_basis(CIRCLE, N)
    rows = []
    for X in circle_fields(N):
        n = ring_content_size(X.value)
        for mono in monos:
            if ring_content_size(mono) + n > N:
                continue
            phi = Density(lam, mono)
            rows.append(ring_vector(lie_derivative_density(X, phi).value, N))
    return ring_dim(CIRCLE, N) - rank(rows)
