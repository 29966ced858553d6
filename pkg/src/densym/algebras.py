"""Finite associative algebras spanned by realized symmetries.

Structure constants are computed by exact linear solves of each pairwise
product against the given basis.  Identification with the four reference
matrix algebras (and their direct sums with copies of the scalars) goes
through exact invariants: dimension, radical (via the regular trace form,
valid in characteristic zero), center, and commutativity.  The explicit
basis changes printed for the flagship cases are verified in the test suite
on top of this.
"""
from __future__ import annotations

import io
import csv
from dataclasses import dataclass
from fractions import Fraction

from .errors import SpanNotClosedError
from .linalg import nullspace, rank, rref


@dataclass(frozen=True)
class AlgebraKind:
    """A direct sum over the atoms b, t2, a, and R^n, in canonical order."""

    atoms: tuple  # e.g. ("b", "R", "R")

    ATOM_ORDER = {"b": 0, "t2": 1, "a": 2, "R": 3}

    @classmethod
    def of(cls, *atoms):
        matrix_atoms = sorted(
            (a for a in atoms if a != "R"), key=lambda a: cls.ATOM_ORDER[a]
        )
        scalars = tuple(a for a in atoms if a == "R")
        return cls(tuple(matrix_atoms) + scalars)

    @property
    def dim(self) -> int:
        sizes = {"b": 4, "t2": 3, "a": 2, "R": 1}
        return sum(sizes[a] for a in self.atoms)

    def __str__(self):
        parts = []
        i = 0
        atoms = self.atoms
        while i < len(atoms):
            if atoms[i] == "R":
                n = len(atoms) - i
                parts.append("R" if n == 1 else f"R^{n}")
                break
            parts.append(atoms[i])
            i += 1
        return "+".join(parts) if parts else "0"


class FiniteAlgebra:
    """Associative algebra over Q given by structure constants.

    sc[i][j] is the coordinate vector of (basis_i * basis_j) in the basis.
    """

    def __init__(self, names, sc):
        self.names = list(names)
        self.sc = sc
        n = self.dim
        if any(len(sc[i]) != n or any(len(sc[i][j]) != n for j in range(n))
               for i in range(n)):
            raise ValueError("structure constants have the wrong shape")
        if not self.is_associative():
            raise ValueError("structure constants are not associative")

    @property
    def dim(self) -> int:
        return len(self.names)

    def multiply(self, x, y):
        n = self.dim
        out = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = xi * yj
                for t in range(n):
                    out[t] += c * self.sc[i][j][t]
        return out

    def left_multiplication_matrix(self, x):
        n = self.dim
        cols = []
        for j in range(n):
            e = [Fraction(int(t == j)) for t in range(n)]
            cols.append(self.multiply(x, e))
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def is_associative(self) -> bool:
        n = self.dim
        for i in range(n):
            for j in range(n):
                for t in range(n):
                    ei = [Fraction(int(s == i)) for s in range(n)]
                    ej = [Fraction(int(s == j)) for s in range(n)]
                    et = [Fraction(int(s == t)) for s in range(n)]
                    left = self.multiply(self.multiply(ei, ej), et)
                    right = self.multiply(ei, self.multiply(ej, et))
                    if left != right:
                        return False
        return True

    def is_commutative(self) -> bool:
        n = self.dim
        return all(
            self.sc[i][j] == self.sc[j][i] for i in range(n) for j in range(i)
        )

    def unit(self):
        """Coordinates of the two-sided unit, or None."""
        n = self.dim
        # unit u satisfies u * e_j = e_j and e_j * u = e_j for all j
        aug = []
        for j in range(n):
            for t in range(n):
                row = [self.sc[i][j][t] for i in range(n)]
                aug.append(row + [Fraction(int(t == j))])
                row = [self.sc[j][i][t] for i in range(n)]
                aug.append(row + [Fraction(int(t == j))])
        red, pivots = rref(aug)
        if n in pivots:
            return None
        u = [Fraction(0)] * n
        for r, pc in enumerate(pivots):
            u[pc] = red[r][n]
        return u

    def center_dim(self) -> int:
        n = self.dim
        rows = []
        for j in range(n):
            for t in range(n):
                rows.append([self.sc[i][j][t] - self.sc[j][i][t] for i in range(n)])
        return len(nullspace(rows, n))

    def radical_dim(self) -> int:
        """Radical = kernel of the regular trace form (characteristic zero)."""
        n = self.dim
        mats = [self.left_multiplication_matrix(
            [Fraction(int(s == i)) for s in range(n)]) for i in range(n)]
        gram = []
        for i in range(n):
            row = []
            for j in range(n):
                prod_trace = sum(
                    mats[i][a][b] * mats[j][b][a] for a in range(n) for b in range(n)
                )
                row.append(prod_trace)
            gram.append(row)
        return len(nullspace(gram, n))

    def rescale_basis(self, scales):
        """Structure constants after basis_i -> scales[i] * basis_i."""
        n = self.dim
        sc = [[[self.sc[i][j][t] * scales[i] * scales[j] / scales[t]
                for t in range(n)] for j in range(n)] for i in range(n)]
        return FiniteAlgebra(self.names, sc)

    def change_basis(self, new_vectors, new_names):
        """Structure constants in the span of new_vectors (must be a basis)."""
        n = self.dim
        if len(new_vectors) != n or rank([list(v) for v in new_vectors]) != n:
            raise ValueError("need a full new basis")
        sc = []
        for x in new_vectors:
            row = []
            for y in new_vectors:
                prod = self.multiply(x, y)
                coords = _coords_in_basis(new_vectors, prod)
                row.append(coords)
            sc.append(row)
        return FiniteAlgebra(new_names, sc)

    def structure_constants_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["i", "j", "k", "c"])
        n = self.dim
        for i in range(n):
            for j in range(n):
                for t in range(n):
                    c = self.sc[i][j][t]
                    if c != 0:
                        writer.writerow([self.names[i], self.names[j],
                                         self.names[t], str(c)])
        return out.getvalue()


def _coords_in_basis(basis_vectors, target):
    n = len(target)
    aug = [[basis_vectors[j][i] for j in range(len(basis_vectors))] + [target[i]]
           for i in range(n)]
    red, pivots = rref(aug)
    if len(basis_vectors) in pivots:
        raise ValueError("vector outside the span")
    coords = [Fraction(0)] * len(basis_vectors)
    for r, pc in enumerate(pivots):
        coords[pc] = red[r][len(basis_vectors)]
    return coords


# ----------------------------------------------------------------------
# spanning the algebra of realized symmetry maps
# ----------------------------------------------------------------------

def _pivot_coordinates(flats):
    """A small set of coordinates on which the given flat vectors have full rank."""
    n = len(flats)
    chosen = []
    rows = []
    for coord in range(len(flats[0])):
        col = [flats[i][coord] for i in range(n)]
        if any(col):
            trial = rows + [col]
            if rank(trial) == len(trial):
                rows.append(col)
                chosen.append(coord)
                if len(chosen) == n:
                    break
    return chosen


def span_algebra(maps) -> FiniteAlgebra:
    """Structure constants of the span of the given maps under composition.

    The maps must be linearly independent on their shared truncated basis and
    the span must be multiplicatively closed; a product escaping the span
    raises SpanNotClosedError (truncation too small or wrong generator set).
    """
    if not maps:
        raise ValueError("need at least one map")
    basis = maps[0].basis
    if any(m.basis is not basis for m in maps):
        raise ValueError("maps live on different truncated bases")
    flats = [m.flat() for m in maps]
    n = len(maps)
    if rank(flats) != n:
        raise ValueError("maps are not linearly independent")
    pivots = _pivot_coordinates(flats)
    dim = basis.dim
    pivot_elements = sorted({p // dim for p in pivots})
    small = [[f[p] for p in pivots] for f in flats]

    sc = []
    for X in maps:
        row = []
        for Y in maps:
            # product evaluated only at the pivot coordinates, then solved
            images = {j: basis.vector_of(X.func(Y.func(basis.elements[j])))
                      for j in pivot_elements}
            target = [images[p // dim][p % dim] for p in pivots]
            aug = [[small[i][t] for i in range(n)] + [target[t]]
                   for t in range(len(pivots))]
            red, piv = rref(aug)
            if n in piv:
                raise SpanNotClosedError(
                    f"product {X.name} o {Y.name} leaves the span"
                )
            coords = [Fraction(0)] * n
            for r, pc in enumerate(piv):
                coords[pc] = red[r][n]
            # exact closure check on every basis element
            for b in basis.elements:
                prod = X.func(Y.func(b))
                combo = None
                for c, Z in zip(coords, maps):
                    if c == 0:
                        continue
                    term = c * Z.func(b)
                    combo = term if combo is None else combo + term
                if combo is None:
                    if not prod.is_zero:
                        raise SpanNotClosedError(
                            f"product {X.name} o {Y.name} leaves the span"
                        )
                elif combo != prod:
                    raise SpanNotClosedError(
                        f"product {X.name} o {Y.name} leaves the span"
                    )
            row.append(coords)
        sc.append(row)
    return FiniteAlgebra([m.name for m in maps], sc)


# ----------------------------------------------------------------------
# identification
# ----------------------------------------------------------------------

def identify(alg: FiniteAlgebra):
    """Match against the reference kinds through exact invariants.

    Returns an AlgebraKind, or the string 'unidentified(...)' with the
    fingerprint when nothing matches; never guesses.
    """
    n = alg.dim
    if alg.unit() is None:
        return f"unidentified(dim={n}, no unit)"
    r = alg.radical_dim()
    z = alg.center_dim()
    comm = alg.is_commutative()
    if comm:
        if r == 0:
            return AlgebraKind.of(*(["R"] * n))
        if r == 1 and n >= 2:
            return AlgebraKind.of("a", *(["R"] * (n - 2)))
    else:
        if r == 1 and n >= 3 and z == n - 2:
            return AlgebraKind.of("t2", *(["R"] * (n - 3)))
        if r == 2 and n >= 4 and z == n - 3:
            return AlgebraKind.of("b", *(["R"] * (n - 4)))
    return f"unidentified(dim={n}, radical={r}, center={z}, commutative={comm})"


# reference multiplication tables, used by the isomorphism tests
def reference_kind_table(kind: str):
    """Structure constants of a named reference algebra in its print basis."""
    F = Fraction
    if kind == "a":
        names = ["atil", "btil"]
        table = {("atil", "atil"): {"atil": 1}, ("atil", "btil"): {"btil": 1},
                 ("btil", "atil"): {"btil": 1}}
    elif kind == "b":
        names = ["abar", "bbar", "cbar", "dbar"]
        table = {
            ("abar", "abar"): {"abar": 1}, ("abar", "dbar"): {"dbar": 1},
            ("bbar", "bbar"): {"bbar": 1}, ("bbar", "cbar"): {"cbar": 1},
            ("cbar", "abar"): {"cbar": 1}, ("dbar", "bbar"): {"dbar": 1},
        }
    elif kind == "t2":
        names = ["e11", "e22", "e21"]
        table = {
            ("e11", "e11"): {"e11": 1}, ("e22", "e22"): {"e22": 1},
            ("e21", "e11"): {"e21": 1}, ("e22", "e21"): {"e21": 1},
        }
    elif kind.startswith("R^") or kind == "R":
        n = 1 if kind == "R" else int(kind[2:])
        names = [f"u{i}" for i in range(n)]
        table = {(f"u{i}", f"u{i}"): {f"u{i}": 1} for i in range(n)}
    else:
        raise ValueError(f"unknown reference kind {kind!r}")
    idx = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    sc = [[[F(0)] * n for _ in range(n)] for _ in range(n)]
    for (x, y), out in table.items():
        for znm, c in out.items():
            sc[idx[x]][idx[y]][idx[znm]] = F(c)
    return FiniteAlgebra(names, sc)
