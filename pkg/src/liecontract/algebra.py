"""Exact nilpotent Lie algebras, subspaces and quotients.

Structure constants are rational and validated at construction:
antisymmetry and the Jacobi identity always, grading compatibility
(``[g_i, g_j] subset g_{i+j}``) whenever degrees are attached.  Graded
algebras are automatically nilpotent; ungraded ones are checked via the
lower central series.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import DimensionMismatch, GradingRequired, NotAnIdeal

Q = Fraction


class LieAlgebra:
    """Nilpotent Lie algebra given by structure constants on a basis.

    ``brackets`` maps ``(i, j)`` with ``i < j`` to a dict ``{k: c}`` so that
    ``[e_i, e_j] = sum_k c e_k``; the antisymmetric counterparts are implied.
    """

    def __init__(self, dim, brackets, _validate=True):
        self.dim = dim
        table = {}
        for (i, j), targets in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i},{j}) outside 0..{dim - 1}")
            if i == j:
                if any(Q(c) != 0 for c in targets.values()):
                    raise ValueError("antisymmetry forces [e_i, e_i] = 0")
                continue
            clean = {k: Q(c) for k, c in targets.items() if Q(c) != 0}
            if not clean:
                continue
            if i < j:
                if (i, j) in table:
                    raise ValueError(f"bracket ({i},{j}) specified twice")
                table[(i, j)] = clean
            else:
                flipped = {k: -c for k, c in clean.items()}
                if (j, i) in table:
                    if table[(j, i)] != flipped:
                        raise ValueError(f"brackets ({i},{j}) and ({j},{i}) disagree")
                else:
                    table[(j, i)] = flipped
        self.table = table
        if _validate:
            self._check_jacobi()
            if not self.is_graded:
                # grading forces nilpotency; otherwise the series must reach 0
                self.lower_central_series()

    # -- basic structure ------------------------------------------------
    @property
    def is_graded(self):
        return False

    def structure_constant(self, i, j, k):
        if i == j:
            return Q(0)
        if i < j:
            return self.table.get((i, j), {}).get(k, Q(0))
        return -self.table.get((j, i), {}).get(k, Q(0))

    def basis_bracket(self, i, j):
        """``[e_i, e_j]`` as a sparse dict ``{k: c}``."""
        if i == j:
            return {}
        if i < j:
            return dict(self.table.get((i, j), {}))
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def bracket(self, x, y):
        """Exact bracket of two coordinate vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("vector length != algebra dimension")
        acc = {}
        for (i, j), targets in self.table.items():
            coef = x[i] * y[j] - x[j] * y[i]
            if coef:
                for k, c in targets.items():
                    acc[k] = acc.get(k, Q(0)) + coef * c
        out = [Q(0)] * self.dim
        for k, c in acc.items():
            out[k] = c
        return tuple(out)

    def _check_jacobi(self):
        n = self.dim
        for i in range(n):
            ei = linalg.unit_vec(n, i)
            for j in range(i + 1, n):
                ej = linalg.unit_vec(n, j)
                bij = self.bracket(ei, ej)
                for k in range(j + 1, n):
                    ek = linalg.unit_vec(n, k)
                    total = linalg.vec_add(
                        linalg.vec_add(
                            self.bracket(ei, self.bracket(ej, ek)),
                            self.bracket(ej, self.bracket(ek, ei)),
                        ),
                        self.bracket(ek, bij),
                    )
                    if not linalg.is_zero_vec(total):
                        raise ValueError(f"Jacobi identity fails on basis triple ({i},{j},{k})")

    # -- derived invariants ----------------------------------------------
    def lower_central_series(self):
        """Subspaces ``g = g_[1] >= g_[2] >= ...`` excluding the trailing zero."""
        out = [Subspace.full(self)]
        current = out[0]
        while True:
            rows = []
            for i in range(self.dim):
                ei = linalg.unit_vec(self.dim, i)
                for v in current.basis:
                    w = self.bracket(ei, v)
                    if not linalg.is_zero_vec(w):
                        rows.append(w)
            nxt = Subspace(self, rows)
            if nxt.dim == 0:
                return out
            if nxt.dim >= current.dim:
                raise ValueError("algebra is not nilpotent")
            out.append(nxt)
            current = nxt

    def growth_dimension(self):
        """Volume-growth exponent: sum of the lower-central-series dimensions."""
        return sum(term.dim for term in self.lower_central_series())

    def derived_subalgebra(self):
        series = self.lower_central_series()
        return series[1] if len(series) > 1 else Subspace(self, [])

    def center(self):
        rows = []
        for j in range(self.dim):
            for k in range(self.dim):
                rows.append(tuple(self.structure_constant(j, i, k) for i in range(self.dim)))
        return Subspace(self, linalg.kernel(rows))

    def is_abelian(self):
        return not self.table

    def is_ideal(self, subspace):
        if subspace.parent is not self:
            raise ValueError("subspace belongs to a different algebra")
        for i in range(self.dim):
            ei = linalg.unit_vec(self.dim, i)
            for v in subspace.basis:
                if not subspace.contains(self.bracket(ei, v)):
                    return False
        return True

    def ideal_generated_by(self, vectors):
        """Smallest ideal containing the given vectors."""
        rows = list(vectors)
        span = Subspace(self, rows)
        while True:
            new_rows = []
            for i in range(self.dim):
                ei = linalg.unit_vec(self.dim, i)
                for v in span.basis:
                    w = self.bracket(ei, v)
                    if not linalg.is_zero_vec(w) and not span.contains(w):
                        new_rows.append(w)
            if not new_rows:
                return span
            span = Subspace(self, tuple(span.basis) + tuple(new_rows))

    def quotient(self, ideal):
        """Quotient algebra and the projection matrix onto it.

        For a graded parent and a graded ideal the result is graded; any
        other combination yields an ungraded (bracket-only) algebra.
        """
        if not self.is_ideal(ideal):
            raise NotAnIdeal("quotient requires an ideal")
        pivots = ideal.pivots
        keep = [j for j in range(self.dim) if j not in pivots]
        qdim = len(keep)

        def project(v):
            reduced = linalg.reduce_against(ideal.basis, pivots, v)
            return tuple(reduced[j] for j in keep)

        brackets = {}
        for a in range(qdim):
            for b in range(a + 1, qdim):
                w = self.bracket(
                    linalg.unit_vec(self.dim, keep[a]), linalg.unit_vec(self.dim, keep[b])
                )
                img = project(w)
                targets = {k: c for k, c in enumerate(img) if c}
                if targets:
                    brackets[(a, b)] = targets
        proj_matrix = tuple(project(linalg.unit_vec(self.dim, i)) for i in range(self.dim))
        proj_matrix = tuple(zip(*proj_matrix))  # rows of the quotient map
        if self.is_graded and ideal.is_graded():
            degrees = tuple(self.degrees[j] for j in keep)
            return GradedLieAlgebra(qdim, brackets, degrees), proj_matrix
        return LieAlgebra(qdim, brackets), proj_matrix

    def direct_sum(self, other):
        n, m = self.dim, other.dim
        brackets = {}
        for (i, j), t in self.table.items():
            brackets[(i, j)] = dict(t)
        for (i, j), t in other.table.items():
            brackets[(i + n, j + n)] = {k + n: c for k, c in t.items()}
        if self.is_graded and other.is_graded:
            return GradedLieAlgebra(n + m, brackets, self.degrees + other.degrees)
        return LieAlgebra(n + m, brackets)

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.dim == other.dim
            and self.table == other.table
            and getattr(self, "degrees", None) == getattr(other, "degrees", None)
        )

    def __hash__(self):
        return hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.table.items()))))

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class GradedLieAlgebra(LieAlgebra):
    """Lie algebra with positive integer degrees on a homogeneous basis."""

    def __init__(self, dim, brackets, degrees):
        degrees = tuple(int(d) for d in degrees)
        if len(degrees) != dim:
            raise DimensionMismatch("one degree per basis vector required")
        if any(d < 1 for d in degrees):
            raise ValueError("degrees must be positive integers")
        self.degrees = degrees
        super().__init__(dim, brackets)
        for (i, j), targets in self.table.items():
            for k in targets:
                if degrees[k] != degrees[i] + degrees[j]:
                    raise ValueError(
                        f"grading violated: [e_{i}, e_{j}] hits e_{k} "
                        f"but {degrees[k]} != {degrees[i]} + {degrees[j]}"
                    )

    @property
    def is_graded(self):
        return True

    @property
    def step_bound(self):
        return max(self.degrees) if self.dim else 0

    def homogeneous_dimension(self):
        return sum(self.degrees)

    def dilate(self, r, x):
        """Dilation ``r . x``: the degree-``d`` component scales by ``r**d``."""
        if r == 0:
            raise ValueError("dilation parameter must be nonzero")
        if len(x) != self.dim:
            raise DimensionMismatch("vector length != algebra dimension")
        r = Q(r)
        return tuple(r ** d * c for d, c in zip(self.degrees, x))

    def degree_indices(self):
        """Map ``degree -> sorted coordinate indices`` of that degree."""
        out = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return out

    def graded_projection(self, v, degree):
        return tuple(c if self.degrees[i] == degree else Q(0) for i, c in enumerate(v))

    def layer(self, degree):
        """Subspace spanned by the basis vectors of one degree."""
        rows = [linalg.unit_vec(self.dim, i) for i, d in enumerate(self.degrees) if d == degree]
        return Subspace(self, rows)

    def is_stratified(self):
        """True when the degree-1 layer generates the whole algebra."""
        gen = self.layer(1)
        if gen.dim == 0:
            return self.dim == 0
        span = gen
        while span.dim < self.dim:
            rows = list(span.basis)
            grew = False
            for g in gen.basis:
                for v in span.basis:
                    w = self.bracket(g, v)
                    if not linalg.is_zero_vec(w) and not span.contains(w):
                        rows.append(w)
                        grew = True
            if not grew:
                return False
            span = Subspace(self, rows)
        return True


def homogeneous_dimension(algebra):
    if not algebra.is_graded:
        raise GradingRequired("homogeneous dimension needs a gradation")
    return algebra.homogeneous_dimension()


class Subspace:
    """Subspace of a Lie algebra in canonical reduced row-echelon form."""

    def __init__(self, parent, rows):
        rows = [tuple(Q(c) for c in r) for r in rows]
        for r in rows:
            if len(r) != parent.dim:
                raise DimensionMismatch("row length != algebra dimension")
        self.parent = parent
        self.basis, self.pivots = linalg.rref(rows)

    @classmethod
    def full(cls, parent):
        return cls(parent, linalg.identity(parent.dim))

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return linalg.row_span_contains(self.basis, self.pivots, v)

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def intersect(self, other):
        return Subspace(self.parent, linalg.intersect_rowspans(self.basis, other.basis))

    def add(self, other):
        return Subspace(self.parent, tuple(self.basis) + tuple(other.basis))

    def is_graded(self):
        """True when the span splits into its graded components."""
        if not self.parent.is_graded:
            raise GradingRequired("gradedness test needs a graded parent")
        for v in self.basis:
            for d in set(self.parent.degrees):
                comp = self.parent.graded_projection(v, d)
                if not linalg.is_zero_vec(comp) and not self.contains(comp):
                    return False
        return True

    def homogeneous_basis(self):
        """Homogeneous RREF basis; requires :meth:`is_graded`."""
        rows = []
        for v in self.basis:
            for d in set(self.parent.degrees):
                comp = self.parent.graded_projection(v, d)
                if not linalg.is_zero_vec(comp):
                    rows.append(comp)
        return linalg.rref(rows)[0]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.parent is other.parent
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.parent!r})"


# -- catalog ----------------------------------------------------------------


def abelian(dim, degrees=None):
    return GradedLieAlgebra(dim, {}, degrees or (1,) * dim)


def heisenberg(degrees=(1, 1, 2)):
    """3-dimensional Heisenberg algebra ``[e1, e2] = e3``."""
    return GradedLieAlgebra(3, {(0, 1): {2: 1}}, degrees)


def heisenberg_times_line(degrees=(1, 1, 2, 3)):
    """Basis ``X, Y, T, U`` with ``[X, Y] = T`` and ``U`` central."""
    return GradedLieAlgebra(4, {(0, 1): {2: 1}}, degrees)


def filiform(k, x_degree=1, y1_degree=1):
    """Basis ``X, Y_1..Y_k`` with ``[X, Y_j] = Y_{j+1}``."""
    brackets = {(0, j): {j + 1: 1} for j in range(1, k)}
    degrees = (x_degree,) + tuple(y1_degree + j * x_degree for j in range(k))
    return GradedLieAlgebra(k + 1, brackets, degrees)
