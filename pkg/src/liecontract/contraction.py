"""Local and global contraction data of an ideal inside a graded algebra.

Given a graded nilpotent ambient algebra and an ideal ``i``, this module
computes the two homogeneous limit ideals

    i0   (local,  s -> 0)    spanned by top-degree parts along a flag,
    iInf (global, s -> oo)   spanned by bottom-degree parts,

together with the correction maps ``psi`` and the parametric projections
onto fixed graded complements.  Everything is exact: the parameter ``s``
stays symbolic as Laurent-polynomial matrix entries and is only evaluated
on demand.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .algebra import GradedLieAlgebra, LieAlgebra, Subspace
from .errors import GradingRequired, NotAnIdeal
from .poly import LaurentPoly

Q = Fraction


class ParamMatrix:
    """Matrix with exact univariate Laurent-polynomial entries."""

    def __init__(self, rows):
        self.rows = tuple(
            tuple(e if isinstance(e, LaurentPoly) else LaurentPoly.constant(e) for e in row)
            for row in rows
        )
        self.shape = (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @classmethod
    def from_constant(cls, rows):
        return cls(tuple(tuple(LaurentPoly.constant(c) for c in row) for row in rows))

    @classmethod
    def identity(cls, n):
        return cls.from_constant(linalg.identity(n))

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(tuple(tuple(LaurentPoly() for _ in range(ncols)) for _ in range(nrows)))

    def __getitem__(self, rc):
        return self.rows[rc[0]][rc[1]]

    def __add__(self, other):
        return ParamMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __sub__(self, other):
        return ParamMatrix(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __neg__(self):
        return ParamMatrix(tuple(tuple(-e for e in row) for row in self.rows))

    def __matmul__(self, other):
        cols = list(zip(*other.rows))
        return ParamMatrix(
            tuple(
                tuple(sum((a * b for a, b in zip(row, col)), LaurentPoly()) for col in cols)
                for row in self.rows
            )
        )

    def __eq__(self, other):
        return isinstance(other, ParamMatrix) and self.rows == other.rows

    def is_zero(self):
        return all(e.is_zero() for row in self.rows for e in row)

    def apply(self, vector):
        """Matrix times an exact vector; entries become Laurent polynomials."""
        return tuple(
            sum((e * Q(c) for e, c in zip(row, vector) if c), LaurentPoly())
            for row in self.rows
        )

    def eval(self, s):
        """Evaluate every entry at a nonzero rational parameter value."""
        s = Q(s)
        return tuple(tuple(e.eval(s) for e in row) for row in self.rows)

    def constant_part(self):
        return tuple(tuple(e.constant_term() for e in row) for row in self.rows)

    def min_s_degree(self):
        degs = [e.min_degree() for row in self.rows for e in row if not e.is_zero()]
        return min(degs) if degs else None

    def max_s_degree(self):
        degs = [e.max_degree() for row in self.rows for e in row if not e.is_zero()]
        return max(degs) if degs else None


class FlagBasis:
    """Basis of the ideal adapted to the degree filtration.

    ``vectors[k]`` lies in ``i`` and has extremal (top for the local side,
    bottom for the global side) degree ``extremal_degrees[k]``;
    ``breakpoints[j]`` counts the vectors with extremal degree <= j (local)
    or >= max+1-j (global), so prefixes span the filtration steps.
    """

    def __init__(self, vectors, extremal_degrees, breakpoints, side):
        self.vectors = tuple(vectors)
        self.extremal_degrees = tuple(extremal_degrees)
        self.breakpoints = tuple(breakpoints)
        self.side = side
        if list(self.breakpoints) != sorted(self.breakpoints):
            raise ValueError("flag breakpoints must be nondecreasing")
        if self.breakpoints and self.breakpoints[-1] != len(self.vectors):
            raise ValueError("flag breakpoints must end at dim(i)")

    def __len__(self):
        return len(self.vectors)


def _graded_component_span(algebra, degrees_wanted):
    rows = [
        linalg.unit_vec(algebra.dim, i)
        for i, d in enumerate(algebra.degrees)
        if d in degrees_wanted
    ]
    return rows


def _contract_side(ambient, ideal, side):
    """Shared flag construction for both contraction sides."""
    if not ambient.is_graded:
        raise GradingRequired("contractions need a graded ambient algebra")
    if not ambient.is_ideal(ideal):
        raise NotAnIdeal("contraction input must be an ideal")
    n = ambient.dim
    maxdeg = max(ambient.degrees) if n else 0
    degree_range = range(1, maxdeg + 1) if side == "local" else range(maxdeg, 0, -1)

    flag_vectors = []
    extremal = []
    breakpoints = []
    limit_rows = []
    psi_columns = []  # (limit basis vector, correction vector map as dict degree->component)
    seen = Subspace(ambient, [])
    for j in degree_range:
        if side == "local":
            window = set(range(1, j + 1))
        else:
            window = set(range(j, maxdeg + 1))
        step_rows = linalg.intersect_rowspans(
            ideal.basis, _graded_component_span(ambient, window)
        )
        for v in step_rows:
            if seen.contains(v):
                continue
            red = linalg.reduce_against(seen.basis, seen.pivots, v)
            if linalg.is_zero_vec(red):
                continue
            flag_vectors.append(red)
            extremal.append(j)
            lead = ambient.graded_projection(red, j)
            if linalg.is_zero_vec(lead):
                raise AssertionError("flag vector lost its extremal component")
            limit_rows.append(lead)
            psi_columns.append((lead, red))
            seen = Subspace(ambient, tuple(seen.basis) + (red,))
        breakpoints.append(len(flag_vectors))

    if len(flag_vectors) != ideal.dim:
        raise AssertionError("flag construction did not exhaust the ideal")
    limit = Subspace(ambient, limit_rows)
    if limit.dim != ideal.dim:
        raise AssertionError("limit ideal lost dimension")

    # psi as an ambient endomorphism: corrections on the limit ideal,
    # zero on the pivot-completed complement.
    pivots = limit.pivots
    free = [c for c in range(n) if c not in pivots]
    basis_cols = [list(b) for b in limit_rows] + [list(linalg.unit_vec(n, c)) for c in free]
    binv = linalg.invert(tuple(zip(*basis_cols)))
    if binv is None:
        raise AssertionError("limit ideal basis plus complement is singular")

    psi_rows = [[LaurentPoly() for _ in range(n)] for _ in range(n)]
    ndeg = ambient.degrees
    for col_idx, (lead, full) in enumerate(psi_columns):
        j = extremal[col_idx]
        # psi(lead) = sum_{j' != j} s^{j - j'} pr_{j'}(full)
        for r in range(n):
            comp = full[r]
            if comp == 0 or ndeg[r] == j:
                continue
            power = j - ndeg[r]
            for c in range(n):
                coeff = binv[col_idx][c]
                if coeff:
                    psi_rows[r][c] = psi_rows[r][c] + LaurentPoly.term(power, comp * coeff)
    psi = ParamMatrix(psi_rows)
    flag = FlagBasis(flag_vectors, extremal, breakpoints, side)
    return limit, flag, psi


def contract_local(ambient, ideal):
    """Local contraction: top-degree limit ideal, flag and psi map."""
    return _contract_side(ambient, ideal, "local")


def contract_global(ambient, ideal):
    """Global contraction: bottom-degree limit ideal, flag and psi map."""
    return _contract_side(ambient, ideal, "global")


def _pivot_complement(algebra, subspace):
    free = [c for c in range(algebra.dim) if c not in subspace.pivots]
    return Subspace(algebra, [linalg.unit_vec(algebra.dim, c) for c in free]), tuple(free)


def _projection_with_kernel(algebra, psi, limit):
    """Parametric projection onto the pivot complement with kernel ``(I+psi)(limit)``.

    Built as ``P(s) = P(0) . L_s^{-1}`` where ``L_s = I + psi_s`` and the
    inverse is the finite alternating series of powers of the nilpotent
    correction map.
    """
    n = algebra.dim
    # P(0): zero out the pivot coordinates by subtracting the echelon rows.
    cols = [
        linalg.reduce_against(limit.basis, limit.pivots, linalg.unit_vec(n, c))
        for c in range(n)
    ]
    p00 = ParamMatrix.from_constant(tuple(zip(*cols)))

    inv = ParamMatrix.identity(n)
    power = ParamMatrix.identity(n)
    for _ in range(max(algebra.degrees) if n else 0):
        power = power @ (-psi)
        if power.is_zero():
            break
        inv = inv + power
    return p00 @ inv


class ContractionFamily:
    """All contraction data of one ideal inside a graded ambient algebra."""

    def __init__(self, ambient: GradedLieAlgebra, ideal: Subspace):
        self.ambient = ambient
        self.ideal = ideal
        self.i0, self.flag0, self.psi0 = contract_local(ambient, ideal)
        self.iInf, self.flagInf, self.psiInf = contract_global(ambient, ideal)
        self.h0, self.h0_coords = _pivot_complement(ambient, self.i0)
        self.hInf, self.hInf_coords = _pivot_complement(ambient, self.iInf)
        self.P0 = _projection_with_kernel(ambient, self.psi0, self.i0)
        self.PInf = _projection_with_kernel(ambient, self.psiInf, self.iInf)
        self.h0_degrees = tuple(ambient.degrees[c] for c in self.h0_coords)
        self.hInf_degrees = tuple(ambient.degrees[c] for c in self.hInf_coords)

    # -- parametric objects ------------------------------------------------
    def ideal_at(self, s):
        """The dilated ideal ``i_s = s^{-1} . i`` for rational ``s > 0``."""
        s = Q(s)
        if s <= 0:
            raise ValueError("the family parameter must be positive")
        rows = [self.ambient.dilate(1 / s, v) for v in self.ideal.basis]
        return Subspace(self.ambient, rows)

    def lambda_matrix(self):
        """``lambda_s``: rows over hInf coordinates, columns over h0 coordinates."""
        return ParamMatrix(
            tuple(
                tuple(self.PInf[r, c] for c in self.h0_coords) for r in self.hInf_coords
            )
        )

    def lambda_inverse_matrix(self):
        return ParamMatrix(
            tuple(
                tuple(self.P0[r, c] for c in self.hInf_coords) for r in self.h0_coords
            )
        )

    def bracket_family(self, side):
        """Parametric structure constants on the chosen complement."""
        coords = self.h0_coords if side == "local" else self.hInf_coords
        proj = self.P0 if side == "local" else self.PInf
        degrees = self.h0_degrees if side == "local" else self.hInf_degrees
        n = self.ambient.dim
        m = len(coords)
        constants = {}
        for a in range(m):
            for b in range(a + 1, m):
                w = self.ambient.bracket(
                    linalg.unit_vec(n, coords[a]), linalg.unit_vec(n, coords[b])
                )
                image = proj.apply(w)
                entry = {k: image[c] for k, c in enumerate(coords) if not image[c].is_zero()}
                if entry:
                    constants[(a, b)] = entry
        return BracketFamily(self, side, coords, degrees, constants)


class BracketFamily:
    """The one-parameter family of Lie brackets induced on a complement."""

    def __init__(self, family, side, coords, degrees, constants):
        self.family = family
        self.side = side
        self.coords = coords
        self.degrees = degrees
        self.constants = constants
        self.dim = len(coords)

    def algebra_at(self, s):
        """Evaluate at rational ``s > 0``; the result is bracket-only."""
        s = Q(s)
        brackets = {}
        for (a, b), entry in self.constants.items():
            targets = {k: e.eval(s) for k, e in entry.items()}
            targets = {k: c for k, c in targets.items() if c}
            if targets:
                brackets[(a, b)] = targets
        return LieAlgebra(self.dim, brackets)

    def limit_algebra(self):
        """The graded algebra at ``s -> 0`` (local) or ``s -> oo`` (global)."""
        brackets = {}
        for (a, b), entry in self.constants.items():
            targets = {}
            for k, e in entry.items():
                c = e.constant_term()
                if c:
                    targets[k] = c
            if targets:
                brackets[(a, b)] = targets
        return GradedLieAlgebra(self.dim, brackets, self.degrees)

    def structure_constant(self, a, b, k):
        if a == b:
            return LaurentPoly()
        if a < b:
            return self.constants.get((a, b), {}).get(k, LaurentPoly())
        return -self.constants.get((b, a), {}).get(k, LaurentPoly())

    def projected_basis_coordinates(self, s):
        """Coordinates of ``P_s(e_j)`` on the complement, for every ambient j.

        These are the constant coefficients expressing the projected
        ambient fields in the left-invariant frame of the complement.
        """
        proj = self.family.P0 if self.side == "local" else self.family.PInf
        mat = proj.eval(Q(s))
        return tuple(
            tuple(mat[c][j] for c in self.coords) for j in range(self.family.ambient.dim)
        )


def projections(family: ContractionFamily, side: str) -> ParamMatrix:
    """The parametric projection of the ambient algebra onto a complement."""
    if side == "local":
        return family.P0
    if side == "global":
        return family.PInf
    raise ValueError("side must be 'local' or 'global'")


def lambda_map(family: ContractionFamily):
    """``lambda_s`` and its inverse, in the complement coordinate bases."""
    return family.lambda_matrix(), family.lambda_inverse_matrix()


# -- structural checks (used by tests and the report driver) -----------------


def is_strictly_subhomogeneous(mat: ParamMatrix, degrees):
    """Entry (r, c) nonzero only when degree(r) < degree(c)."""
    for r, row in enumerate(mat.rows):
        for c, e in enumerate(row):
            if not e.is_zero() and degrees[r] >= degrees[c]:
                return False
    return True


def is_strictly_superhomogeneous(mat: ParamMatrix, degrees):
    for r, row in enumerate(mat.rows):
        for c, e in enumerate(row):
            if not e.is_zero() and degrees[r] <= degrees[c]:
                return False
    return True


def is_homogeneous_matrix(mat: ParamMatrix, degrees):
    for r, row in enumerate(mat.rows):
        for c, e in enumerate(row):
            if not e.is_zero() and degrees[r] != degrees[c]:
                return False
    return True


def satisfies_projection_scaling(mat: ParamMatrix, degrees):
    """Scaling law ``P(r s) = r . P(s) (r^-1 .)`` as a two-parameter identity.

    Expanding in the dilation parameter, the law holds iff every entry
    (r, c) is a single Laurent monomial of s-degree ``deg(c) - deg(r)``.
    """
    for r, row in enumerate(mat.rows):
        for c, e in enumerate(row):
            for power in e.coeffs:
                if power != degrees[c] - degrees[r]:
                    return False
    return True


def satisfies_bracket_scaling(bf: BracketFamily):
    """Scaling law ``r . [x, y]_s = [r . x, r . y]_{s/r}`` coefficientwise.

    Holds iff the ``s^m`` coefficient of ``c_{ab}^k`` vanishes unless
    ``m = deg(a) + deg(b) - deg(k)``.
    """
    d = bf.degrees
    for (a, b), entry in bf.constants.items():
        for k, e in entry.items():
            for power in e.coeffs:
                if power != d[a] + d[b] - d[k]:
                    return False
    return True


def jacobi_holds_symbolically(bf: BracketFamily):
    """Jacobi identity for the parametric bracket, as a polynomial identity."""
    m = bf.dim
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                for target in range(m):
                    total = LaurentPoly()
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        # [e_a, [e_b, e_c]] component on e_target
                        for mid in range(m):
                            cbc = bf.structure_constant(b, c, mid)
                            if cbc.is_zero():
                                continue
                            total = total + bf.structure_constant(a, mid, target) * cbc
                    if not total.is_zero():
                        return False
    return True
