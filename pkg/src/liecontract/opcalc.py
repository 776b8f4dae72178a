"""Differential operators with polynomial coefficients and frame expansions.

The central operation rewrites an ordered monomial in one left-invariant
frame as a combination of ordered monomials in another frame sharing the
same coordinates.  The solve runs order by order, descending: at each
derivative order the top-symbol system is inverted by a Neumann series in
the coordinate-adic sense (the off-identity part of the symbol matrix
vanishes at the origin), and the answer is certified afterwards by exact
reconstruction.  Coefficients that fail to close up polynomially raise
:class:`NonPolynomialExpansion`.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import NonPolynomialExpansion
from .grouplaw import VectorField
from .poly import Poly, all_multi_indices

Q = Fraction


class PolyDiffOperator:
    """``sum_gamma a_gamma(x) d^gamma`` with exact polynomial coefficients."""

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for gamma, coeff in terms.items():
                if not coeff.is_zero():
                    self.terms[tuple(gamma)] = coeff

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def identity(cls, nvars):
        return cls(nvars, {(0,) * nvars: Poly.constant(nvars, 1)})

    @classmethod
    def partial(cls, nvars, i):
        gamma = [0] * nvars
        gamma[i] = 1
        return cls(nvars, {tuple(gamma): Poly.constant(nvars, 1)})

    @classmethod
    def multiplication(cls, poly):
        return cls(poly.nvars, {(0,) * poly.nvars: poly})

    @classmethod
    def from_vector_field(cls, field: VectorField):
        nvars = field.dim
        terms = {}
        for k, a in enumerate(field.coefficients):
            if not a.is_zero():
                gamma = [0] * nvars
                gamma[k] = 1
                terms[tuple(gamma)] = a
        return cls(nvars, terms)

    # -- vector space structure ----------------------------------------
    def __add__(self, other):
        terms = dict(self.terms)
        for g, c in other.terms.items():
            s = terms.get(g)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(g, None)
            else:
                terms[g] = s
        return PolyDiffOperator(self.nvars, terms)

    def __neg__(self):
        return PolyDiffOperator(self.nvars, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, poly_or_scalar):
        if isinstance(poly_or_scalar, (int, Fraction)):
            poly_or_scalar = Poly.constant(self.nvars, poly_or_scalar)
        return PolyDiffOperator(
            self.nvars, {g: poly_or_scalar * c for g, c in self.terms.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyDiffOperator)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    def order(self):
        return max((sum(g) for g in self.terms), default=0)

    # -- action and composition -----------------------------------------
    def apply(self, f: Poly) -> Poly:
        out = Poly.zero(self.nvars)
        for gamma, a in self.terms.items():
            df = f
            for i, k in enumerate(gamma):
                for _ in range(k):
                    df = df.diff(i)
                    if df.is_zero():
                        break
            if not df.is_zero():
                out = out + a * df
        return out

    def compose(self, other):
        """Operator composition ``self o other`` via the Leibniz rule."""
        n = self.nvars
        out_terms = {}
        for g1, a1 in self.terms.items():
            for g2, a2 in other.terms.items():
                # d^g1 (a2 d^g2 f): distribute derivatives over a2 and f
                stack = [(g1, a2, 1)]
                for i in range(n):
                    new_stack = []
                    for gamma_rem, coeff_poly, mult in stack:
                        k = gamma_rem[i]
                        if k == 0:
                            new_stack.append((gamma_rem, coeff_poly, mult))
                            continue
                        d_i = [coeff_poly]
                        for _ in range(k):
                            d_i.append(d_i[-1].diff(i))
                        for j in range(k + 1):
                            if d_i[k - j].is_zero():
                                continue
                            g_new = list(gamma_rem)
                            g_new[i] = j
                            new_stack.append((tuple(g_new), d_i[k - j], mult * comb(k, j)))
                    stack = new_stack
                for gamma_rem, coeff_poly, mult in stack:
                    g_total = tuple(a + b for a, b in zip(gamma_rem, g2))
                    contrib = a1 * coeff_poly * mult
                    s = out_terms.get(g_total)
                    s = contrib if s is None else s + contrib
                    if s.is_zero():
                        out_terms.pop(g_total, None)
                    else:
                        out_terms[g_total] = s
        return PolyDiffOperator(n, out_terms)

    def weighted_order(self, field_degrees):
        """Max weighted order ``sum gamma_j d_j`` over the support."""
        return max(
            (sum(g * d for g, d in zip(gamma, field_degrees)) for gamma in self.terms),
            default=0,
        )

    def pretty(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for gamma, a in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            ds = "".join(
                f" d{names[i]}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(gamma) if k
            )
            parts.append(f"({a.pretty(names)}){ds}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PolyDiffOperator({self.pretty()})"


def compose(a: PolyDiffOperator, b: PolyDiffOperator) -> PolyDiffOperator:
    return a.compose(b)


def monomial_operator(fields, gamma) -> PolyDiffOperator:
    """Ordered product ``prod_j X_j^{gamma_j}`` in ascending field order."""
    if len(gamma) != len(fields):
        raise ValueError("one exponent per field required")
    nvars = fields[0].dim
    out = PolyDiffOperator.identity(nvars)
    for j, k in enumerate(gamma):
        if not k:
            continue
        op = PolyDiffOperator.from_vector_field(fields[j])
        for _ in range(k):
            out = out.compose(op)
    return out


def _top_symbol_matrix(fields, order):
    """Matrix ``sigma[beta][gamma']`` of top-order coefficients at ``order``.

    ``sigma`` is the coefficient of ``xi^beta`` in ``prod_j (sum_k A_kj xi_k)^{gamma'_j}``;
    it equals the identity at the origin.
    """
    n = fields[0].dim
    block = all_multi_indices(n, order)
    # linear symbols in doubled variables (x..., xi...)
    lin = []
    for f in fields:
        sym = Poly.zero(2 * n)
        for k, a in enumerate(f.coefficients):
            if a.is_zero():
                continue
            lifted = Poly(2 * n, {e + (0,) * n: c for e, c in a.terms.items()})
            xi = Poly.variable(2 * n, n + k)
            sym = sym + lifted * xi
        lin.append(sym)
    columns = {}
    for gp in block:
        prod = Poly.constant(2 * n, 1)
        for j, k in enumerate(gp):
            for _ in range(k):
                prod = prod * lin[j]
        col = {}
        for e, c in prod.terms.items():
            beta = e[n:]
            xpart = e[:n]
            col.setdefault(beta, {})[xpart] = c
        columns[gp] = {beta: Poly(n, t) for beta, t in col.items()}
    return block, columns


def _solve_unit_lower_system(block, columns, rhs, nvars, max_sweeps=80):
    """Solve ``sum_gp p_gp sigma[beta][gp] = rhs[beta]`` by x-adic iteration.

    The matrix is the identity plus entries vanishing at the origin, so the
    fixed-point iteration adds terms of strictly increasing minimal degree
    and stabilises exactly when the solution is polynomial.
    """
    p = {gp: rhs.get(gp, Poly.zero(nvars)) for gp in block}
    for _ in range(max_sweeps):
        new_p = {}
        for beta in block:
            acc = rhs.get(beta, Poly.zero(nvars))
            for gp in block:
                sigma = columns[gp].get(beta)
                if sigma is None:
                    continue
                off = sigma - Poly.constant(nvars, 1) if gp == beta else sigma
                if not off.is_zero():
                    acc = acc - off * p[gp]
            new_p[beta] = acc
        if new_p == p:
            return p
        p = new_p
    raise NonPolynomialExpansion("order-block solve did not stabilise")


def expand_in_frame(op: PolyDiffOperator, frame):
    """Coefficients ``{gamma': p}`` with ``op = sum p(x) X^gamma'`` exactly.

    ``frame`` is a list of vector fields forming a pointwise basis whose
    coefficient matrix is the identity at the origin (a left-invariant
    frame of a group law in the same coordinates).
    """
    nvars = frame[0].dim
    result = {}
    residual = op
    for order in range(op.order(), -1, -1):
        if residual.is_zero():
            break
        block, columns = _symbol_cache(tuple(frame), order)
        rhs = {
            beta: coeff
            for beta, coeff in residual.terms.items()
            if sum(beta) == order
        }
        if not rhs:
            continue
        p = _solve_unit_lower_system(block, columns, rhs, nvars)
        for gp, coeff in p.items():
            if coeff.is_zero():
                continue
            result[gp] = coeff
            residual = residual - _monomial_cache(tuple(frame), gp).scale(coeff)
    if not residual.is_zero():
        raise NonPolynomialExpansion("expansion failed to reproduce the operator")
    return result


_symbol_store = {}
_monomial_store = {}


def _symbol_cache(frame_key, order):
    key = (frame_key, order)
    if key not in _symbol_store:
        _symbol_store[key] = _top_symbol_matrix(list(frame_key), order)
    return _symbol_store[key]


def _monomial_cache(frame_key, gamma):
    key = (frame_key, gamma)
    if key not in _monomial_store:
        _monomial_store[key] = monomial_operator(list(frame_key), gamma)
    return _monomial_store[key]


def homogeneity_profile(p: Poly, weights):
    """Weighted-homogeneous decomposition as ``[(degree, component), ...]``."""
    return sorted(p.weighted_components(weights).items())


def comparison_coefficients(target_frame, base_frame, gamma, identity_index=None):
    """Expansion of ``X_target^gamma`` in the base frame, minus the identity term.

    Returns ``{gamma': p}`` where ``X_t^gamma = X_b^gamma + sum p X_b^gamma'``;
    the ``gamma`` entry records the deviation from coefficient one.
    """
    op = monomial_operator(list(target_frame), gamma)
    coeffs = expand_in_frame(op, list(base_frame))
    gamma = tuple(gamma)
    out = {}
    for gp, p in coeffs.items():
        if gp == gamma:
            dev = p - Poly.constant(p.nvars, 1)
            if not dev.is_zero():
                out[gp] = dev
        else:
            out[gp] = p
    return out
