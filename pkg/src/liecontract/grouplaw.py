"""Exact BCH group law, left-invariant frames and the norm surrogate.

The BCH series is evaluated through a per-word coefficient table: the
Dynkin expansion is enumerated once per nilpotency step and collected by
the bracketing word, so a product costs one nested-commutator chain per
word with a nonzero coefficient.  Truncation at the nilpotency class is
exact.  The same evaluator runs on rational vectors and on vectors with
polynomial entries, which yields the symbolic group-law map.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import linalg
from .errors import DimensionMismatch, StepTooLarge
from .poly import Poly

Q = Fraction

MAX_STEP = 6


@lru_cache(maxsize=8)
def bch_word_coefficients(step):
    """Coefficient of each bracketing word in the BCH series up to ``step``.

    Words are tuples over {0, 1} (0 = first argument, 1 = second); the word
    ``w`` stands for the right-nested commutator chain
    ``ad(v[w0]) ... ad(v[w_{T-2}]) v[w_{T-1}]``.
    """
    if step > MAX_STEP:
        raise StepTooLarge(f"step {step} exceeds the supported bound {MAX_STEP}")
    coeffs = {}

    def blocks(total):
        # sequences of (p, q) != (0, 0) with sum of p+q == total
        if total == 0:
            yield ()
            return
        for size in range(1, total + 1):
            for p in range(size + 1):
                q = size - p
                for rest in blocks(total - size):
                    yield ((p, q),) + rest

    for total in range(1, step + 1):
        for seq in blocks(total):
            m = len(seq)
            denom = m * total
            word = []
            for p, q in seq:
                denom *= factorial(p) * factorial(q)
                word.extend([0] * p + [1] * q)
            c = Q((-1) ** (m - 1), denom)
            word = tuple(word)
            coeffs[word] = coeffs.get(word, Q(0)) + c
    return {w: c for w, c in coeffs.items() if c}


def _bracket_any(alg, x, y, zero):
    """Structure-constant bracket over any commutative coefficient ring."""
    out = [zero] * alg.dim
    for (i, j), targets in alg.table.items():
        coef = x[i] * y[j] - x[j] * y[i]
        for k, c in targets.items():
            out[k] = out[k] + coef * c
    return out


def nilpotency_class(alg):
    cls = getattr(alg, "_nilpotency_class", None)
    if cls is None:
        cls = len(alg.lower_central_series())
        alg._nilpotency_class = cls
    return cls


def bch_product(alg, x, y):
    """Exact group product in exponential coordinates."""
    if len(x) != alg.dim or len(y) != alg.dim:
        raise DimensionMismatch("vector length != algebra dimension")
    step = nilpotency_class(alg)
    if step > MAX_STEP:
        raise StepTooLarge(f"nilpotency class {step} exceeds {MAX_STEP}")
    zero = x[0] * 0
    vecs = (tuple(x), tuple(y))
    out = [zero] * alg.dim
    chains = {}
    for word, coeff in bch_word_coefficients(step).items():
        if len(word) == 1:
            value = vecs[word[0]]
        else:
            tail = word[1:]
            if tail not in chains:
                value = vecs[tail[-1]]
                for letter in reversed(tail[:-1]):
                    value = _bracket_any(alg, vecs[letter], value, zero)
                chains[tail] = value
            value = _bracket_any(alg, vecs[word[0]], chains[tail], zero)
        for k in range(alg.dim):
            out[k] = out[k] + value[k] * coeff
    return tuple(out)


class PolynomialMap:
    """A tuple of exact polynomials seen as a map between coordinate spaces."""

    def __init__(self, components, nvars_in):
        self.components = tuple(components)
        self.nvars_in = nvars_in
        self.dim_out = len(self.components)

    def eval(self, point):
        return tuple(p.eval(point) for p in self.components)

    def subs(self, images):
        return PolynomialMap(
            tuple(p.subs(images) for p in self.components), images[0].nvars
        )

    def __eq__(self, other):
        return isinstance(other, PolynomialMap) and self.components == other.components


def group_law_map(alg):
    """The symbolic product ``m(x, y)`` as a polynomial map in 2n variables."""
    cached = getattr(alg, "_group_law_map", None)
    if cached is not None:
        return cached
    n = alg.dim
    x = tuple(Poly.variable(2 * n, i) for i in range(n))
    y = tuple(Poly.variable(2 * n, n + i) for i in range(n))
    out = PolynomialMap(bch_product(alg, x, y), 2 * n)
    alg._group_law_map = out
    return out


def _drop_second_block(p, n):
    """Restrict a polynomial in (x, y) to ``y = 0`` as a polynomial in x."""
    terms = {}
    for e, c in p.terms.items():
        if any(e[n:]):
            continue
        terms[e[:n]] = c
    return Poly(n, terms)


class VectorField:
    """First-order operator ``sum_k a_k(x) d/dx_k`` with exact coefficients."""

    def __init__(self, coefficients):
        self.coefficients = tuple(coefficients)
        self.dim = len(self.coefficients)

    def apply(self, f: Poly) -> Poly:
        out = Poly.zero(self.dim)
        for k, a in enumerate(self.coefficients):
            if not a.is_zero():
                out = out + a * f.diff(k)
        return out

    def value_at_zero(self):
        return tuple(a.constant_term() for a in self.coefficients)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def pretty(self, names=None):
        names = names or [f"x{i + 1}" for i in range(self.dim)]
        parts = [
            f"({a.pretty(names)}) d/d{names[k]}"
            for k, a in enumerate(self.coefficients)
            if not a.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


def left_invariant_fields(alg):
    """The frame of left-invariant fields extending the coordinate basis.

    Coefficients are read off the group law: the field with identity value
    ``e_j`` has coefficients ``dm_k/dy_j`` at ``y = 0``.
    """
    cached = getattr(alg, "_left_frame", None)
    if cached is not None:
        return cached
    n = alg.dim
    m = group_law_map(alg)
    fields = []
    for j in range(n):
        coeffs = tuple(_drop_second_block(mk.diff(n + j), n) for mk in m.components)
        fields.append(VectorField(coeffs))
    fields = tuple(fields)
    alg._left_frame = fields
    return fields


def combine_fields(fields, coefficients):
    """Constant-coefficient combination of vector fields."""
    n = fields[0].dim
    coeffs = [Poly.zero(n) for _ in range(n)]
    for c, f in zip(coefficients, fields):
        if c:
            for k in range(n):
                coeffs[k] = coeffs[k] + f.coefficients[k] * c
    return VectorField(coeffs)


def bracket_field(f, g):
    """Commutator ``[f, g]`` of two vector fields, again a vector field."""
    n = f.dim
    coeffs = []
    for k in range(n):
        a = Poly.zero(n)
        for i in range(n):
            a = a + f.coefficients[i] * g.coefficients[k].diff(i)
            a = a - g.coefficients[i] * f.coefficients[k].diff(i)
        coeffs.append(a)
    return VectorField(coeffs)


def group_jacobian_determinant(alg, argument="y"):
    """Symbolic Jacobian determinant of the product in one argument."""
    n = alg.dim
    m = group_law_map(alg)
    offset = n if argument == "y" else 0
    rows = [
        [m.components[k].diff(offset + j) for j in range(n)] for k in range(n)
    ]
    return _poly_det(rows)


def _poly_det(rows):
    n = len(rows)
    nvars = rows[0][0].nvars

    def minor(cols, r):
        if r == n:
            return Poly.constant(nvars, 1)
        total = Poly.zero(nvars)
        sign = 1
        for idx, c in enumerate(cols):
            entry = rows[r][c]
            if not entry.is_zero():
                sub = minor(cols[:idx] + cols[idx + 1:], r + 1)
                total = total + entry * sub * sign
            sign = -sign
        return total

    return minor(tuple(range(n)), 0)


def homogeneous_norm(degrees, v):
    """``max_k |v_k|^(1/d_k)``; exactly 1-homogeneous for the dilations."""
    best = 0.0
    for d, c in zip(degrees, v):
        a = abs(float(c))
        if a:
            best = max(best, a ** (1.0 / d))
    return best


def surrogate_modulus(family, s, x):
    """Computable two-sided stand-in for the modulus of a point of ``G_s``.

    ``x`` is a lift in the ambient algebra; the value is the smaller of the
    homogeneous norms of its two projections.
    """
    s = Q(s)
    if s <= 0:
        raise ValueError("the family parameter must be positive")
    degrees = family.ambient.degrees
    p0 = linalg.mat_vec(family.P0.eval(s), x)
    pinf = linalg.mat_vec(family.PInf.eval(s), x)
    return min(homogeneous_norm(degrees, p0), homogeneous_norm(degrees, pinf))
