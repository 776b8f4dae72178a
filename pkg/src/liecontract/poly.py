"""Exact polynomial arithmetic.

Two small rings cover everything the package needs:

* :class:`Poly` — multivariate polynomials in a fixed number of variables
  with ``fractions.Fraction`` coefficients.  Used for group laws, vector
  field coefficients and differential-operator coefficients.
* :class:`LaurentPoly` — univariate Laurent polynomials in the contraction
  parameter, again over ``Fraction``.  Entries of parametric matrices.

Both store a dict ``exponent -> coefficient`` with zero coefficients
dropped, so equality is representation equality.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

Q = Fraction

_ZERO = Fraction(0)


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


class Poly:
    """Multivariate polynomial over the rationals.

    Monomials are keyed by exponent tuples of length ``nvars``.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for expo, coeff in terms.items():
                coeff = _as_fraction(coeff)
                if coeff:
                    self.terms[tuple(expo)] = coeff

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        c = _as_fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else None)

    @classmethod
    def variable(cls, nvars, i):
        expo = [0] * nvars
        expo[i] = 1
        return cls(nvars, {tuple(expo): Q(1)})

    @classmethod
    def monomial(cls, nvars, expo, c=Q(1)):
        return cls(nvars, {tuple(expo): _as_fraction(c)})

    # -- predicates ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, _ZERO)

    # -- ring operations -----------------------------------------------
    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable sets")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, _ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = Poly(self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            out = Poly(self.nvars)
            if c:
                out.terms = {e: cc * c for e, cc in self.terms.items()}
            return out
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, _ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = Poly(self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus -------------------------------------------------------
    def diff(self, i):
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        out = Poly(self.nvars)
        out.terms = terms
        return out

    def eval(self, point):
        """Evaluate at a sequence of Fractions (exact) or floats."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def subs(self, images):
        """Substitute variable ``i`` by polynomial ``images[i]``.

        All images must share one variable count, which becomes the
        variable count of the result.
        """
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars
        one = Poly.constant(nv, 1)
        powers = [{0: one} for _ in range(self.nvars)]
        out = Poly.zero(nv)
        for e, c in self.terms.items():
            term = Poly.constant(nv, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = powers[i]
                if k not in cache:
                    p = cache[max(cache)]
                    for j in range(max(cache), k):
                        p = p * images[i]
                        cache[j + 1] = p
                term = term * cache[k]
            out = out + term
        return out

    # -- degrees ---------------------------------------------------------
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def weighted_components(self, weights):
        """Split into weighted-homogeneous parts: ``{degree: Poly}``."""
        if len(weights) != self.nvars:
            raise ValueError("one weight per variable required")
        comps = {}
        for e, c in self.terms.items():
            d = sum(w * k for w, k in zip(weights, e))
            comps.setdefault(d, {})[e] = c
        return {d: Poly(self.nvars, t) for d, t in sorted(comps.items())}

    def min_weighted_degree(self, weights):
        return min((sum(w * k for w, k in zip(weights, e)) for e in self.terms), default=None)

    def is_weighted_homogeneous(self, weights, degree):
        return all(sum(w * k for w, k in zip(weights, e)) == degree for e in self.terms)

    # -- display ----------------------------------------------------------
    def pretty(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            factors = [f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Poly({self.pretty()})"


class LaurentPoly:
    """Univariate Laurent polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for k, c in coeffs.items():
                c = _as_fraction(c)
                if c:
                    self.coeffs[int(k)] = c

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def term(cls, degree, c=Q(1)):
        return cls({degree: c})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = coeffs.get(k, _ZERO) + c
            if s:
                coeffs[k] = s
            else:
                coeffs.pop(k, None)
        out = LaurentPoly()
        out.coeffs = coeffs
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly()
        out.coeffs = {k: -c for k, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            out = LaurentPoly()
            if c:
                out.coeffs = {k: cc * c for k, cc in self.coeffs.items()}
            return out
        coeffs = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                s = coeffs.get(k, _ZERO) + c1 * c2
                if s:
                    coeffs[k] = s
                else:
                    coeffs.pop(k, None)
        out = LaurentPoly()
        out.coeffs = coeffs
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def eval(self, s):
        """Evaluate at a nonzero rational (or float) parameter value."""
        if not self.coeffs:
            return _ZERO if isinstance(s, (int, Fraction)) else 0.0
        if any(k < 0 for k in self.coeffs) and s == 0:
            raise ZeroDivisionError("Laurent polynomial with negative degrees at 0")
        total = 0
        for k, c in self.coeffs.items():
            total = total + c * s ** k
        return total

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def max_degree(self):
        return max(self.coeffs) if self.coeffs else None

    def constant_term(self):
        return self.coeffs.get(0, _ZERO)

    def coefficient(self, k):
        return self.coeffs.get(k, _ZERO)

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"{c}*s")
            else:
                parts.append(f"{c}*s^{k}")
        return "LaurentPoly(" + " + ".join(parts) + ")"


def poly_exact_div(num: Poly, den: Poly):
    """Divide ``num`` by ``den`` assuming exact divisibility.

    Returns the quotient, or ``None`` when ``den`` does not divide ``num``
    (leading-term elimination in graded-lex order stalls).
    """
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return Poly.zero(num.nvars)

    def lead(p):
        return max(p.terms, key=lambda e: (sum(e), e))

    q = Poly.zero(num.nvars)
    r = num
    dlead = lead(den)
    dc = den.terms[dlead]
    while not r.is_zero():
        rlead = lead(r)
        diff = tuple(a - b for a, b in zip(rlead, dlead))
        if any(d < 0 for d in diff):
            return None
        factor = Poly.monomial(num.nvars, diff, r.terms[rlead] / dc)
        q = q + factor
        r = r - factor * den
    return q


def all_multi_indices(nvars, order):
    """Multi-indices of length ``nvars`` with total degree exactly ``order``."""
    if nvars == 0:
        return [()] if order == 0 else []
    out = []
    for head in range(order + 1):
        for tail in all_multi_indices(nvars - 1, order - head):
            out.append((head,) + tail)
    return out


def multi_indices_up_to(nvars, order):
    out = []
    for m in range(order + 1):
        out.extend(all_multi_indices(nvars, m))
    return out


def cartesian_exponents(bounds):
    """All exponent tuples with ``0 <= e[i] <= bounds[i]``."""
    return product(*(range(b + 1) for b in bounds))
