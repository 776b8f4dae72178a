"""Euclidean quasi-homogeneous model operators and their heat/spectral data.

Everything here runs on flat space: a nonnegative even polynomial symbol
``p`` stands for the constant-coefficient operator ``p(D)``.  That keeps
the heat kernel an explicit inverse-Fourier integral while still
exhibiting the two-regime behaviour driven by the top- and bottom-weight
parts of the symbol (the local and global contracted operators).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, optimize

from .errors import ConstraintViolated, FitFailure, QuadratureFailure

Q = Fraction

_EXP_CUT = 46.0  # exp(-46) ~ 1e-20: integrand tail threshold


def _quad(f, a, b, **kw):
    kw.setdefault("limit", 300)
    out = integrate.quad(f, a, b, full_output=1, **kw)
    value, abserr = out[0], out[1]
    if len(out) > 3:
        scale = max(abs(value), kw.get("epsabs", 1e-12))
        if abserr > 1e-6 * scale:
            raise QuadratureFailure(f"quadrature did not converge: {out[3]}")
    return value


class SymbolOperator:
    """Nonnegative even polynomial symbol on a weighted Euclidean space.

    ``terms`` is a sequence of ``(coefficient, exponents)`` with positive
    coefficients and even exponent vectors; ``weights`` grades the
    underlying coordinates; ``delta`` is the homogeneity degree of the
    ambient lift (defaults to the largest weighted term degree).
    """

    def __init__(self, dim, weights, terms, delta=None):
        self.dim = int(dim)
        self.weights = tuple(Q(w) for w in weights)
        if len(self.weights) != self.dim or any(w <= 0 for w in self.weights):
            raise ConstraintViolated("one positive weight per coordinate required")
        clean = []
        for coeff, expo in terms:
            expo = tuple(int(e) for e in expo)
            if len(expo) != self.dim:
                raise ConstraintViolated("term exponent length != dimension")
            if any(e % 2 for e in expo):
                raise ConstraintViolated("symbol exponents must be even")
            if sum(expo) == 0:
                raise ConstraintViolated("symbol must vanish at 0")
            coeff = float(coeff)
            if coeff <= 0:
                raise ConstraintViolated("symbol coefficients must be positive")
            clean.append((coeff, expo))
        if not clean:
            raise ConstraintViolated("symbol needs at least one term")
        self.terms = tuple(clean)
        self.term_degrees = tuple(
            sum(Q(e) * w for e, w in zip(expo, self.weights)) for _, expo in self.terms
        )
        self.delta = Q(delta) if delta is not None else max(self.term_degrees)

    # -- evaluation -------------------------------------------------------
    def __call__(self, *xi):
        if len(xi) == 1 and self.dim == 1:
            xi = (xi[0],)
        total = 0.0
        for coeff, expo in self.terms:
            term = coeff
            for x, e in zip(xi, expo):
                if e:
                    term = term * x ** e
            total += term
        return total

    def eval_array(self, xi):
        xi = np.asarray(xi, dtype=float)
        if self.dim != 1:
            raise ConstraintViolated("array evaluation is one-dimensional")
        total = np.zeros_like(xi)
        for coeff, expo in self.terms:
            total += coeff * xi ** expo[0]
        return total

    @property
    def homogeneous_dimension(self):
        return sum(self.weights)

    def is_coercive(self):
        """Every coordinate direction must appear in some term."""
        return all(any(expo[i] for _, expo in self.terms) for i in range(self.dim))

    # -- contraction structure ---------------------------------------------
    def part(self, side):
        """Sub-symbol of maximal (local) or minimal (global) weighted degree."""
        target = max(self.term_degrees) if side == "local" else min(self.term_degrees)
        terms = [t for t, d in zip(self.terms, self.term_degrees) if d == target]
        scale = self.delta / target
        weights = tuple(w * scale for w in self.weights)
        return SymbolOperator(self.dim, weights, terms, delta=self.delta)

    def scale_coefficients(self, r):
        """Coefficient dilation ``a_l -> r^{delta_l} a_l``."""
        r = float(r)
        return SymbolOperator(
            self.dim,
            self.weights,
            [
                (coeff * r ** float(d), expo)
                for (coeff, expo), d in zip(self.terms, self.term_degrees)
            ],
            delta=self.delta,
        )

    def family_member(self, s):
        """The contraction family ``p_s``: term ``l`` picks up ``s^{delta-delta_l}``."""
        s = float(s)
        return SymbolOperator(
            self.dim,
            self.weights,
            [
                (coeff * s ** float(self.delta - d), expo)
                for (coeff, expo), d in zip(self.terms, self.term_degrees)
            ],
            delta=self.delta,
        )

    def frequency_cutoff(self, t):
        """Radius beyond which ``exp(-t p)`` is below 1e-20 along each axis."""
        best = None
        for coeff, expo in self.terms:
            e = sum(expo)
            xi = (_EXP_CUT / (t * coeff)) ** (1.0 / e)
            best = xi if best is None else min(best, xi)
        return best

    def __repr__(self):
        body = " + ".join(
            f"{c:g}*xi^{expo}" if self.dim > 1 else f"{c:g}*xi^{expo[0]}"
            for c, expo in self.terms
        )
        return f"SymbolOperator({body}; weights={self.weights}, delta={self.delta})"


def symbol_from_powers(powers, dim=1, weights=None, delta=None):
    """Convenience builder: ``sum_l xi^{a_l}`` in one dimension."""
    terms = [(1.0, (a,)) for a in powers]
    return SymbolOperator(dim, weights or (1,) * dim, terms, delta=delta)


@dataclass
class ModelTriple:
    """A symbol together with its two contracted limits."""

    p: SymbolOperator
    p0: SymbolOperator
    pInf: SymbolOperator
    Q0: Fraction
    QInf: Fraction
    delta: Fraction

    @classmethod
    def from_symbol(cls, p: SymbolOperator):
        p0 = p.part("local")
        pinf = p.part("global")
        triple = cls(
            p=p,
            p0=p0,
            pInf=pinf,
            Q0=p0.homogeneous_dimension,
            QInf=pinf.homogeneous_dimension,
            delta=p.delta,
        )
        triple.validate_domination()
        return triple

    def validate_domination(self):
        """Ratio tests: p0 dominates at infinity, pInf at the origin."""
        if self.p.dim != 1:
            return
        hi = self.p(100.0) / self.p0(100.0)
        lo = self.p(1e-3) / self.pInf(1e-3)
        if not (0.5 < hi < 2.0 and 0.5 < lo < 2.0):
            raise ConstraintViolated("contracted symbols do not dominate their regimes")

    def modulus(self, x):
        """Two-sided norm surrogate ``min`` over the contraction weights."""
        w0 = float(self.p0.weights[0])
        winf = float(self.pInf.weights[0])
        a = abs(float(x))
        if a == 0:
            return 0.0
        return min(a ** (1.0 / w0), a ** (1.0 / winf))


# -- heat kernel --------------------------------------------------------------


def heat_kernel(p: SymbolOperator, t, x, method="auto"):
    """Pointwise heat kernel: inverse Fourier integral of ``exp(-t p)``."""
    t = float(t)
    if t <= 0:
        raise ConstraintViolated("time must be positive")
    if p.dim > 2:
        raise ConstraintViolated("heat kernel supports dimension <= 2")
    if p.dim == 1:
        x1 = float(x) if np.isscalar(x) else float(x[0])
        cutoff = p.frequency_cutoff(t)
        if method == "auto":
            method = "oscillatory" if abs(x1) * cutoff > 6.0 else "plain"
        if method == "plain":
            return _quad(
                lambda xi: math.exp(-t * p(xi)) * math.cos(x1 * xi), 0.0, cutoff,
                epsabs=1e-13, epsrel=1e-11,
            ) / math.pi
        if method == "oscillatory":
            if x1 == 0.0:
                return heat_kernel(p, t, 0.0, method="plain")
            return _quad(
                lambda xi: math.exp(-t * p(xi)), 0.0, cutoff,
                weight="cos", wvar=abs(x1), epsabs=1e-13, epsrel=1e-11,
            ) / math.pi
        raise ValueError(f"unknown method {method!r}")
    # two dimensions: iterated cosine quadrature on the positive quadrant
    x1, x2 = (float(x[0]), float(x[1]))
    c1 = p.frequency_cutoff(t)

    def inner(xi1):
        return _quad(
            lambda xi2: math.exp(-t * p(xi1, xi2)) * math.cos(x2 * xi2), 0.0, c1,
            epsabs=1e-12, epsrel=1e-10,
        )

    return _quad(
        lambda xi1: inner(xi1) * math.cos(x1 * xi1), 0.0, c1,
        epsabs=1e-11, epsrel=1e-9,
    ) / math.pi ** 2


def heat_kernel_mass(p: SymbolOperator, t):
    """``int h_t`` over space, by quadrature (should be 1)."""
    if p.dim != 1:
        raise ConstraintViolated("mass check implemented in one dimension")
    t = float(t)
    w0 = float(p.part("local").weights[0])
    winf = float(p.part("global").weights[0])
    delta = float(p.delta)
    x_max = 10.0 * max(t ** (w0 / delta), t ** (winf / delta), 1.0)
    total = _quad(lambda x: heat_kernel(p, t, x), 0.0, x_max,
                  epsabs=1e-12, epsrel=1e-11, limit=500)
    # the far tail can oscillate with slow polynomial-looking envelopes;
    # extend in octaves until the added mass is negligible
    for _ in range(12):
        piece = _quad(lambda x: heat_kernel(p, t, x), x_max, 2.0 * x_max,
                      epsabs=1e-13, epsrel=1e-11, limit=500)
        total += piece
        x_max *= 2.0
        if abs(piece) < 1e-11:
            break
    return 2.0 * total


def heat_trace(p: SymbolOperator, t):
    """On-diagonal value ``h_t(0)``: the model's heat-trace density."""
    t = float(t)
    if t <= 0:
        raise ConstraintViolated("time must be positive")
    if p.dim == 1:
        return _quad(
            lambda xi: math.exp(-t * p(xi)), 0.0, p.frequency_cutoff(t),
            epsabs=1e-14, epsrel=1e-12,
        ) / math.pi
    if p.dim == 2:
        c = p.frequency_cutoff(t)

        def inner(xi1):
            return _quad(lambda xi2: math.exp(-t * p(xi1, xi2)), 0.0, c,
                         epsabs=1e-13, epsrel=1e-11)

        return _quad(inner, 0.0, c, epsabs=1e-12, epsrel=1e-10) / math.pi ** 2
    raise ConstraintViolated("heat trace supports dimension <= 2")


def trace_slope(p: SymbolOperator, t_lo, t_hi, npoints=9):
    """Fitted slope of ``log trace`` against ``log t`` over a dyadic grid."""
    ts = np.geomspace(t_lo, t_hi, npoints)
    values = np.array([heat_trace(p, t) for t in ts])
    return float(np.polyfit(np.log(ts), np.log(values), 1)[0])


def semigroup_defect(p: SymbolOperator, t1, t2, sample_points, grid_half=None, n_grid=4096):
    """Max defect of ``h_{t1} * h_{t2} = h_{t1+t2}`` at the sample points.

    The convolution runs through a discrete Fourier product of the sampled
    kernel, so it exercises the pointwise quadrature against an FFT route.
    """
    w0 = float(p.part("local").weights[0])
    winf = float(p.part("global").weights[0])
    delta = float(p.delta)
    tmax = t1 + t2
    if grid_half is None:
        grid_half = 24.0 * max(tmax ** (w0 / delta), tmax ** (winf / delta))
    xs = np.linspace(-grid_half, grid_half, n_grid, endpoint=False)
    dx = xs[1] - xs[0]
    freqs = 2.0 * np.pi * np.fft.fftfreq(n_grid, d=dx)
    ghat1 = np.exp(-t1 * p.eval_array(np.abs(freqs)))
    ghat2 = np.exp(-t2 * p.eval_array(np.abs(freqs)))
    spectral_product = ghat1 * ghat2
    conv = np.fft.fftshift(np.fft.ifft(spectral_product)).real / dx
    worst = 0.0
    for xq in sample_points:
        idx = int(round((xq + grid_half) / dx))
        direct = heat_kernel(p, t1 + t2, xs[idx])
        worst = max(worst, abs(conv[idx] - direct))
    return worst


# -- Plancherel density --------------------------------------------------------


def sublevel_volume(p: SymbolOperator, lam):
    """Volume of ``{p <= lam}``; rays from the origin cross the level set once."""
    lam = float(lam)
    if lam <= 0:
        raise ConstraintViolated("level must be positive")
    if not p.is_coercive():
        raise ConstraintViolated("sublevel volumes need a coercive symbol")
    if p.dim == 1:
        hi = p.frequency_cutoff(1.0 / lam) + 1.0
        while p(hi) < lam:
            hi *= 2.0
        root = optimize.brentq(lambda xi: p(xi) - lam, 0.0, hi, xtol=1e-14, rtol=1e-14)
        return 2.0 * root

    def ray_root(theta):
        cx, sx = math.cos(theta), math.sin(theta)
        hi = 1.0
        while p(hi * cx, hi * sx) < lam:
            hi *= 2.0
        return optimize.brentq(
            lambda r: p(r * cx, r * sx) - lam, 0.0, hi, xtol=1e-13, rtol=1e-13
        )

    return _quad(lambda theta: 0.5 * ray_root(theta) ** 2, 0.0, 2.0 * math.pi,
                 epsabs=1e-10, epsrel=1e-9)


def spectral_mass(p: SymbolOperator, lam):
    """``beta([0, lam])``: measure of the sublevel set over ``(2 pi)^d``."""
    return sublevel_volume(p, lam) / (2.0 * math.pi) ** p.dim


def plancherel_density(p: SymbolOperator, lam):
    """Density of the spectral measure against ``d lam / lam`` (route A).

    ``f(lam) = lam * d/dlam [ (2 pi)^{-d} vol{p <= lam} ]`` with the volume
    measured by root-finding and differentiated by central differences.
    """
    lam = float(lam)
    h = 1e-4 * lam
    f2 = spectral_mass(p, lam + h) - spectral_mass(p, lam - h)
    f1 = spectral_mass(p, lam + h / 2) - spectral_mass(p, lam - h / 2)
    deriv = (4.0 * (f1 / h) - f2 / (2.0 * h)) / 3.0  # Richardson
    return lam * deriv


def density_laplace_transform(p: SymbolOperator, t, lam_lo=None, lam_hi=None):
    """Route B: ``int exp(-t lam) f(lam) dlam/lam`` against the trace."""
    t = float(t)
    if lam_lo is None:
        lam_lo = 1e-10 / t if t < 1 else 1e-12 / t
    if lam_hi is None:
        lam_hi = _EXP_CUT / t

    def integrand(u):
        lam = math.exp(u)
        return math.exp(-t * lam) * plancherel_density(p, lam)

    return _quad(integrand, math.log(lam_lo), math.log(lam_hi),
                 epsabs=1e-12, epsrel=1e-8, limit=400)


def density_end_exponent(p: SymbolOperator, lam_lo, lam_hi, npoints=7):
    lams = np.geomspace(lam_lo, lam_hi, npoints)
    vals = np.array([plancherel_density(p, lam) for lam in lams])
    return float(np.polyfit(np.log(lams), np.log(vals), 1)[0])


# -- scaling identities ---------------------------------------------------------


def multiplier_kernel(p: SymbolOperator, m, x):
    """Fourier synthesis of ``m(p)``: the convolution kernel at ``x``."""
    if p.dim != 1:
        raise ConstraintViolated("multiplier kernels implemented in one dimension")
    x = float(x)
    # m is Schwartz-class in lambda; m(p(xi)) decays once p grows
    hi = 1.0
    while abs(m(p(hi))) > 1e-18 and hi < 1e9:
        hi *= 2.0
    return _quad(lambda xi: m(p(xi)) * math.cos(x * xi), 0.0, hi,
                 epsabs=1e-13, epsrel=1e-11, limit=400) / math.pi


def multiplier_mass(p: SymbolOperator, m):
    """``int m dbeta`` by direct frequency integration."""
    if p.dim != 1:
        raise ConstraintViolated("multiplier masses implemented in one dimension")
    hi = 1.0
    while abs(m(p(hi))) > 1e-18 and hi < 1e9:
        hi *= 2.0
    return _quad(lambda xi: m(p(xi)), 0.0, hi, epsabs=1e-13, epsrel=1e-11) / math.pi


@dataclass
class ScalingCheck:
    kernel_deviation: float
    measure_deviation: float
    measure_ratio: float
    predicted_ratio: float


def spectral_scaling_check(p: SymbolOperator, multipliers, r, s=1.0, x_grid=(0.0, 0.4, 1.1)):
    """Kernel and measure covariance of the family under parameter dilation.

    Checks, for each test multiplier ``m``:
    ``K_{p_{r s}}(m)(x) = r^Q K_{p_s}(m(r^delta .))(r . x)`` pointwise and
    ``int m dbeta_{r s} = C(r) int m(r^delta .) dbeta_s`` with a
    multiplier-independent constant ``C(r) = r^Q``.
    """
    r = float(r)
    delta = float(p.delta)
    q = float(p.homogeneous_dimension)
    w = float(p.weights[0])
    p_rs = p.family_member(r * s)
    p_s = p.family_member(s)
    kernel_dev = 0.0
    ratios = []
    for m in multipliers:
        scaled_m = lambda lam, m=m: m(r ** delta * lam)
        for x in x_grid:
            lhs = multiplier_kernel(p_rs, m, x)
            rhs = r ** q * multiplier_kernel(p_s, scaled_m, r ** w * x)
            kernel_dev = max(kernel_dev, abs(lhs - rhs))
        lhs_mass = multiplier_mass(p_rs, m)
        rhs_mass = multiplier_mass(p_s, scaled_m)
        ratios.append(lhs_mass / rhs_mass)
    measure_dev = max(abs(a - r ** q) for a in ratios)
    return ScalingCheck(
        kernel_deviation=kernel_dev,
        measure_deviation=measure_dev,
        measure_ratio=float(np.mean(ratios)),
        predicted_ratio=r ** q,
    )


# -- Gaussian-shape envelope ------------------------------------------------


@dataclass
class EnvelopeFit:
    b: float
    exponent: float
    prefactor: float
    points_used: int


def gaussian_envelope_fit(p: SymbolOperator, t_grid, x_grid):
    """Best constant in the stretched-exponential heat-kernel envelope.

    For each ``t`` the bound reads
    ``-log(h_t(x) / (C t^{-Q0/delta})) >= b (m(x)/t^{1/delta})^{delta/(delta-1)}``
    with ``m`` the two-sided modulus surrogate; ``C`` is calibrated as the
    max of ``h_t t^{Q0/delta}`` over grid points with ``m(x) <= t^{1/delta}``
    and ``b`` is the smallest observed ratio elsewhere.  ``b <= 0`` raises
    :class:`FitFailure`.
    """
    triple = ModelTriple.from_symbol(p)
    delta = float(p.delta)
    exponent = delta / (delta - 1.0)
    q0 = float(triple.Q0)
    prefactor = 0.0
    samples = []
    for t in t_grid:
        t = float(t)
        t_root = t ** (1.0 / delta)
        for x in x_grid:
            m = triple.modulus(x)
            h = heat_kernel(p, t, x)
            scaled = h * t ** (q0 / delta)
            if m <= t_root:
                prefactor = max(prefactor, scaled)
            else:
                samples.append((m / t_root, scaled))
    if prefactor <= 0.0 or not samples:
        raise FitFailure("grid must straddle the on-diagonal region")
    b = math.inf
    used = 0
    for z, scaled in samples:
        if scaled <= 0.0:
            continue  # oscillatory tail zero-crossing: bound holds vacuously
        if scaled > prefactor:
            raise FitFailure("envelope prefactor violated off-diagonal")
        used += 1
        b = min(b, -math.log(scaled / prefactor) / z ** exponent)
    if not used or not math.isfinite(b) or b <= 0.0:
        raise FitFailure("fitted envelope constant must be positive")
    return EnvelopeFit(b=b, exponent=exponent, prefactor=prefactor, points_used=used)
