"""Dimension bookkeeping and volume-growth experiments for a contraction family.

The exact side reports homogeneous and growth dimensions of the three
distinguished quotients and asserts the inequalities that relate them.
The numeric side estimates the volume of surrogate-modulus balls by
deterministic Monte Carlo and fits a growth exponent; it is a smoke test
by design, with wide tolerances, since the surrogate only matches the
control modulus up to unknown constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import ConstraintViolated, SampleBudgetTooSmall
from .grouplaw import homogeneous_norm

Q = Fraction


@dataclass
class DimensionReport:
    Q0: int
    QInf: int
    Q1: int  # homogeneous dimension of the ambient algebra
    D0: int
    DInf: int
    D1: int
    stratified_local: bool
    stratified_global: bool

    def inequalities(self):
        """Each theorem-backed inequality with its truth value."""
        checks = {
            "QInf >= Q0": self.QInf >= self.Q0,
            "D1 >= max(D0, DInf)": self.D1 >= max(self.D0, self.DInf),
            "D1 <= QInf": self.D1 <= self.QInf,
            "D0 <= Q0": self.D0 <= self.Q0,
            "DInf <= QInf": self.DInf <= self.QInf,
            "D0 == Q0 iff local limit stratified": (self.D0 == self.Q0)
            == self.stratified_local,
            "DInf == QInf iff global limit stratified": (self.DInf == self.QInf)
            == self.stratified_global,
        }
        return checks

    def all_hold(self):
        return all(self.inequalities().values())


def dimension_report(family) -> DimensionReport:
    """Exact dimension invariants of the local/global limits and the generic fiber."""
    local = family.bracket_family("local").limit_algebra()
    glob = family.bracket_family("global").limit_algebra()
    generic = family.bracket_family("local").algebra_at(1)
    return DimensionReport(
        Q0=local.homogeneous_dimension(),
        QInf=glob.homogeneous_dimension(),
        Q1=family.ambient.homogeneous_dimension(),
        D0=local.growth_dimension(),
        DInf=glob.growth_dimension(),
        D1=generic.growth_dimension(),
        stratified_local=local.is_stratified(),
        stratified_global=glob.is_stratified(),
    )


def n0_formula(k, d, d_prime):
    """Volume-transition exponent of the filiform-times-line family.

    For the rank-``k`` filiform algebra with an extra central direction of
    degree ``d`` and chain degrees ``j + d' - 1``, the sharp small-parameter
    exponent is ``k + d' - 1 - d``; the growth-dimension gap ``D1 - D0``
    equals ``k - 1`` and may differ from it on either side.
    """
    if not (d < k + d_prime - 1):
        raise ConstraintViolated("requires d < k + d' - 1")
    return {"N0": k + d_prime - 1 - d, "D1_minus_D0": k - 1}


@dataclass
class VolumeFit:
    radii: tuple
    volumes: tuple
    exponent: float
    samples_per_radius: int
    seed: int


_CHUNK = 1 << 14


def _philox_uniform(seed, chunk_index, size, dim):
    # chunk key sits in the second counter word: in-stream draws only
    # advance the first word, so distinct chunks can never collide
    bits = np.random.Generator(
        np.random.Philox(key=np.uint64(seed), counter=[0, np.uint64(chunk_index), 0, 0])
    )
    return bits.random((size, dim))


def ball_volume_experiment(family, s, radii, sample_count, seed):
    """Monte-Carlo volume of surrogate balls and a log-log growth fit.

    Sampling is chunked through counter-based streams, so the result is
    bit-for-bit reproducible for a given ``(seed, sample_count)`` no matter
    how chunks are scheduled.
    """
    coords = family.h0_coords
    dim = len(coords)
    if dim > 4:
        raise ConstraintViolated("volume experiment supports complement dimension <= 4")
    if sample_count < 1000:
        raise SampleBudgetTooSmall("need at least 1000 samples per radius")
    radii = [float(r) for r in radii]
    if any(r < 1 for r in radii):
        raise ConstraintViolated("radii must be >= 1")
    s = Q(s)
    degrees = family.ambient.degrees
    n = family.ambient.dim
    p0 = np.array(family.P0.eval(s), dtype=float)
    pinf = np.array(family.PInf.eval(s), dtype=float)
    lam_inv = np.array(family.lambda_inverse_matrix().eval(s), dtype=float)
    h0_deg = family.h0_degrees
    hinf_deg = family.hInf_degrees

    volumes = []
    for r_index, r in enumerate(radii):
        # bounding box: a point of the ball satisfies N(P0 x) < r or
        # N(PInf x) < r; in h0 coordinates the first gives |x_a| < r^{d_a},
        # the second lands in the lambda-inverse image of the global box.
        half = np.array([r ** d for d in h0_deg])
        global_box = np.array([r ** d for d in hinf_deg])
        image_half = np.abs(lam_inv) @ global_box
        half = np.maximum(half, image_half)
        box_volume = float(np.prod(2.0 * half))

        hits = 0
        remaining = sample_count
        chunk_index = 0
        while remaining > 0:
            take = min(_CHUNK, remaining)
            u = _philox_uniform(seed, (r_index << 32) + chunk_index, take, dim)
            pts = (2.0 * u - 1.0) * half
            lifts = np.zeros((take, n))
            for a, c in enumerate(coords):
                lifts[:, c] = pts[:, a]
            v0 = lifts @ p0.T
            vinf = lifts @ pinf.T
            d_arr = np.array(degrees, dtype=float)
            with np.errstate(divide="ignore"):
                n0 = np.max(np.abs(v0) ** (1.0 / d_arr), axis=1)
                ninf = np.max(np.abs(vinf) ** (1.0 / d_arr), axis=1)
            hits += int(np.sum(np.minimum(n0, ninf) < r))
            remaining -= take
            chunk_index += 1
        volumes.append(box_volume * hits / sample_count)

    logr = np.log(np.array(radii))
    logv = np.log(np.maximum(np.array(volumes), 1e-300))
    slope = float(np.polyfit(logr, logv, 1)[0])
    return VolumeFit(
        radii=tuple(radii),
        volumes=tuple(volumes),
        exponent=slope,
        samples_per_radius=sample_count,
        seed=seed,
    )


def surrogate_ball_indicator(family, s, r, x):
    """True when the lifted point lies in the surrogate ball of radius r."""
    degrees = family.ambient.degrees
    p0 = linalg.mat_vec(family.P0.eval(Q(s)), x)
    pinf = linalg.mat_vec(family.PInf.eval(Q(s)), x)
    return min(homogeneous_norm(degrees, p0), homogeneous_norm(degrees, pinf)) < r
