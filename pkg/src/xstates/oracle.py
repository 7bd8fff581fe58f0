"""Brute-force discord by numerical minimization of the measured
conditional entropy over rank-1 projective measurements.

This module is the independent check for every analytic or approximate
discord expression in :mod:`xstates.measures`: it shares no code path with
them beyond the state type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import XState, normalize_phases, random_xstate
from .measures import _h2, approx_discord
from .spectral import eigendecompose, entropy


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective basis |m0> = cos(theta)|0> + e^{i phi} sin(theta)|1> and
    its orthogonal complement."""

    theta: float
    phi: float

    def projectors(self):
        ct, st = math.cos(self.theta), math.sin(self.theta)
        m0 = np.array([ct, st * np.exp(1j * self.phi)], dtype=np.complex128)
        m1 = np.array([-st * np.exp(-1j * self.phi), ct], dtype=np.complex128)
        return np.outer(m0, m0.conj()), np.outer(m1, m1.conj())


@dataclass(frozen=True)
class OracleResult:
    """Outcome of one conditional-entropy minimization."""

    q_min: float
    theta: float
    phi: float
    grid: int
    restarts: int
    refinement_iterations: int
    min_conditional_entropy: float
    classical_correlation: float
    mutual_information: float
    side: str


def _as_components(x: XState):
    z, w = complex(x.z), complex(x.w)
    return x.a, x.b, x.c, x.d, z.real, z.imag, w.real, w.imag


def conditional_entropy(x: XState, basis: MeasurementBasis, side: str = "B") -> float:
    """Average post-measurement entropy of the unmeasured qubit (bits).

    Measures ``side`` in ``basis``; outcomes with probability below 1e-14
    contribute nothing.
    """
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    st = x if side == "B" else x.swap_qubits()
    a, b, c, d, zr, zi, wr, wi = _as_components(st)
    return _kernels.conditional_entropy_point(
        a, b, c, d, zr, zi, wr, wi, basis.theta, basis.phi
    )


def discord_oracle(
    x: XState, side: str = "B", grid: int = 64, restarts: int = 3
) -> OracleResult:
    """Discord from exhaustive search: grid scan over (theta, phi) followed
    by simplex refinement from the best cells.

    Deterministic for fixed parameters; the reported minimum never increases
    when the grid is refined. Measuring side A is the b <-> c swapped
    problem.
    """
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    st = x if side == "B" else x.swap_qubits()
    # local phases shift the optimal phi but not the minimum
    st = normalize_phases(st).state
    a, b, c, d, zr, zi, wr, wi = _as_components(st)
    ce_min, theta, phi, iters = _kernels.min_conditional_entropy(
        a, b, c, d, zr, zi, wr, wi, grid, restarts
    )
    s_full = entropy(eigendecompose(st))
    s_measured = _h2(a + c)
    s_other = _h2(a + b)
    return OracleResult(
        q_min=s_measured - s_full + ce_min,
        theta=theta,
        phi=phi,
        grid=grid,
        restarts=restarts,
        refinement_iterations=iters,
        min_conditional_entropy=ce_min,
        classical_correlation=s_other - ce_min,
        mutual_information=s_other + s_measured - s_full,
        side=side,
    )


def classical_correlation_oracle(
    x: XState, side: str = "B", grid: int = 64, restarts: int = 3
) -> float:
    """Maximized measurement-induced mutual information; shares the
    optimizer run with :func:`discord_oracle`, so Q + C = I exactly."""
    return discord_oracle(x, side=side, grid=grid, restarts=restarts).classical_correlation


CAMPAIGN_THRESHOLDS = (1e-3, 1e-4, 1e-5, 1e-6, 1e-7)


@dataclass(frozen=True)
class CampaignStats:
    """Error statistics of the approximate discord against the oracle."""

    n: int
    seed: int
    grid: int
    max_err: float
    mean_err: float
    fractions: tuple  # fraction of states with error above each threshold

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "seed": self.seed,
            "grid": self.grid,
            "max_err": self.max_err,
            "mean_err": self.mean_err,
        }
        for thr, frac in zip(CAMPAIGN_THRESHOLDS, self.fractions):
            out[f"frac_gt_1e{round(math.log10(thr))}".replace("-", "")] = frac
        return out


def approx_error_campaign(
    n: int, seed: int = 1, grid: int = 64, restarts: int = 3, progress=None
) -> CampaignStats:
    """|approx_discord - discord_oracle| over ``n`` random states.

    Deterministic per seed. ``progress``, if given, is called with the
    number of finished states every 1000 states.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    errs = np.empty(n)
    for i in range(n):
        x = random_xstate(seed, i)
        qa = approx_discord(x).q
        qo = discord_oracle(x, grid=grid, restarts=restarts).q_min
        errs[i] = abs(qa - qo)
        if progress is not None and (i + 1) % 1000 == 0:
            progress(i + 1)
    fractions = tuple(float((errs > t).mean()) for t in CAMPAIGN_THRESHOLDS)
    return CampaignStats(
        n=n,
        seed=seed,
        grid=grid,
        max_err=float(errs.max()),
        mean_err=float(errs.mean()),
        fractions=fractions,
    )
