"""Time evolution of X states, two independent routes, and trajectory tools.

evolve_closed assembles rho(t) from the per-element closed forms;
evolve_oracle conjugates with the series matrix exponential and knows
nothing about them.  They must agree entrywise to 1e-10, which is the
load-bearing check of the whole package (`xdyn validate`, and the test
suite, exercise it across parameter space including the degenerate
eta -> 0 corner).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg, model, states
from .errors import (
    ConsistencyError,
    DomainError,
    InsufficientSpanError,
    InvalidInputError,
    RangeError,
    XdynError,
)
from .fidelity import DensityMatrix, fidelity, fidelity_bell_diagonal, purity

BELL_DIAGONAL_TOL = 1e-12
BLOCH_MATCH_TOL = 1e-12

# A trajectory counts as stationary when the fidelity never drops further
# than this below 1.
STATIONARY_TOL = 1e-10

COMMUTATOR_TOL = 1e-12


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sampling of [0, t_max] with `steps` points, endpoints included."""

    t_max: float
    steps: int

    def __post_init__(self):
        if isinstance(self.t_max, bool) or not isinstance(self.t_max, (int, float)):
            raise RangeError(f"TimeGrid.t_max must be a number, got {self.t_max!r}")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise RangeError(f"TimeGrid.t_max must be finite and positive, got {self.t_max}")
        if isinstance(self.steps, bool) or not isinstance(self.steps, int):
            raise RangeError(f"TimeGrid.steps must be an int, got {self.steps!r}")
        if self.steps < 2:
            raise RangeError(f"TimeGrid.steps must be at least 2, got {self.steps}")

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)


@dataclass(frozen=True)
class FidelityTrace:
    """Sampled trajectory data produced by ``scan``.

    f_closed is populated only for Bell-diagonal initial states, where the
    closed-form shortcut applies; c1_minus_c2 tracks the coefficient
    difference whose sign distinguishes the two stationary half-spaces.
    """

    times: np.ndarray
    f_numeric: np.ndarray
    f_closed: np.ndarray | None
    purity: np.ndarray
    c1_minus_c2: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        for name in ("f_numeric", "purity", "c1_minus_c2"):
            if len(getattr(self, name)) != n:
                raise ConsistencyError(f"FidelityTrace.{name} length differs from times")
        if self.f_closed is not None and len(self.f_closed) != n:
            raise ConsistencyError("FidelityTrace.f_closed length differs from times")


@dataclass(frozen=True)
class StationarityVerdict:
    """Outcome of ``classify``: stationary or periodic, with the reason.

    period is present exactly for periodic verdicts.  reason is one of
    zero_field, c1_equals_c2, maximally_mixed, generic (the last covers
    periodic verdicts and everything decided empirically).
    """

    kind: str
    reason: str
    period: float | None = None


def evolve_closed(s: states.XState, p: model.CouplingParams, t: float) -> DensityMatrix:
    """rho(t) assembled from the per-element closed forms.

    The outer block mixes populations a, d with the coherence w through
    mu+- and the anisotropy entry; the inner block is a rotation by
    omega*t.  Output is validated like any other density matrix.
    """
    pr = model.propagator(p, t)
    f = model.frequencies(p)
    mu_p, mu_m, de = pr.mu_plus, pr.mu_minus, pr.delta_entry
    cos_o = math.cos(f.omega * t)
    sin_o = math.sin(f.omega * t)

    mu_prod = mu_p * mu_m
    de_sq = de * de
    de_mu_diff = de * (mu_p - mu_m)

    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = s.a * mu_prod - s.d * de_sq - s.w * de_mu_diff
    m[3, 3] = s.d * mu_prod - s.a * de_sq + s.w * de_mu_diff
    m[0, 3] = s.w * (mu_m * mu_m - de_sq) + (s.a - s.d) * de * mu_m
    m[3, 0] = s.w * (mu_p * mu_p - de_sq) - (s.a - s.d) * de * mu_p
    m[1, 1] = s.b - (s.b - s.c) * sin_o**2
    m[2, 2] = s.c + (s.b - s.c) * sin_o**2
    m[1, 2] = s.z + 1j * (s.b - s.c) * cos_o * sin_o
    m[2, 1] = m[1, 2].conjugate()
    return DensityMatrix(m)


def evolve_oracle(s: states.XState, p: model.CouplingParams, t: float) -> DensityMatrix:
    """rho(t) by conjugation with the series matrix exponential.

    Shares no code with the closed forms; this is the referee.
    """
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise InvalidInputError(f"evolve_oracle: t must be finite, got {t!r}")
    u = linalg.expm(-1j * t * model.hamiltonian(p))
    rho0 = states.xstate_matrix(s)
    return DensityMatrix(u @ rho0 @ linalg.dagger(u))


def overlap_evolved(s: states.XState, p: model.CouplingParams, t: float) -> float:
    """Tr(rho(0) rho(t)) straight from the evolved matrix elements."""
    rho0 = states.xstate_matrix(s)
    rho_t = evolve_closed(s, p, t).matrix
    return linalg.trace_product(rho0, rho_t).real


def _is_bell_diagonal(v: states.BlochVector) -> bool:
    return max(abs(v.s1), abs(v.s2)) <= BELL_DIAGONAL_TOL


def scan(s: states.XState, p: model.CouplingParams, grid: TimeGrid) -> FidelityTrace:
    """Fidelity, purity and c1 - c2 sampled along a time grid.

    f_numeric always comes from the generic overlap route; f_closed is
    added when the initial state is Bell-diagonal.  Evolution failures are
    re-raised with the offending sample index attached.
    """
    rho0 = states.to_density(s)
    v0 = states.to_bloch(s)
    bell = _is_bell_diagonal(v0)
    times = grid.times()
    n = len(times)
    f_num = np.empty(n)
    f_clo = np.empty(n) if bell else None
    pur = np.empty(n)
    cdiff = np.empty(n)
    for k, t in enumerate(times):
        try:
            rho_t = evolve_closed(s, p, float(t))
        except XdynError as exc:
            raise type(exc)(f"scan: evolution failed at sample {k} (t={t}): {exc}") from exc
        f_num[k] = fidelity(rho0, rho_t)
        pur[k] = purity(rho_t)
        vt = states.bloch_from_density(rho_t.matrix)
        cdiff[k] = vt.c1 - vt.c2
        if bell:
            f_clo[k] = fidelity_bell_diagonal(v0, p, float(t))
    return FidelityTrace(times=times, f_numeric=f_num, f_closed=f_clo, purity=pur, c1_minus_c2=cdiff)


def c_difference(v: states.BlochVector, p: model.CouplingParams, t: float) -> float:
    """c1(t) - c2(t) for a Bell-diagonal state, from the evolved matrix.

    The state is evolved in canonical (non-negative coherence) form and the
    initial sign of c1 - c2 is restored afterwards; on the Bell-diagonal
    family the two signed trajectories are exact mirror images, so this is
    lossless.
    """
    if not _is_bell_diagonal(v):
        raise DomainError("c_difference: defined only for Bell-diagonal states")
    sign = 1.0 if v.c1 - v.c2 >= 0 else -1.0
    rho_t = evolve_closed(states.from_bloch(v), p, t)
    vt = states.bloch_from_density(rho_t.matrix)
    return sign * (vt.c1 - vt.c2)


def c_difference_predicted(v: states.BlochVector, p: model.CouplingParams, t: float) -> float:
    """Candidate law (c1(0) - c2(0)) (1 - 2 B^2 sin^2(eta t) / eta^2).

    This is the form `xdyn validate` confirms against the oracle.  The
    factor dips below zero whenever B^2 > Delta^2, i.e. such trajectories
    cross the c1 = c2 plane.
    """
    if not _is_bell_diagonal(v):
        raise DomainError("c_difference_predicted: defined only for Bell-diagonal states")
    f = model.frequencies(p)
    pulse = p.field * t * model.sinc(f.eta * t)
    return (v.c1 - v.c2) * (1.0 - 2.0 * pulse * pulse)


def c_difference_cos2(v: states.BlochVector, p: model.CouplingParams, t: float) -> float:
    """The often-quoted cos^2(eta t) decay law, kept for comparison only.

    It matches the oracle exactly when B^2 = Delta^2 and drifts otherwise;
    see `xdyn validate` for the adjudication.
    """
    if not _is_bell_diagonal(v):
        raise DomainError("c_difference_cos2: defined only for Bell-diagonal states")
    return (v.c1 - v.c2) * math.cos(model.frequencies(p).eta * t) ** 2


def nominal_period(p: model.CouplingParams) -> float | None:
    """2 pi / sqrt(4 B^2 + (jx - jy)^2), or None when that diverges."""
    root = math.hypot(2.0 * p.field, p.jx - p.jy)
    if root == 0.0:
        return None
    return 2.0 * math.pi / root


def _assert_commutes(s: states.XState, p: model.CouplingParams):
    h = model.hamiltonian(model.CouplingParams(p.jx, p.jy, p.jz, 0.0))
    rho = states.xstate_matrix(s)
    defect = linalg.max_abs(h @ rho - rho @ h)
    if defect > COMMUTATOR_TOL:
        raise ConsistencyError(
            f"classify: zero-field Bell-diagonal state should commute, defect {defect}"
        )


def classify(s: states.XState, p: model.CouplingParams) -> StationarityVerdict:
    """Stationary-or-periodic verdict for an initial state.

    Bell-diagonal states are decided in closed form (checking the most
    specific reason first so the maximally mixed state is reported as
    such); anything else is decided empirically from a scan that covers a
    few periods of both the outer and inner oscillation.
    """
    v = states.to_bloch(s)
    f = model.frequencies(p)
    if _is_bell_diagonal(v):
        coeffs = (v.s1, v.s2, v.c1, v.c2, v.c3)
        if all(abs(x) <= BLOCH_MATCH_TOL for x in coeffs):
            return StationarityVerdict(kind="stationary", reason="maximally_mixed")
        if p.field == 0.0:
            _assert_commutes(s, p)
            return StationarityVerdict(kind="stationary", reason="zero_field")
        if abs(v.c1 - v.c2) <= BLOCH_MATCH_TOL:
            return StationarityVerdict(kind="stationary", reason="c1_equals_c2")
        return StationarityVerdict(kind="periodic", reason="generic", period=nominal_period(p))

    # Empirical route: window covering three periods of each active mode.
    windows = []
    fastest = []
    if f.eta > 0.0:
        windows.append(3.0 * math.pi / f.eta)
        fastest.append(math.pi / f.eta)
    if f.omega != 0.0:
        windows.append(6.0 * math.pi / max(abs(f.omega), f.eta))
        fastest.append(math.pi / abs(f.omega))
    if not windows:
        # eta = omega = 0 forces field = jx = jy = 0, leaving a Hamiltonian
        # diagonal in the X basis: every X state commutes with it.
        _assert_commutes(s, p)
        return StationarityVerdict(kind="stationary", reason="generic")
    t_max = sum(windows)
    steps = min(20001, max(2001, int(math.ceil(t_max / min(fastest)) * 300) + 1))
    trace = scan(s, p, TimeGrid(t_max=t_max, steps=steps))
    if float(np.max(1.0 - trace.f_numeric)) < STATIONARY_TOL:
        return StationarityVerdict(kind="stationary", reason="generic")
    period = detect_period(trace)
    if period is None:
        return StationarityVerdict(kind="stationary", reason="generic")
    return StationarityVerdict(kind="periodic", reason="generic", period=period)


def detect_period(trace: FidelityTrace, tol: float = STATIONARY_TOL) -> float | None:
    """Mean spacing of refined fidelity minima, or None for a flat trace.

    Grid minima are kept when they dip at least halfway to the trace's
    deepest excursion, then each is refined with a three-point parabola.
    Fewer than two usable minima raises InsufficientSpanError since no
    spacing exists to average.  The mean spacing is an empirical estimate:
    exact for single-mode traces, a summary statistic for mixed ones.
    """
    f = np.asarray(trace.f_numeric, dtype=float)
    times = np.asarray(trace.times, dtype=float)
    if len(f) < 3:
        raise InsufficientSpanError("detect_period: need at least 3 samples")
    amplitude = float(np.max(1.0 - f))
    if amplitude < tol:
        return None
    threshold = 1.0 - 0.5 * amplitude
    dt = times[1] - times[0]
    refined = []
    for i in range(1, len(f) - 1):
        if f[i] < f[i - 1] and f[i] <= f[i + 1] and f[i] <= threshold:
            denom = f[i - 1] - 2.0 * f[i] + f[i + 1]
            offset = 0.0
            if denom > 0.0:
                offset = 0.5 * dt * (f[i - 1] - f[i + 1]) / denom
            refined.append(times[i] + offset)
    if len(refined) < 2:
        raise InsufficientSpanError(
            f"detect_period: found {len(refined)} usable minima, need at least 2"
        )
    spacings = np.diff(refined)
    return float(np.mean(spacings))
