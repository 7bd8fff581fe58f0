"""X-pattern grading of operators, preservation verdicts for Hamiltonians,
Lindblad generators and Kraus channels, channel application, and an RK4
integrator for pattern-preserving master equations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import measures, spectral
from .core import X_PATTERN, XState, from_matrix
from .errors import (
    CompletenessViolated,
    InvalidCoupling,
    NonOrthonormalOperators,
    NotHermitian,
    NotPreserving,
    StepRejected,
    ValidationError,
)

GRADE_RTOL = 1e-12
COUPLING_TOL = 1e-12

SIGMA = (
    np.eye(2, dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)
PAULI_LABELS = "IXYZ"

X_MASK = np.zeros((4, 4), dtype=bool)
for _pos in X_PATTERN:
    X_MASK[_pos] = True


def pauli_tensor(mu: int, nu: int) -> np.ndarray:
    """sigma_mu (x) sigma_nu with index order (I, X, Y, Z)."""
    return np.kron(SIGMA[mu], SIGMA[nu])


def pauli_string_matrix(label: str) -> np.ndarray:
    """Two-letter Pauli string like ``"ZI"`` or ``"XX"`` as a 4x4 matrix."""
    if len(label) != 2 or any(ch not in PAULI_LABELS for ch in label):
        raise ValueError(f"expected a two-letter string over IXYZ, got {label!r}")
    return pauli_tensor(PAULI_LABELS.index(label[0]), PAULI_LABELS.index(label[1]))


class Grade(Enum):
    X = "x"
    OFF_X = "off_x"
    MIXED = "mixed"
    ZERO = "zero"


@dataclass(frozen=True)
class GradedOperator:
    """A 4x4 operator split into its X-pattern and off-pattern parts.

    The two support patterns multiply like a Z2 grading: X.X = X,
    X.off = off, off.off = X, which is what makes the preservation
    verdicts below exact.
    """

    matrix: np.ndarray
    x_part: np.ndarray
    off_part: np.ndarray
    grade: Grade
    pauli: np.ndarray  # coefficients over sigma_mu (x) sigma_nu

    def offending_paulis(self) -> list:
        """Labels of Pauli components living on the off-X pattern."""
        out = []
        for mu in range(4):
            for nu in range(4):
                coeff = np.vdot(pauli_tensor(mu, nu), self.off_part) / 4.0
                if abs(coeff) > 1e-12 * max(1.0, float(np.linalg.norm(self.matrix))):
                    out.append(PAULI_LABELS[mu] + PAULI_LABELS[nu])
        return out


def grade(matrix: np.ndarray) -> GradedOperator:
    """Split an operator by support pattern and classify it."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    x_part = np.where(X_MASK, m, 0.0)
    off_part = m - x_part
    norm = float(np.linalg.norm(m))
    pauli = np.empty((4, 4), dtype=np.complex128)
    for mu in range(4):
        for nu in range(4):
            pauli[mu, nu] = np.vdot(pauli_tensor(mu, nu), m) / 4.0
    if norm == 0.0:
        g = Grade.ZERO
    elif float(np.linalg.norm(off_part)) <= GRADE_RTOL * norm:
        g = Grade.X
    elif float(np.linalg.norm(x_part)) <= GRADE_RTOL * norm:
        g = Grade.OFF_X
    else:
        g = Grade.MIXED
    return GradedOperator(m, x_part, off_part, g, pauli)


@dataclass(frozen=True)
class Verdict:
    preserving: bool
    message: str
    offenders: tuple = ()

    def __bool__(self) -> bool:
        return self.preserving


def check_hamiltonian(h: np.ndarray) -> Verdict:
    """An X-shaped Hamiltonian (and only such) keeps X states X shaped."""
    m = np.asarray(h, dtype=np.complex128)
    dev = np.abs(m - m.conj().T).max()
    if dev > 1e-10 * max(1.0, float(np.linalg.norm(m))):
        raise NotHermitian(f"Hamiltonian deviates from Hermiticity by {dev:.3g}")
    g = grade(m)
    if g.grade in (Grade.X, Grade.ZERO):
        return Verdict(True, "Hamiltonian is X shaped")
    return Verdict(
        False,
        f"Hamiltonian has off-pattern support (grade {g.grade.value})",
        tuple(g.offending_paulis()),
    )


@dataclass(frozen=True)
class LindbladSpec:
    """Master-equation data: Hamiltonian, dissipation operators, and the
    Hermitian PSD coupling matrix h (rates, units 1/time with hbar = 1).

    The dissipator is 2 L_n rho L_m^dag - rho L_m^dag L_n - L_m^dag L_n rho
    summed against h[n, m]. Operators must be mutually orthogonal in the
    Hilbert-Schmidt inner product and orthogonal to the identity; their
    norms are free (rescaling an operator rescales the matching h entries).
    """

    operators: tuple
    coupling: np.ndarray
    hamiltonian: Optional[np.ndarray] = None

    @classmethod
    def from_rates(cls, operators, rates, hamiltonian=None) -> "LindbladSpec":
        ops = tuple(np.asarray(op, dtype=np.complex128) for op in operators)
        return cls(ops, np.diag(np.asarray(rates, dtype=float)).astype(complex), hamiltonian)


def check_lindblad(spec: LindbladSpec) -> Verdict:
    """A generator preserves the X pattern iff the Hamiltonian is X shaped,
    every coupled dissipation operator is homogeneous (pure X or pure
    off-X pattern), and h never couples operators of different grade."""
    ops = [np.asarray(op, dtype=np.complex128) for op in spec.operators]
    k = len(ops)
    if k > 15:  # identity-free operator space of a 4x4 system
        raise NonOrthonormalOperators(f"{k} operators cannot be orthogonal and traceless")
    h = np.asarray(spec.coupling, dtype=np.complex128)
    if h.shape != (k, k):
        raise InvalidCoupling(f"coupling shape {h.shape} does not match {k} operators")
    if k:
        if np.abs(h - h.conj().T).max() > 1e-10 * max(1.0, float(np.linalg.norm(h))):
            raise InvalidCoupling("coupling matrix is not Hermitian")
        evals = spectral.hermitian_eigen(h)[0]
        if evals[-1] < -1e-10 * max(1.0, float(np.linalg.norm(h))):
            raise InvalidCoupling(f"coupling matrix has negative eigenvalue {evals[-1]:.3g}")
    for i in range(k):
        ni = float(np.linalg.norm(ops[i]))
        if ni == 0.0:
            raise NonOrthonormalOperators(f"operator {i} is zero")
        if abs(ops[i].trace()) > 1e-10 * ni:
            raise NonOrthonormalOperators(f"operator {i} is not traceless")
        for j in range(i + 1, k):
            nj = float(np.linalg.norm(ops[j]))
            inner = abs(np.vdot(ops[i], ops[j]))
            if inner > 1e-10 * ni * nj:
                raise NonOrthonormalOperators(
                    f"operators {i} and {j} are not orthogonal (|<Li,Lj>| = {inner:.3g})"
                )
    if spec.hamiltonian is not None:
        hv = check_hamiltonian(spec.hamiltonian)
        if not hv.preserving:
            return Verdict(False, "Hamiltonian part: " + hv.message, hv.offenders)
    grades = [grade(op).grade for op in ops]
    offenders = []
    hnorm = float(np.abs(h).max()) if k else 0.0
    for i in range(k):
        coupled = any(abs(h[i, j]) > COUPLING_TOL * max(1.0, hnorm) for j in range(k))
        if coupled and grades[i] == Grade.MIXED:
            offenders.append(f"L{i}:mixed")
    for i in range(k):
        for j in range(k):
            if abs(h[i, j]) <= COUPLING_TOL * max(1.0, hnorm):
                continue
            gi, gj = grades[i], grades[j]
            if Grade.ZERO in (gi, gj) or Grade.MIXED in (gi, gj):
                continue
            if gi != gj:
                offenders.append(f"h[{i},{j}]:cross-grade")
    if offenders:
        return Verdict(False, "generator mixes the two support patterns", tuple(offenders))
    return Verdict(True, "generator preserves the X pattern")


@dataclass(frozen=True)
class KrausSet:
    """Operator-sum channel rho -> sum_i X_i rho X_i^dag."""

    operators: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "operators",
            tuple(np.asarray(op, dtype=np.complex128) for op in self.operators),
        )


def check_kraus(channel: KrausSet) -> Verdict:
    """A channel preserves the X pattern iff every Kraus operator is
    homogeneous in the grading. Trace preservation sum(X_i^dag X_i) = I is
    enforced first."""
    total = np.zeros((4, 4), dtype=np.complex128)
    for op in channel.operators:
        total += op.conj().T @ op
    dev = float(np.abs(total - np.eye(4)).max())
    if dev > 1e-10:
        raise CompletenessViolated(dev)
    offenders = []
    for i, op in enumerate(channel.operators):
        g = grade(op).grade
        if g == Grade.MIXED:
            offenders.append(f"X{i}:mixed")
    if offenders:
        return Verdict(False, "channel mixes the two support patterns", tuple(offenders))
    return Verdict(True, "channel preserves the X pattern")


def apply_channel(channel: KrausSet, rho: np.ndarray) -> np.ndarray:
    """sum_i X_i rho X_i^dag."""
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    for op in channel.operators:
        out += op @ rho @ op.conj().T
    return out


def _rhs_terms(spec: LindbladSpec):
    # precompute (h_nm, L_n, L_m^dag, L_m^dag L_n) for the nonzero couplings
    ops = [np.asarray(op, dtype=np.complex128) for op in spec.operators]
    h = np.asarray(spec.coupling, dtype=np.complex128)
    terms = []
    for n in range(len(ops)):
        for m in range(len(ops)):
            if abs(h[n, m]) == 0.0:
                continue
            lmd = ops[m].conj().T
            terms.append((h[n, m], ops[n], lmd, lmd @ ops[n]))
    return terms


def _rhs(ham, terms, rho):
    if ham is None:
        drho = np.zeros_like(rho)
    else:
        drho = 1j * (rho @ ham - ham @ rho)
    for hnm, ln, lmd, lmdln in terms:
        drho = drho + hnm * (2.0 * (ln @ rho @ lmd) - rho @ lmdln - lmdln @ rho)
    return drho


def _rk4_step(ham, terms, rho, dt):
    k1 = _rhs(ham, terms, rho)
    k2 = _rhs(ham, terms, rho + 0.5 * dt * k1)
    k3 = _rhs(ham, terms, rho + 0.5 * dt * k2)
    k4 = _rhs(ham, terms, rho + dt * k3)
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def off_pattern_norm(m: np.ndarray) -> float:
    """Frobenius norm of the off-pattern part of a 4x4 matrix."""
    return float(np.linalg.norm(np.where(X_MASK, 0.0, np.asarray(m))))


def rk4_lindblad(spec: LindbladSpec, rho0: np.ndarray, dt: float, steps: int):
    """Raw fixed-step RK4 integration of the master equation.

    No projection, no preservation check. Returns the final matrix and the
    largest off-pattern norm seen, which is the honest leakage measure for
    generators that do *not* preserve the pattern.
    """
    ham = None if spec.hamiltonian is None else np.asarray(spec.hamiltonian, dtype=np.complex128)
    terms = _rhs_terms(spec)
    rho = np.asarray(rho0, dtype=np.complex128).copy()
    max_leak = off_pattern_norm(rho)
    for _ in range(steps):
        rho = _rk4_step(ham, terms, rho, dt)
        leak = off_pattern_norm(rho)
        if leak > max_leak:
            max_leak = leak
    return rho, max_leak


_TRAJECTORY_MEASURES = {
    "concurrence": measures.concurrence,
    "negativity": measures.negativity,
    "purity": spectral.purity,
    "entropy": lambda x: spectral.entropy(spectral.eigendecompose(x)),
    "fef": measures.fef,
    "mid": measures.mid,
    "approx_discord": lambda x: measures.approx_discord(x).q,
}


@dataclass(frozen=True)
class Trajectory:
    """Sampled X states and measures along one integration run."""

    times: np.ndarray
    states: tuple
    measures: dict
    max_leakage: float
    spec: LindbladSpec
    dt: float
    sample_every: int


def _project_sample(rho: np.ndarray, leakage_tol: float):
    sym = 0.5 * (rho + rho.conj().T)
    tr = float(sym.trace().real)
    if abs(tr - 1.0) > 1e-9:
        raise StepRejected(f"trace drifted to {tr!r}")
    sym = sym / tr
    leak = off_pattern_norm(sym)
    if leak > leakage_tol:
        raise StepRejected(
            f"off-pattern leakage {leak:.3g} exceeds {leakage_tol:.3g}; "
            "the generator is probably not pattern preserving or dt is too large"
        )
    projected = np.where(X_MASK, sym, 0.0)
    try:
        return from_matrix(projected), leak
    except ValidationError as exc:
        raise StepRejected(f"sampled state failed validation: {exc}") from exc


def evolve(
    spec: LindbladSpec,
    x0: XState,
    dt: float,
    t_max: float,
    sample_every: int = 1,
    record: tuple = ("concurrence",),
    leakage_tol: float = 1e-10,
) -> Trajectory:
    """Integrate a pattern-preserving master equation from ``x0``.

    Classic fixed-step RK4 on the full 4x4 matrix. Samples every
    ``sample_every`` steps; at each sample the off-pattern leakage must stay
    below ``leakage_tol`` (raises :class:`StepRejected` otherwise), the
    state is re-projected onto the X pattern, and the requested measures
    are recorded. Raises :class:`NotPreserving` when the generator fails
    :func:`check_lindblad`.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if sample_every < 1:
        raise ValueError(f"sample_every must be >= 1, got {sample_every}")
    for name in record:
        if name not in _TRAJECTORY_MEASURES:
            raise ValueError(
                f"unknown measure {name!r}; available: {sorted(_TRAJECTORY_MEASURES)}"
            )
    verdict = check_lindblad(spec)
    if not verdict.preserving:
        raise NotPreserving(f"{verdict.message}: {', '.join(verdict.offenders)}")
    ham = None if spec.hamiltonian is None else np.asarray(spec.hamiltonian, dtype=np.complex128)
    terms = _rhs_terms(spec)
    steps = max(1, int(round(t_max / dt)))
    rho = x0.to_matrix()
    times = [0.0]
    states = [x0]
    recorded = {name: [_TRAJECTORY_MEASURES[name](x0)] for name in record}
    max_leak = 0.0
    for step in range(1, steps + 1):
        rho = _rk4_step(ham, terms, rho, dt)
        if step % sample_every == 0 or step == steps:
            state, leak = _project_sample(rho, leakage_tol)
            max_leak = max(max_leak, leak)
            times.append(step * dt)
            states.append(state)
            for name in record:
                recorded[name].append(_TRAJECTORY_MEASURES[name](state))
    return Trajectory(
        times=np.array(times),
        states=tuple(states),
        measures={name: np.array(vals) for name, vals in recorded.items()},
        max_leakage=max_leak,
        spec=spec,
        dt=dt,
        sample_every=sample_every,
    )


def _concurrence_gap(x: XState) -> float:
    # signed distance to entanglement death: concurrence/2 before clipping
    return max(
        abs(x.z) - math.sqrt(x.a * x.d),
        abs(x.w) - math.sqrt(x.b * x.c),
    )


def _integrate_from(spec: LindbladSpec, x: XState, duration: float, dt_hint: float) -> XState:
    n = max(1, int(math.ceil(duration / dt_hint)))
    rho, _ = rk4_lindblad(spec, x.to_matrix(), duration / n, n)
    sym = 0.5 * (rho + rho.conj().T)
    sym /= sym.trace().real
    return from_matrix(np.where(X_MASK, sym, 0.0))


def esd_time(
    traj: Trajectory, tol: float = 1e-12, confirm: int = 3, refine_iterations: int = 40
) -> Optional[float]:
    """First time the concurrence dies and stays dead.

    Scans the sampled concurrence for the first value <= ``tol`` that is
    followed by ``confirm`` equally dead samples, then refines the crossing
    by bisection (re-integrating from the preceding sample). Returns None
    when the concurrence never vanishes on the horizon.
    """
    if "concurrence" in traj.measures:
        conc = traj.measures["concurrence"]
    else:
        conc = np.array([measures.concurrence(s) for s in traj.states])
    n = len(conc)
    hit = None
    for i in range(n):
        if conc[i] <= tol and i + confirm < n and np.all(conc[i + 1 : i + 1 + confirm] <= tol):
            hit = i
            break
    if hit is None:
        return None
    if hit == 0:
        return 0.0
    lo_t = float(traj.times[hit - 1])
    hi_t = float(traj.times[hit])
    lo_state = traj.states[hit - 1]
    if _concurrence_gap(lo_state) <= 0.0:
        return lo_t
    lo, hi = lo_t, hi_t
    for _ in range(refine_iterations):
        mid_t = 0.5 * (lo + hi)
        state = _integrate_from(traj.spec, lo_state, mid_t - lo_t, traj.dt)
        if _concurrence_gap(state) > 0.0:
            lo = mid_t
        else:
            hi = mid_t
        if hi - lo < 1e-12 * max(1.0, hi_t):
            break
    return 0.5 * (lo + hi)
