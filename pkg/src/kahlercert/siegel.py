"""Numerical geometry of the Siegel space of a fixed symplectic form.

A complex structure ``J`` with Kähler form ``Omega0`` is stored through its
Gram matrix ``P = J.T @ Omega0``, a symmetric positive definite matrix with
``P @ inv(Omega0) @ P == -Omega0``.  These matrices form a totally geodesic
submanifold of the SPD cone, so the affine-invariant SPD metric, its
geodesics and Karcher means restrict to the Siegel space.

``Sp(Omega0)`` acts by ``J -> A J A^-1``, i.e. ``P -> A^-T P A^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import sqrtm

from .errors import (
    Degenerate,
    DegenerateOnSegment,
    NoConvergence,
    NotPositive,
    NotSymplectic,
    RadiusTooSmall,
    StepTooLarge,
)
from .exactlin import RationalMatrix
from .kahler import (
    DEFAULT_TOL,
    ComplexStructure,
    KahlerCertificate,
    certify,
    exact_structure,
    polar_structure,
)
from .matgroup import BilinearForm, FiniteMatrixGroup, form_coordinates, invariant_form_space, invariant_positive_form

KARCHER_MAX_ITERS = 200
KARCHER_TOL = 1e-10
LIFT_STEP_CAP = 0.5


def _sym(M: np.ndarray) -> np.ndarray:
    return (M + M.T) / 2


def _spd_fn(P: np.ndarray, fn) -> np.ndarray:
    w, V = np.linalg.eigh(_sym(P))
    return (V * fn(w)) @ V.T


@dataclass(eq=False)
class SiegelPoint:
    """A complex structure with Kähler form ``base_form``, stored by its Gram matrix."""

    gram: np.ndarray
    base_form: np.ndarray

    def __post_init__(self):
        self.gram = _sym(np.asarray(self.gram, dtype=float))
        self.base_form = np.asarray(self.base_form, dtype=float)
        if np.linalg.eigvalsh(self.gram)[0] <= 0:
            raise NotPositive("Siegel point Gram matrix is not positive definite")

    @classmethod
    def from_structure(cls, J, base_form) -> "SiegelPoint":
        J = J.matrix if isinstance(J, ComplexStructure) else np.asarray(J, dtype=float)
        Om = np.asarray(base_form, dtype=float)
        return cls(J.T @ Om, Om)

    @property
    def dimension(self) -> int:
        return self.gram.shape[0]

    @property
    def J(self) -> np.ndarray:
        return -np.linalg.solve(self.base_form, self.gram)

    def constraint_residual(self) -> float:
        """``||P Omega0^-1 P + Omega0||_F``, zero exactly on the Siegel space."""
        P, Om = self.gram, self.base_form
        return float(np.linalg.norm(P @ np.linalg.solve(Om, P) + Om))


def project_to_siegel(P: np.ndarray, base_form: np.ndarray) -> SiegelPoint:
    """Retract an SPD matrix onto the Siegel space of ``base_form``.

    With ``J' = -Omega0^-1 P`` the polar correction ``J' (-J'^2)^(-1/2)``
    equals the polar structure of ``(P, Omega0)``; its Gram matrix is the
    projected point.  Points already on the Siegel space are fixed.
    """
    J = polar_structure(_sym(P), base_form)
    return SiegelPoint(J.T @ base_form, base_form)


def _same_base(p: SiegelPoint, q: SiegelPoint) -> None:
    if p.base_form.shape != q.base_form.shape or not np.allclose(p.base_form, q.base_form, rtol=1e-12, atol=1e-14):
        raise ValueError("Siegel points refer to different base forms")


def siegel_distance(p: SiegelPoint, q: SiegelPoint) -> float:
    """``||log(P^-1/2 Q P^-1/2)||_F``."""
    _same_base(p, q)
    ih = _spd_fn(p.gram, lambda w: 1 / np.sqrt(w))
    ev = np.linalg.eigvalsh(_sym(ih @ q.gram @ ih))
    if ev[0] <= 0:
        raise NotPositive("Gram matrix is not positive definite")
    return float(np.sqrt(np.sum(np.log(ev) ** 2)))


def retract_structure(J: np.ndarray, form: np.ndarray, target_form: np.ndarray) -> SiegelPoint:
    """Bring ``J`` (Kähler form ``form``) into the Siegel space of ``target_form``.

    Uses the polar structure of the Kähler metric ``J.T @ form`` against
    ``target_form``.  The map is the identity on structures for which
    ``target_form`` is already a Kähler form close to ``form``, and is
    invariant under positive rescaling of either form.
    """
    gram = _sym(J.T @ form)
    Jr = polar_structure(gram, target_form)
    return SiegelPoint(Jr.T @ target_form, target_form)


def structure_distance(Ja: np.ndarray, form_a: np.ndarray, Jb: np.ndarray, form_b: np.ndarray) -> float:
    """Siegel distance in the space of ``form_b`` between ``Jb`` and retracted ``Ja``."""
    return siegel_distance(retract_structure(Ja, form_a, form_b), SiegelPoint.from_structure(Jb, form_b))


def is_symplectic(A: np.ndarray, base_form: np.ndarray, tol: float = 1e-9) -> bool:
    A = np.asarray(A, dtype=float)
    return np.linalg.norm(A.T @ base_form @ A - base_form) <= tol * max(1.0, np.linalg.norm(base_form))


def sp_action(A: np.ndarray, p: SiegelPoint, tol: float = 1e-9) -> SiegelPoint:
    """The point of ``A J A^-1``; Gram matrix ``A^-T P A^-1``."""
    A = np.asarray(A, dtype=float)
    if not is_symplectic(A, p.base_form, tol):
        raise NotSymplectic("A does not preserve the base form")
    Ai = np.linalg.inv(A)
    return SiegelPoint(Ai.T @ p.gram @ Ai, p.base_form)


def geometric_mean(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Closed-form midpoint ``P^1/2 (P^-1/2 Q P^-1/2)^1/2 P^1/2``."""
    h = _spd_fn(P, np.sqrt)
    ih = _spd_fn(P, lambda w: 1 / np.sqrt(w))
    return _sym(h @ _spd_fn(ih @ Q @ ih, np.sqrt) @ h)


def karcher_barycenter(
    points: Sequence[SiegelPoint],
    init: SiegelPoint | None = None,
    tolerance: float = KARCHER_TOL,
    max_iters: int = KARCHER_MAX_ITERS,
) -> SiegelPoint:
    """Minimiser of ``sum_i d(q, p_i)^2`` by fixed-point iteration.

    Each step averages the logarithms of the points at the current iterate,
    moves along the exponential of the mean with unit step and retracts to
    the Siegel space.  Stops when the Frobenius norm of the mean tangent
    vector is at most ``tolerance``.
    """
    if not points:
        raise ValueError("karcher_barycenter needs at least one point")
    base = points[0].base_form
    for p in points[1:]:
        _same_base(points[0], p)
    X = (init if init is not None else points[0]).gram
    grams = [p.gram for p in points]
    norm = np.inf
    for _ in range(max_iters):
        w, V = np.linalg.eigh(X)
        h = (V * np.sqrt(w)) @ V.T
        ih = (V * (1 / np.sqrt(w))) @ V.T
        T = sum(_spd_fn(ih @ P @ ih, np.log) for P in grams) / len(grams)
        norm = float(np.linalg.norm(T))
        if norm <= tolerance:
            return project_to_siegel(X, base)
        X = project_to_siegel(h @ _spd_fn(T, np.exp) @ h, base).gram
    raise NoConvergence(max_iters, norm)


def orbit_barycenter(
    matrices: Sequence[np.ndarray], p: SiegelPoint, init: SiegelPoint | None = None, tolerance: float = KARCHER_TOL
) -> SiegelPoint:
    """Barycenter of ``{A p : A in matrices}`` for symplectic ``A``."""
    orbit = [sp_action(A, p, tol=1e-7) for A in matrices]
    return karcher_barycenter(orbit, init=init or p, tolerance=tolerance)


# ---------------------------------------------------------------------------
# Lifting curves of forms
# ---------------------------------------------------------------------------

def lift_form_path(
    omega_path: Sequence[np.ndarray],
    A0: np.ndarray | None = None,
    base_form: np.ndarray | None = None,
    step_cap: float = LIFT_STEP_CAP,
) -> list[np.ndarray]:
    """Matrices ``A_t`` with ``A_t.T @ base @ A_t == Omega_t`` along a sampled path.

    ``base`` defaults to the first sample and ``A0`` to the identity.  Each
    update right-multiplies by the principal square root of
    ``X = Omega_t^-1 Omega_{t+1}``: every primary function ``f`` of ``X``
    satisfies ``f(X).T Omega_t = Omega_t f(X)``, hence
    ``sqrt(X).T Omega_t sqrt(X) = Omega_t X = Omega_{t+1}``, and the factor
    tends to the identity as the samples get closer.
    """
    forms = [np.asarray(W, dtype=float) for W in omega_path]
    if not forms:
        return []
    n = forms[0].shape[0]
    base = forms[0] if base_form is None else np.asarray(base_form, dtype=float)
    A = np.eye(n) if A0 is None else np.asarray(A0, dtype=float)
    for W in forms:
        if np.linalg.cond(W) > 1e12:
            raise Degenerate("form on the path is numerically degenerate")
    if np.linalg.norm(A.T @ base @ A - forms[0]) > 1e-9 * np.linalg.norm(forms[0]):
        raise ValueError("A0 does not carry the base form to the first sample")
    lifts = [A]
    for prev, nxt in zip(forms, forms[1:]):
        X = np.linalg.solve(prev, nxt)
        if np.linalg.norm(X - np.eye(n), 2) > step_cap:
            raise StepTooLarge("consecutive forms are too far apart; refine the path")
        R = np.real(sqrtm(X))
        A = A @ R
        lifts.append(A)
    return lifts


# ---------------------------------------------------------------------------
# Deformation to polarisable structures
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class DeformationPath:
    """Sampled deformation ``J_t`` of invariant complex structures.

    ``barycenters[i]`` is ``C_t = A_t J_t A_t^-1``, a point of the Siegel space
    of ``forms[0]``; ``step_distances[i]`` is the Siegel distance, in the
    space of ``forms[i+1]``, between ``J_{t_(i+1)}`` and the retraction of
    ``J_{t_i}`` (see :func:`structure_distance`).  ``omega1`` is the rational
    endpoint form and ``certificate`` the verified endpoint certificate with
    integral form.
    """

    times: list[float]
    forms: list[np.ndarray]
    lifts: list[np.ndarray]
    structures: list[np.ndarray]
    barycenters: list[SiegelPoint]
    step_distances: list[float]
    omega1: RationalMatrix
    certificate: KahlerCertificate
    compat_residuals: list[float] = field(default_factory=list)
    min_gram_eigenvalues: list[float] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.times) - 1

    @property
    def max_step_distance(self) -> float:
        return max(self.step_distances, default=0.0)

    @property
    def endpoint(self) -> ComplexStructure:
        return self.certificate.J

    def total_displacement(self) -> float:
        """Distance from ``J_0`` to ``J_1`` in the Siegel space of the endpoint form."""
        return structure_distance(self.structures[0], self.forms[0], self.structures[-1], self.forms[-1])

    def rows(self) -> list[tuple[float, float, float, float]]:
        dists = [0.0] + list(self.step_distances)
        return list(zip(self.times, dists, self.compat_residuals, self.min_gram_eigenvalues))


def _as_float_form(omega) -> np.ndarray:
    if isinstance(omega, BilinearForm):
        return omega.matrix.to_numpy()
    if isinstance(omega, RationalMatrix):
        return omega.to_numpy()
    return np.asarray(omega, dtype=float)


def _invariant_coordinates(basis: list[RationalMatrix], W: np.ndarray) -> np.ndarray:
    n = W.shape[0]
    idx = form_coordinates("alternating", n)
    M = np.array([[float(B[i, j]) for B in basis] for i, j in idx])
    rhs = np.array([W[i, j] for i, j in idx])
    c, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    fit = np.linalg.norm(M @ c - rhs)
    if fit > 1e-8 * max(1.0, np.linalg.norm(rhs)):
        raise ValueError("starting form is not invariant under the group")
    return c


def _segment_ok(W0: np.ndarray, W1: np.ndarray, times: Sequence[float]) -> bool:
    for t in times:
        Wt = (1 - t) * W0 + t * W1
        sv = np.linalg.svd(Wt, compute_uv=False)
        if sv[-1] <= 1e-10 * sv[0]:
            return False
    return True


def rational_targets(G: FiniteMatrixGroup, omega0: np.ndarray, probes: int = 64, start: int = 16):
    """Continued-fraction roundings of ``omega0`` in the invariant basis.

    Yields ``(denominator_bound, omega1)`` with the bound doubling from
    ``start``; consecutive duplicates are skipped.
    """
    basis = [F.matrix for F in invariant_form_space(G, "alternating")]
    if not basis:
        raise Degenerate("group has no invariant alternating forms")
    c = _invariant_coordinates(basis, omega0)
    last = None
    bound = start
    for _ in range(probes):
        q = [Fraction(float(x)).limit_denominator(bound) for x in c]
        if q != last:
            W1 = RationalMatrix.zeros(G.dimension)
            for qi, B in zip(q, basis):
                if qi:
                    W1 = W1 + B * qi
            yield bound, W1
            last = q
        bound *= 2


def _deform_along(
    G: FiniteMatrixGroup,
    J0: np.ndarray,
    W0: np.ndarray,
    W1q: RationalMatrix,
    steps: int,
    karcher_tol: float,
):
    times = [i / steps for i in range(steps + 1)]
    W1 = W1q.to_numpy()
    forms = [(1 - t) * W0 + t * W1 for t in times]
    lifts = lift_form_path(forms)
    p0 = SiegelPoint.from_structure(J0, W0)
    elements = [g.to_numpy() for g in G.elements]
    barycenters: list[SiegelPoint] = []
    structures = []
    prev = p0
    for A in lifts:
        Ai = np.linalg.inv(A)
        conj = [A @ g @ Ai for g in elements]
        C = orbit_barycenter(conj, p0, init=prev, tolerance=karcher_tol)
        barycenters.append(C)
        structures.append(Ai @ C.J @ A)
        prev = C
    dists = [
        structure_distance(Ja, Wa, Jb, Wb)
        for Ja, Wa, Jb, Wb in zip(structures, forms, structures[1:], forms[1:])
    ]
    compat, mins = [], []
    for Jt, Wt in zip(structures, forms):
        compat.append(float(np.linalg.norm(Jt.T @ Wt @ Jt - Wt) / np.linalg.norm(Wt)))
        gram = Jt.T @ Wt
        mins.append(float(np.linalg.eigvalsh(_sym(gram))[0] / np.linalg.norm(gram, 2)))
    return times, forms, lifts, structures, barycenters, dists, compat, mins


def _endpoint_certificate(
    G: FiniteMatrixGroup, J1: np.ndarray, W1q: RationalMatrix, tolerance: float
) -> KahlerCertificate:
    omega = BilinearForm(W1q.primitive(), "alternating", invariant_under=G)
    Jq = exact_structure(J1, omega.matrix, G)
    if Jq is not None:
        J = ComplexStructure.from_exact(Jq, tolerance=tolerance)
    else:
        J = ComplexStructure(J1, tolerance=tolerance)
    return certify(G, omega, J=J, S=invariant_positive_form(G), tolerance=tolerance)


def deform_to_polarisable(
    G: FiniteMatrixGroup,
    J0: ComplexStructure,
    omega0,
    steps: int = 32,
    tolerance: float = DEFAULT_TOL,
    karcher_tol: float = 1e-12,
) -> DeformationPath:
    """Deform an invariant ``J0`` with invariant Kähler form ``omega0`` to a polarisable one.

    ``omega0`` given as a :class:`BilinearForm` (rational) yields the trivial
    path.  A floating ``omega0`` is rounded in the invariant basis with
    denominator bound doubling from 16 until the straight segment to the
    rational ``omega1`` stays nondegenerate and liftable.  Along the segment
    ``A_t`` lifts the forms, ``C_t`` is the barycenter of the orbit
    ``A_t G A_t^-1 . J0`` and ``J_t = A_t^-1 C_t A_t``.
    """
    J0m = J0.matrix if isinstance(J0, ComplexStructure) else np.asarray(J0, dtype=float)
    if isinstance(omega0, (BilinearForm, RationalMatrix)):
        W = omega0.matrix if isinstance(omega0, BilinearForm) else omega0
        W0 = W.to_numpy()
        cert = _endpoint_certificate(G, J0m, W, tolerance)
        p0 = SiegelPoint.from_structure(J0m, W0)
        res = float(np.linalg.norm(J0m.T @ W0 @ J0m - W0) / np.linalg.norm(W0))
        gram = J0m.T @ W0
        lam = float(np.linalg.eigvalsh(_sym(gram))[0] / np.linalg.norm(gram, 2))
        return DeformationPath([0.0], [W0], [np.eye(G.dimension)], [J0m], [p0], [], W, cert, [res], [lam])

    if steps < 1:
        raise ValueError("a floating starting form needs at least one step")
    W0 = _as_float_form(omega0)
    times = [i / steps for i in range(steps + 1)]
    for _, W1q in rational_targets(G, W0):
        if not _segment_ok(W0, W1q.to_numpy(), times):
            continue
        try:
            out = _deform_along(G, J0m, W0, W1q, steps, karcher_tol)
        except StepTooLarge:
            continue
        times, forms, lifts, structures, bary, dists, compat, mins = out
        cert = _endpoint_certificate(G, structures[-1], W1q, tolerance)
        return DeformationPath(times, forms, lifts, structures, bary, dists, W1q, cert, compat, mins)
    raise DegenerateOnSegment("no rational target with a nondegenerate segment was found")


def perturbed_start(
    G: FiniteMatrixGroup, omega: BilinearForm, seed: int = 0, scale: float = 0.1
) -> tuple[np.ndarray, np.ndarray]:
    """An irrational invariant Kähler form near ``omega`` and its polar structure.

    Returns ``(J0, W0)`` with ``W0 = pi * omega + scale * sqrt(2) * |omega| * D``
    for a seeded random unit direction ``D`` in the invariant alternating space.
    """
    basis = [F.matrix.to_numpy() for F in invariant_form_space(G, "alternating")]
    rng = np.random.default_rng(seed)
    W = omega.matrix.to_numpy()
    S = invariant_positive_form(G).matrix.to_numpy()
    for _ in range(64):
        D = sum(c * B for c, B in zip(rng.standard_normal(len(basis)), basis))
        D = D / np.linalg.norm(D)
        W0 = np.pi * W + scale * np.sqrt(2) * np.linalg.norm(W) * D
        sv = np.linalg.svd(W0, compute_uv=False)
        if sv[-1] > 1e-6 * sv[0]:
            return polar_structure(S, W0), W0
    raise Degenerate("no nondegenerate perturbation found")


@dataclass
class PolarisableSample:
    """A polarisable invariant structure near a given one."""

    J: ComplexStructure
    omega: BilinearForm
    distance: float
    denominator_bound: int | None
    certificate: KahlerCertificate


def sample_polarisable_near(
    G: FiniteMatrixGroup,
    J0: ComplexStructure,
    omega0,
    radius: float,
    steps: int = 8,
    tolerance: float = DEFAULT_TOL,
    probes: int = 64,
) -> PolarisableSample:
    """Find a polarisable invariant ``J'`` within ``radius`` of ``J0``.

    Distance is measured in the Siegel space of the rational endpoint form
    between ``J'`` and the retraction of ``J0`` (see :func:`structure_distance`).
    Rational roundings of ``omega0`` are refined until one lands inside the
    radius.
    """
    if isinstance(omega0, (BilinearForm, RationalMatrix)):
        path = deform_to_polarisable(G, J0, omega0, steps=0, tolerance=tolerance)
        return PolarisableSample(path.endpoint, path.certificate.omega, 0.0, None, path.certificate)
    J0m = J0.matrix if isinstance(J0, ComplexStructure) else np.asarray(J0, dtype=float)
    W0 = _as_float_form(omega0)
    times = [i / steps for i in range(steps + 1)]
    for bound, W1q in rational_targets(G, W0, probes=probes):
        if not _segment_ok(W0, W1q.to_numpy(), times):
            continue
        try:
            out = _deform_along(G, J0m, W0, W1q, steps, 1e-12)
        except StepTooLarge:
            continue
        structures, forms = out[3], out[1]
        dist = structure_distance(J0m, W0, structures[-1], forms[-1])
        if dist <= radius:
            cert = _endpoint_certificate(G, out[3][-1], W1q, tolerance)
            return PolarisableSample(cert.J, cert.omega, dist, bound, cert)
    raise RadiusTooSmall(f"no polarisable structure found within radius {radius}")
