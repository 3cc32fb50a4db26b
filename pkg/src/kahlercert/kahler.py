"""Kähler/projective decision for finite integral matrix groups.

Given the characteristic representation as a :class:`FiniteMatrixGroup`, the
decision is whether some nondegenerate alternating form is invariant.  A
positive answer is backed by a certificate:

* ``omega``: a primitive integral invariant symplectic form,
* ``S``: the integral invariant inner product ``sum_g g.T g``,
* ``J``: the invariant complex structure obtained from ``(S, omega)`` by the
  polar construction, for which ``omega`` is a polarisation,
* ``conjugator``: ``B`` in GL(n, Q) with ``B.T @ omega @ B`` standard, so that
  ``B^-1 g B`` lies in the standard Sp(2k, Q) for every ``g``.

Matrix conventions: ``omega(x, y) = x.T @ Omega @ y``; ``J`` is compatible
when ``J.T @ Omega @ J == Omega`` and positive when the Gram matrix
``J.T @ Omega`` (the form ``omega(J., .)``) is positive definite.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .errors import Degenerate, NotCompatible, NotPositive
from .exactlin import (
    RationalMatrix,
    as_rational_matrix,
    det,
    inverse,
    ldlt_signature,
    standard_symplectic,
)
from .matgroup import (
    BilinearForm,
    FiniteMatrixGroup,
    invariant_form_space,
    invariant_positive_form,
)

DEFAULT_TOL = 1e-9
PROBE_HEIGHT = 2**16
PROBE_COUNT = 64
EXACT_VERDICT_LIMIT = 24  # dim(invariant space) * n at or below which the verdict is exact
GRAM_MARGIN = 1e3

Decision = Literal["kahler", "not_kahler"]


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class ComplexStructure:
    """A real matrix ``J`` with ``J @ J == -I``.

    The exact grade stores an integer-or-rational coefficient matrix ``K``
    with ``J = K / sqrt(surd)``; ``surd == 1`` means ``J`` itself is rational.
    ``matrix`` always holds the floating point value.
    """

    matrix: np.ndarray
    exact: RationalMatrix | None = None
    surd: int = 1
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float)
        n, m = self.matrix.shape
        if n != m:
            raise ValueError("complex structure must be square")
        if n % 2:
            raise ValueError("complex structures only exist in even dimension")

    @classmethod
    def from_exact(cls, K, surd: int = 1, tolerance: float = DEFAULT_TOL) -> "ComplexStructure":
        K = as_rational_matrix(K)
        return cls(K.to_numpy() / np.sqrt(surd), exact=K, surd=surd, tolerance=tolerance)

    @property
    def precision(self) -> str:
        return "exact" if self.exact is not None else "float"

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def square_residual(self) -> float:
        n = self.dimension
        return float(np.linalg.norm(self.matrix @ self.matrix + np.eye(n)))

    def exact_square_is_minus_identity(self) -> bool:
        if self.exact is None:
            return False
        K = self.exact
        return K @ K == RationalMatrix.identity(K.nrows) * (-self.surd)

    def __neg__(self) -> "ComplexStructure":
        return ComplexStructure(
            -self.matrix,
            exact=None if self.exact is None else -self.exact,
            surd=self.surd,
            tolerance=self.tolerance,
        )

    def __eq__(self, other):
        if not isinstance(other, ComplexStructure):
            return NotImplemented
        return (
            np.array_equal(self.matrix, other.matrix)
            and self.exact == other.exact
            and self.surd == other.surd
            and self.tolerance == other.tolerance
        )


@dataclass
class NotFound:
    """Why no invariant symplectic form was produced."""

    kind: Literal["odd_dimension", "zero_invariant_space", "generic_degeneracy"]
    detail: str
    invariant_dimension: int | None = None
    failure_probability_bound: float | None = None

    @property
    def exact(self) -> bool:
        return self.kind != "generic_degeneracy" or self.failure_probability_bound == 0.0


@dataclass
class Polarisation:
    """Numerical witness that an integral form polarises ``J``.

    Residuals are relative Frobenius norms; ``min_gram_eigenvalue`` is the
    smallest eigenvalue of the symmetrised Gram matrix divided by its
    spectral norm.
    """

    omega: BilinearForm
    compat_residual: float
    invariance_residual: float
    min_gram_eigenvalue: float

    @property
    def integral(self) -> bool:
        return self.omega.matrix.is_integral()

    @property
    def positive(self) -> bool:
        margin = GRAM_MARGIN * max(self.compat_residual, self.invariance_residual)
        return self.min_gram_eigenvalue > margin and self.min_gram_eigenvalue > 0


@dataclass
class CheckResult:
    check: str
    residual: float
    passed: bool


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, residual: float, passed: bool) -> None:
        self.checks.append(CheckResult(check, float(residual), bool(passed)))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.check == name:
                return c
        raise KeyError(name)

    def table(self) -> str:
        width = max((len(c.check) for c in self.checks), default=5)
        lines = [f"{'check':<{width}}  {'residual':>12}  result"]
        for c in self.checks:
            lines.append(f"{c.check:<{width}}  {c.residual:>12.3e}  {'pass' if c.passed else 'FAIL'}")
        return "\n".join(lines)


@dataclass(eq=False)
class KahlerCertificate:
    decision: Decision
    dimension: int
    omega: BilinearForm | None = None
    S: BilinearForm | None = None
    J: ComplexStructure | None = None
    conjugator: RationalMatrix | None = None
    signature: tuple[int, int] | None = None
    nonexistence_witness: NotFound | None = None
    verification: VerificationReport | None = None
    seed: int = 0

    def __post_init__(self):
        if self.decision == "kahler":
            if self.omega is None or self.S is None or self.J is None:
                raise ValueError("a kahler certificate needs omega, S and J")
        elif self.decision == "not_kahler":
            if self.nonexistence_witness is None:
                raise ValueError("a not_kahler certificate needs a witness")
        else:
            raise ValueError(f"unknown decision {self.decision!r}")

    @property
    def is_kahler(self) -> bool:
        return self.decision == "kahler"

    def __eq__(self, other):
        if not isinstance(other, KahlerCertificate):
            return NotImplemented
        return (
            self.decision == other.decision
            and self.dimension == other.dimension
            and self.omega == other.omega
            and self.S == other.S
            and self.J == other.J
            and self.conjugator == other.conjugator
            and self.signature == other.signature
            and self.nonexistence_witness == other.nonexistence_witness
            and self.verification == other.verification
            and self.seed == other.seed
        )


# ---------------------------------------------------------------------------
# Invariant symplectic forms
# ---------------------------------------------------------------------------

def _compositions(total: int, parts: int):
    """Nonnegative integer vectors of length ``parts`` summing to ``total``."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars + (total + parts - 1,):
            out.append(b - prev - 1)
            prev = b
        yield out


def _combine(basis: list[RationalMatrix], coeffs) -> RationalMatrix:
    total = RationalMatrix.zeros(basis[0].nrows)
    for c, B in zip(coeffs, basis):
        if c:
            total = total + B * c
    return total


def find_invariant_symplectic(G: FiniteMatrixGroup, rng_seed: int = 0) -> BilinearForm | NotFound:
    """Search the invariant alternating forms for a nondegenerate one.

    Returns a primitive integral form on success.  The search first tries
    combinations with small nonnegative coefficients of total degree 1..n.
    ``det`` restricted to the invariant space is a homogeneous polynomial of
    degree n, so when ``dim * n`` is small enough to enumerate every
    coefficient vector of total degree n it vanishes identically iff it
    vanishes on all of them and the verdict is exact.  Otherwise up to 64
    random probes with coefficients in [-2**16, 2**16] follow.
    """
    n = G.dimension
    if n % 2:
        return NotFound("odd_dimension", f"dimension {n} is odd; every alternating form is degenerate",
                        invariant_dimension=None, failure_probability_bound=0.0)
    space = [F.matrix for F in invariant_form_space(G, "alternating")]
    d = len(space)
    if d == 0:
        return NotFound("zero_invariant_space", "the space of invariant alternating forms is zero",
                        invariant_dimension=0, failure_probability_bound=0.0)

    def accept(F: RationalMatrix) -> BilinearForm:
        return BilinearForm(F.primitive(), "alternating", invariant_under=G)

    exhaustive = d * n <= EXACT_VERDICT_LIMIT
    max_degree = n if exhaustive else 1
    for t in range(1, max_degree + 1):
        for c in _compositions(t, d):
            F = _combine(space, c)
            if det(F) != 0:
                return accept(F)
    if exhaustive:
        return NotFound(
            "generic_degeneracy",
            f"det vanishes identically on the {d}-dimensional invariant space "
            f"(checked on all coefficient vectors of total degree {n})",
            invariant_dimension=d,
            failure_probability_bound=0.0,
        )

    rng = random.Random(rng_seed)
    for _ in range(PROBE_COUNT):
        c = [rng.randint(-PROBE_HEIGHT, PROBE_HEIGHT) for _ in range(d)]
        F = _combine(space, c)
        if det(F) != 0:
            return accept(F)
    bound = (n / (2 * PROBE_HEIGHT + 1)) ** PROBE_COUNT
    return NotFound(
        "generic_degeneracy",
        f"det vanished on {PROBE_COUNT} random probes of height {PROBE_HEIGHT} "
        f"in the {d}-dimensional invariant space",
        invariant_dimension=d,
        failure_probability_bound=bound,
    )


# ---------------------------------------------------------------------------
# Complex structures
# ---------------------------------------------------------------------------

def _sym_power(P: np.ndarray, p: float) -> np.ndarray:
    w, V = np.linalg.eigh((P + P.T) / 2)
    return (V * w**p) @ V.T


def polar_structure(S: np.ndarray, W: np.ndarray) -> np.ndarray:
    """``A (-A^2)^(-1/2)`` with ``A = S^-1 W`` for SPD ``S`` and alternating ``W``.

    Computed in the S-orthonormal frame where ``A`` becomes antisymmetric and
    ``-A^2`` symmetric positive definite.
    """
    S = (S + S.T) / 2
    w, V = np.linalg.eigh(S)
    if w[0] <= 0:
        raise NotPositive("S is not positive definite")
    s_half = (V * np.sqrt(w)) @ V.T
    s_ihalf = (V * (1 / np.sqrt(w))) @ V.T
    At = s_ihalf @ W @ s_ihalf
    At = (At - At.T) / 2
    M = At.T @ At
    mw, MV = np.linalg.eigh((M + M.T) / 2)
    if mw[0] <= 1e-14 * max(mw[-1], 1e-300):
        raise Degenerate("alternating form is numerically degenerate")
    Jt = At @ ((MV * (1 / np.sqrt(mw))) @ MV.T)
    return s_ihalf @ Jt @ s_half


def _rationalize(J: np.ndarray, max_den: int = 2**20) -> RationalMatrix:
    return RationalMatrix([[Fraction(float(x)).limit_denominator(max_den) for x in r] for r in J])


def _exact_polar(J: np.ndarray, S: RationalMatrix, Om: RationalMatrix) -> RationalMatrix | None:
    """Rational reconstruction of the polar structure, certified exactly.

    The polar ``J`` of ``A = S^-1 Om`` is the unique ``J`` with ``J^2 = -I``,
    ``J A = A J`` and ``S A^-1 J`` symmetric positive definite, so a rational
    candidate passing those identities *is* the polar structure.
    """
    Jq = _rationalize(J)
    n = Jq.nrows
    if Jq @ Jq != -RationalMatrix.identity(n):
        return None
    A = inverse(S) @ Om
    if A @ Jq != Jq @ A:
        return None
    K = S @ inverse(A) @ Jq
    if not K.is_symmetric() or ldlt_signature(K)[0] != n:
        return None
    return Jq


def exact_structure(J: np.ndarray, Om: RationalMatrix, G: FiniteMatrixGroup | None = None) -> RationalMatrix | None:
    """Rational reconstruction of an invariant compatible positive ``J``.

    Returns the rational candidate only if ``J^2 = -I``, ``J.T Om J = Om``,
    the Gram matrix is positive definite and (when ``G`` is given) ``J``
    commutes with every generator, all exactly.
    """
    Jq = _rationalize(J)
    n = Jq.nrows
    if Jq @ Jq != -RationalMatrix.identity(n) or Jq.T @ Om @ Jq != Om:
        return None
    gram = Jq.T @ Om
    if not gram.is_symmetric() or ldlt_signature(gram)[0] != n:
        return None
    if G is not None and any(g @ Jq != Jq @ g for g in G.generators):
        return None
    return Jq


def compatible_complex_structure(S, omega, tolerance: float = DEFAULT_TOL) -> ComplexStructure:
    """Complex structure of the polar decomposition of ``S^-1 Omega``.

    ``J`` commutes with every matrix preserving both ``S`` and ``Omega``,
    satisfies ``J.T Omega J = Omega`` and has positive Gram matrix
    ``J.T Omega``.  Scaling ``S`` or ``Omega`` by a positive constant does not
    change ``J``.  An exact rational ``J`` is returned when reconstruction
    succeeds; otherwise the float grade.
    """
    S = S.matrix if isinstance(S, BilinearForm) else as_rational_matrix(S)
    Om = omega.matrix if isinstance(omega, BilinearForm) else as_rational_matrix(omega)
    if not S.is_symmetric() or ldlt_signature(S)[0] != S.nrows:
        raise NotPositive("S is not symmetric positive definite")
    if not Om.is_alternating():
        raise ValueError("omega is not alternating")
    if det(Om) == 0:
        raise Degenerate("omega is degenerate")
    J = polar_structure(S.to_numpy(), Om.to_numpy())
    Jq = _exact_polar(J, S, Om)
    if Jq is not None:
        return ComplexStructure.from_exact(Jq, tolerance=tolerance)
    return ComplexStructure(J, tolerance=tolerance)


def find_invariant_complex_structure(
    G: FiniteMatrixGroup, rng_seed: int = 0, tolerance: float = DEFAULT_TOL, probes: int = PROBE_COUNT
) -> ComplexStructure | None:
    """Floating point search for an invariant complex structure.

    Independent of the exact form search: random matrices are averaged by
    conjugation into the commutant, made skew for the invariant metric ``S``
    and passed through the polar construction.  Returns ``None`` if every
    probe is numerically singular.
    """
    n = G.dimension
    if n % 2:
        return None
    rng = np.random.default_rng(rng_seed)
    S = invariant_positive_form(G).matrix.to_numpy()
    S_inv = np.linalg.inv(S)
    els = [g.to_numpy() for g in G.elements]
    inv_els = [inverse(g).to_numpy() for g in G.elements]
    for _ in range(probes):
        Y = rng.standard_normal((n, n))
        X = sum(g @ Y @ gi for g, gi in zip(els, inv_els)) / len(els)
        Xs = X - S_inv @ X.T @ S
        W = S @ Xs
        W = (W - W.T) / 2
        sv = np.linalg.svd(W, compute_uv=False)
        if sv[-1] <= 1e-8 * sv[0]:
            continue
        J = polar_structure(S, W)
        resid = max(np.linalg.norm(g @ J - J @ g) for g in els) / np.linalg.norm(J)
        if resid <= tolerance * n and np.linalg.norm(J @ J + np.eye(n)) <= tolerance * n:
            return ComplexStructure(J, tolerance=tolerance)
    return None


# ---------------------------------------------------------------------------
# Symplectic normal form
# ---------------------------------------------------------------------------

def symplectic_basis(omega) -> RationalMatrix:
    """``B`` in GL(n, Q) with ``B.T @ Omega @ B == [[0, I], [-I, 0]]``.

    Symplectic Gram-Schmidt over Q.  Columns of ``B`` are e_1..e_k, f_1..f_k
    with ``omega(e_i, f_j) = delta_ij``.
    """
    Om = omega.matrix if isinstance(omega, BilinearForm) else as_rational_matrix(omega)
    if not Om.is_alternating():
        raise ValueError("omega is not alternating")
    n = Om.nrows
    if n % 2 or det(Om) == 0:
        raise Degenerate("omega is degenerate")

    def w(x, y):
        return sum(x[i] * sum(Om[i, j] * y[j] for j in range(n) if Om[i, j]) for i in range(n) if x[i])

    remaining = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    es, fs = [], []
    while remaining:
        e = remaining.pop(0)
        k = next((i for i, v in enumerate(remaining) if w(e, v) != 0), None)
        if k is None:
            # e is orthogonal to everything left: impossible for nondegenerate omega
            raise Degenerate("omega is degenerate")
        v = remaining.pop(k)
        scale = w(e, v)
        f = [x / scale for x in v]
        projected = []
        for u in remaining:
            a, b = w(u, f), w(u, e)
            projected.append([ui - a * ei + b * fi for ui, ei, fi in zip(u, e, f)])
        remaining = [u for u in projected if any(u)]
        es.append(e)
        fs.append(f)
    return RationalMatrix.from_columns(es + fs)


# ---------------------------------------------------------------------------
# Signatures and verification
# ---------------------------------------------------------------------------

def _omega_matrix(omega) -> RationalMatrix:
    return omega.matrix if isinstance(omega, BilinearForm) else as_rational_matrix(omega)


def signature_of(omega, J: ComplexStructure, tolerance: float | None = None) -> tuple[int, int]:
    """Inertia ``(pos, neg)`` of the Gram matrix ``J.T @ Omega``."""
    Om = _omega_matrix(omega)
    n = Om.nrows
    tol = J.tolerance if tolerance is None else tolerance
    if J.exact is not None:
        gram = J.exact.T @ Om
        if not gram.is_symmetric():
            raise NotCompatible("Gram matrix is not symmetric")
        pos, neg, zero = ldlt_signature(gram)
        if zero:
            raise NotCompatible("Gram matrix is degenerate")
        return pos, neg
    gram = J.matrix.T @ Om.to_numpy()
    scale = np.linalg.norm(gram)
    if np.linalg.norm(gram - gram.T) > max(tol * n, 1e-12) * scale:
        raise NotCompatible("Gram matrix is not symmetric within tolerance")
    ev = np.linalg.eigvalsh((gram + gram.T) / 2)
    if np.min(np.abs(ev)) <= 1e-12 * np.max(np.abs(ev)):
        raise NotCompatible("Gram matrix is numerically degenerate")
    return int(np.sum(ev > 0)), int(np.sum(ev < 0))


def _max_abs(m: RationalMatrix) -> float:
    return float(max((abs(x) for r in m.rows for x in r), default=0))


def numeric_residuals(G: FiniteMatrixGroup, Om: np.ndarray, J: np.ndarray) -> dict[str, float]:
    """Relative floating point residuals of a (J, Omega) pair."""
    n = J.shape[0]
    jn = np.linalg.norm(J)
    inv_res = 0.0
    for g in G.generators:
        gf = g.to_numpy()
        inv_res = max(inv_res, float(np.linalg.norm(gf @ J - J @ gf) / (np.linalg.norm(gf) * jn)))
    gram = J.T @ Om
    gnorm = np.linalg.norm(gram, 2)
    sym = (gram + gram.T) / 2
    return {
        "square": float(np.linalg.norm(J @ J + np.eye(n))),
        "invariant": inv_res,
        "compatible": float(np.linalg.norm(J.T @ Om @ J - Om) / np.linalg.norm(Om)),
        "gram_symmetric": float(np.linalg.norm(gram - gram.T) / np.linalg.norm(gram)),
        "min_gram_eigenvalue": float(np.linalg.eigvalsh(sym)[0] / gnorm),
    }


def make_polarisation(G: FiniteMatrixGroup, omega: BilinearForm, J: ComplexStructure) -> Polarisation:
    res = numeric_residuals(G, omega.matrix.to_numpy(), J.matrix)
    return Polarisation(
        omega=omega,
        compat_residual=max(res["compatible"], res["gram_symmetric"]),
        invariance_residual=res["invariant"],
        min_gram_eigenvalue=res["min_gram_eigenvalue"],
    )


def verify_certificate(
    G: FiniteMatrixGroup, cert: KahlerCertificate, tolerance: float = DEFAULT_TOL
) -> VerificationReport:
    """Independently re-check every claim of a certificate.

    Exact claims are re-derived in rational arithmetic (residual 0 on
    success).  Floating point claims pass when the residual is at most
    ``tolerance * n``; Gram positivity needs a margin of 1000 times the
    largest invariance/compatibility residual.
    """
    rep = VerificationReport()
    n = G.dimension
    rep.add("dimension", abs(cert.dimension - n), cert.dimension == n)
    if cert.dimension != n:
        return rep

    if cert.decision == "not_kahler":
        _verify_witness(G, cert, rep)
        return rep

    Om = cert.omega.matrix
    rep.add("omega.alternating", 0.0 if Om.is_alternating() else _max_abs(Om + Om.T), Om.is_alternating())
    rep.add("omega.integral", 0.0 if Om.is_integral() else 1.0, Om.is_integral())
    d = det(Om)
    rep.add("omega.nondegenerate", 0.0 if d != 0 else 1.0, d != 0)
    res = max((_max_abs(g.T @ Om @ g - Om) for g in G.generators), default=0.0)
    rep.add("omega.invariant", res, res == 0)

    S = cert.S.matrix
    rep.add("S.symmetric", 0.0 if S.is_symmetric() else _max_abs(S - S.T), S.is_symmetric())
    res = max((_max_abs(g.T @ S @ g - S) for g in G.generators), default=0.0)
    rep.add("S.invariant", res, res == 0)
    if S.is_symmetric():
        pos = ldlt_signature(S)[0]
        rep.add("S.positive", n - pos, pos == n)
    else:
        rep.add("S.positive", float(n), False)

    if cert.conjugator is not None:
        B = cert.conjugator
        std = standard_symplectic(n)
        ok_shape = B.shape == (n, n) and det(B) != 0
        if ok_shape and Om.is_alternating():
            res = _max_abs(B.T @ Om @ B - std)
            rep.add("conjugator.normal_form", res, res == 0)
            Bi = inverse(B)
            res = max(_max_abs((Bi @ g @ B).T @ std @ (Bi @ g @ B) - std) for g in G.generators)
            rep.add("conjugator.symplectic_generators", res, res == 0)
        else:
            rep.add("conjugator.normal_form", 1.0, False)

    J = cert.J
    if J.exact is not None:
        K, s = J.exact, J.surd
        ok = K @ K == RationalMatrix.identity(n) * (-s)
        rep.add("J.square", 0.0 if ok else _max_abs(K @ K + RationalMatrix.identity(n) * s), ok)
        res = max((_max_abs(g @ K - K @ g) for g in G.generators), default=0.0)
        rep.add("J.invariant", res, res == 0)
        res = _max_abs(K.T @ Om @ K - Om * s)
        rep.add("J.compatible", res, res == 0)
        gram = K.T @ Om
        sym = gram.is_symmetric()
        pos = ldlt_signature(gram)[0] if sym else 0
        rep.add("J.gram_positive", n - pos, sym and pos == n)
    else:
        r = numeric_residuals(G, Om.to_numpy(), J.matrix)
        bound = tolerance * n
        rep.add("J.square", r["square"], r["square"] <= bound)
        rep.add("J.invariant", r["invariant"], r["invariant"] <= bound)
        rep.add("J.compatible", r["compatible"], r["compatible"] <= bound)
        rep.add("J.gram_symmetric", r["gram_symmetric"], r["gram_symmetric"] <= bound)
        margin = GRAM_MARGIN * max(r["invariant"], r["compatible"], r["gram_symmetric"])
        lam = r["min_gram_eigenvalue"]
        rep.add("J.gram_positive", lam, lam > margin and lam > 0)

    try:
        sig = signature_of(cert.omega, J, tolerance=max(tolerance, 1e-12))
        ok = cert.signature is not None and tuple(cert.signature) == sig
    except NotCompatible:
        ok = False
    rep.add("signature", 0.0 if ok else 1.0, ok)
    return rep


def _verify_witness(G: FiniteMatrixGroup, cert: KahlerCertificate, rep: VerificationReport) -> None:
    w = cert.nonexistence_witness
    n = G.dimension
    if w.kind == "odd_dimension":
        rep.add("witness.odd_dimension", 0.0 if n % 2 else 1.0, n % 2 == 1)
    elif w.kind == "zero_invariant_space":
        d = len(invariant_form_space(G, "alternating"))
        rep.add("witness.zero_invariant_space", float(d), d == 0)
    else:
        again = find_invariant_symplectic(G, cert.seed)
        ok = isinstance(again, NotFound) and again.kind == "generic_degeneracy"
        rep.add("witness.generic_degeneracy", 0.0 if ok else 1.0, ok)


# ---------------------------------------------------------------------------
# Decision
# ---------------------------------------------------------------------------

def certify(
    G: FiniteMatrixGroup,
    omega: BilinearForm,
    J: ComplexStructure | None = None,
    S: BilinearForm | None = None,
    rng_seed: int = 0,
    tolerance: float = DEFAULT_TOL,
) -> KahlerCertificate:
    """Assemble and verify the certificate for a known invariant integral form."""
    if S is None:
        S = invariant_positive_form(G)
    if J is None:
        J = compatible_complex_structure(S, omega, tolerance)
    pol = make_polarisation(G, omega, J)
    if not (pol.integral and pol.positive):
        raise NotCompatible(
            f"polarisation check failed (gram min {pol.min_gram_eigenvalue:.3e}, "
            f"compat {pol.compat_residual:.3e}, invariance {pol.invariance_residual:.3e})"
        )
    cert = KahlerCertificate(
        decision="kahler",
        dimension=G.dimension,
        omega=omega,
        S=S,
        J=J,
        conjugator=symplectic_basis(omega),
        signature=signature_of(omega, J),
        seed=rng_seed,
    )
    cert.verification = verify_certificate(G, cert, tolerance)
    return cert


def decide_kahler(G: FiniteMatrixGroup, rng_seed: int = 0, tolerance: float = DEFAULT_TOL) -> KahlerCertificate:
    """Decide whether ``G`` preserves a complex structure and certify the answer.

    By the equivalence of invariant complex structures, invariant symplectic
    forms and polarisable invariant complex structures for finite groups, one
    search decides all three.
    """
    found = find_invariant_symplectic(G, rng_seed)
    if isinstance(found, NotFound):
        cert = KahlerCertificate(
            decision="not_kahler", dimension=G.dimension, nonexistence_witness=found, seed=rng_seed
        )
        cert.verification = verify_certificate(G, cert, tolerance)
        return cert
    return certify(G, found, rng_seed=rng_seed, tolerance=tolerance)


__all__ = [
    "ComplexStructure",
    "NotFound",
    "Polarisation",
    "CheckResult",
    "VerificationReport",
    "KahlerCertificate",
    "find_invariant_symplectic",
    "compatible_complex_structure",
    "find_invariant_complex_structure",
    "polar_structure",
    "symplectic_basis",
    "exact_structure",
    "signature_of",
    "verify_certificate",
    "make_polarisation",
    "certify",
    "decide_kahler",
]
