"""Invariant complex structures from complex multiplication, cyclic case.

The cyclic group of order m acts on Z^phi(m) through the companion matrix C
of the m-th cyclotomic polynomial, making Q^phi(m) a one-dimensional vector
space over F = Q(zeta_m).  With ``a = zeta - zeta^-1`` (purely imaginary,
``b = a^2`` totally negative) the structure acting as ``a / |a|`` in every
embedding of the CM type is

    J_F = X (-X^2)^(-1/2),   X = C - C^-1,

a real polynomial in C.  The default CM type takes the embeddings
``zeta -> exp(2 pi i k / m)`` with positive imaginary part (0 < k < m/2).
For m in {3, 4, 6} the matrix ``-X^2`` is the scalar ``d I`` and
``J_F = X / sqrt(d)`` is stored exactly as a coefficient matrix and surd.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from .errors import NotCompatible, OddPhi
from .exactlin import RationalMatrix, inverse
from .kahler import ComplexStructure, KahlerCertificate, signature_of
from .matgroup import FiniteMatrixGroup, close_group


def cyclotomic_coefficients(m: int) -> list[int]:
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    from sympy import Poly, cyclotomic_poly, symbols

    x = symbols("x")
    return [int(c) for c in reversed(Poly(cyclotomic_poly(m, x), x).all_coeffs())]


def companion_matrix(coeffs: list[int]) -> RationalMatrix:
    """Companion matrix with ones on the subdiagonal and last column ``-coeffs``."""
    d = len(coeffs) - 1
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -coeffs[i]
    return RationalMatrix(rows)


@dataclass(frozen=True, eq=False)
class CyclotomicAction:
    order: int
    generator: RationalMatrix
    cm_type: tuple[int, ...]

    @classmethod
    def of_order(cls, m: int) -> "CyclotomicAction":
        if m < 3:
            raise ValueError(f"order {m} has phi(m) odd; no complex structure exists")
        C = companion_matrix(cyclotomic_coefficients(m))
        if C.nrows % 2:
            raise OddPhi(f"phi({m}) = {C.nrows} is odd")
        cm_type = tuple(k for k in range(1, m) if gcd(k, m) == 1 and 2 * k < m)
        return cls(m, C, cm_type)

    @property
    def dimension(self) -> int:
        return self.generator.nrows

    def group(self) -> FiniteMatrixGroup:
        return close_group([self.generator], max_order=self.order, name=f"C{self.order} cyclotomic")


def _newton_complex_structure(X: np.ndarray, iters: int = 60) -> np.ndarray:
    """Fixed point of ``Y -> (Y - Y^-1) / 2`` from ``X``.

    On an eigenvalue ``i y`` the map converges to ``i sign(y)``, so the limit
    is the polar part ``X (-X^2)^(-1/2)`` when X has imaginary spectrum.
    """
    Y = X.copy()
    for _ in range(iters):
        Yn = (Y - np.linalg.inv(Y)) / 2
        done = np.linalg.norm(Yn - Y) <= 1e-15 * np.linalg.norm(Y)
        Y = Yn
        if done:
            break
    return Y


def cm_complex_structure(action: CyclotomicAction) -> ComplexStructure:
    """The CM-type structure ``J_F`` as a polynomial in the generator."""
    C = action.generator
    n = action.dimension
    if n % 2:
        raise OddPhi(f"phi({action.order}) = {n} is odd")
    X = C - inverse(C)
    minus_sq = -(X @ X)
    d = minus_sq[0, 0]
    if minus_sq == RationalMatrix.identity(n) * d and d.denominator == 1:
        d = d.numerator
        r = isqrt(d)
        if r * r == d:
            return ComplexStructure.from_exact(X / r)
        return ComplexStructure.from_exact(X, surd=d)
    return ComplexStructure(_newton_complex_structure(X.to_numpy()))


@dataclass
class CrossCheckReport:
    order: int
    cm_decision: str
    decider_decision: str
    orientation: int
    cm_signature: tuple[int, int] | None
    decider_signature: tuple[int, int] | None
    distance: float | None
    detail: str = ""

    @property
    def decisions_agree(self) -> bool:
        return self.cm_decision == self.decider_decision

    @property
    def signatures_agree(self) -> bool:
        return self.cm_signature is not None and self.cm_signature == self.decider_signature

    @property
    def ok(self) -> bool:
        return self.decisions_agree and self.signatures_agree


def cross_check_with_decider(action: CyclotomicAction, cert: KahlerCertificate) -> CrossCheckReport:
    """Compare the CM structure with the decider's certificate.

    Both structures are measured against the decider's invariant form
    ``omega`` up to orientation: the decider may return ``-omega`` equally
    well, and flipping it flips its structure, so the orientation is chosen
    to make ``J_F`` positive when possible.  The decider's structure for
    ``epsilon * omega`` is ``epsilon * J``.  Equal signatures mean the two
    structures are conjugate in Sp(omega); the Siegel distance between them
    is then reported.
    """
    from .siegel import SiegelPoint, siegel_distance

    J_cm = cm_complex_structure(action)
    if not cert.is_kahler:
        return CrossCheckReport(action.order, "kahler", cert.decision, 1, None, None, None,
                                "decider found no invariant symplectic form")
    try:
        sig = signature_of(cert.omega, J_cm)
    except NotCompatible as exc:
        return CrossCheckReport(action.order, "kahler", cert.decision, 1, None, cert.signature, None, str(exc))
    eps = -1 if sig[0] == 0 else 1
    n = action.dimension
    cm_sig = sig if eps == 1 else (sig[1], sig[0])
    dec_sig = cert.signature
    W = eps * cert.omega.matrix.to_numpy()
    distance = None
    if cm_sig == dec_sig == (n, 0):
        p = SiegelPoint.from_structure(J_cm.matrix, W)
        q = SiegelPoint.from_structure(eps * cert.J.matrix, W)
        distance = siegel_distance(p, q)
    return CrossCheckReport(action.order, "kahler", cert.decision, eps, cm_sig, dec_sig, distance)
