"""Acceptance gate: one test per exit criterion, each logging a pass/fail line."""

import time

import numpy as np
import pytest
from scipy.linalg import expm, sqrtm

from kahlercert.cm_cyclic import CyclotomicAction, cm_complex_structure, cross_check_with_decider
from kahlercert.corpus import (
    R3,
    R4,
    R6,
    SWAP,
    I2,
    corpus_group,
    corpus_names,
    expected_kahler,
    hyperoctahedral_generators,
    signed_permutation,
)
from kahlercert.errors import NotCompatible
from kahlercert.exactlin import RationalMatrix, block_diag, inverse, standard_symplectic
from kahlercert.kahler import (
    NotFound,
    certify,
    decide_kahler,
    find_invariant_complex_structure,
    find_invariant_symplectic,
    verify_certificate,
)
from kahlercert.matgroup import close_group
from kahlercert.siegel import (
    SiegelPoint,
    deform_to_polarisable,
    karcher_barycenter,
    orbit_barycenter,
    perturbed_start,
    sample_polarisable_near,
    siegel_distance,
    sp_action,
)

pytestmark = pytest.mark.acceptance

KAHLER = [n for n in corpus_names() if expected_kahler(n)]


def test_rank_two_classification(record):
    t0 = time.perf_counter()
    cases = [
        ([I2], "kahler"),
        ([-I2], "kahler"),
        ([R3], "kahler"),
        ([R4], "kahler"),
        ([R6], "kahler"),
        ([SWAP], "not_kahler"),
        ([R3, SWAP], "not_kahler"),
    ]
    got = []
    for gens, want in cases:
        G = close_group(gens)
        a, b = decide_kahler(G, rng_seed=0), decide_kahler(G, rng_seed=0)
        other = decide_kahler(G, rng_seed=99)
        got.append(a.decision == want == other.decision and a == b and a.verification.ok)
    elapsed = time.perf_counter() - t0
    ok = all(got) and elapsed < 1.0
    record(1, ok, f"rank-2 cyclic/reflection/S3 decisions {sum(got)}/{len(got)} correct in {elapsed:.3f}s")
    assert ok


def _odd_groups():
    yield close_group([RationalMatrix.identity(1)])
    yield close_group([RationalMatrix.identity(3)])
    yield close_group([-RationalMatrix.identity(5)])
    yield close_group(hyperoctahedral_generators(3))
    yield close_group([signed_permutation([1, 2, 0], [1, 1, 1])])
    yield close_group([block_diag(R4, RationalMatrix.identity(1))])
    rng = np.random.default_rng(0)
    for n in (1, 3, 5, 7):
        for _ in range(3):
            p = [int(x) for x in rng.permutation(n)]
            s = [int(x) for x in rng.choice([-1, 1], size=n)]
            yield close_group([signed_permutation(p, s)])
    for name in corpus_names():
        G = corpus_group(name)
        if G.dimension % 2:
            yield G


def test_parity(record):
    results = []
    for G in _odd_groups():
        cert = decide_kahler(G)
        w = cert.nonexistence_witness
        results.append(
            cert.decision == "not_kahler" and w.kind == "odd_dimension" and w.exact and cert.verification.ok
        )
    ok = all(results)
    record(2, ok, f"{sum(results)}/{len(results)} odd-dimensional inputs give the odd-dimension witness")
    assert ok


def test_doubling(record):
    t0 = time.perf_counter()
    G = close_group([block_diag(R3, R3), block_diag(SWAP, SWAP)])
    cert = decide_kahler(G)
    rep = verify_certificate(G, cert)
    n = G.dimension
    numeric = [c for c in rep.checks if c.check in ("J.square", "J.invariant", "J.compatible", "J.gram_symmetric")]
    exact_ok = cert.omega.matrix.is_integral() and rep["omega.invariant"].residual == 0 and rep["S.invariant"].residual == 0
    elapsed = time.perf_counter() - t0
    ok = (
        cert.decision == "kahler"
        and rep.ok
        and exact_ok
        and all(c.residual <= 1e-9 * n for c in numeric)
        and elapsed < 1.0
    )
    worst = max((c.residual for c in numeric), default=0.0)
    record(3, ok, f"doubled S3 kahler, J {cert.J.precision}, worst numeric residual {worst:.1e}, {elapsed:.3f}s")
    assert ok


def test_predicate_equivalence(record):
    names = corpus_names()
    disagreements = []
    for name in names:
        G = corpus_group(name)
        form = find_invariant_symplectic(G)
        has_form = not isinstance(form, NotFound)
        has_structure = find_invariant_complex_structure(G) is not None
        polarised = False
        if has_form:
            try:
                cert = certify(G, form)
                polarised = cert.verification.ok and cert.omega.matrix.is_integral()
            except NotCompatible:
                polarised = False
        if not (has_form == has_structure == polarised):
            disagreements.append(name)
    ok = len(names) >= 20 and not disagreements
    record(4, ok, f"{len(names)} corpus groups, predicate disagreements: {disagreements or 'none'}")
    assert ok


def test_conjugator_soundness(record):
    bad = []
    for name in KAHLER:
        G = corpus_group(name)
        cert = decide_kahler(G)
        B = cert.conjugator
        std = standard_symplectic(G.dimension)
        Bi = inverse(B)
        if B.T @ cert.omega.matrix @ B != std:
            bad.append(name)
            continue
        if any((Bi @ g @ B).T @ std @ (Bi @ g @ B) != std for g in G.generators):
            bad.append(name)
    ok = not bad
    record(5, ok, f"{len(KAHLER)} kahler groups, exact normal-form failures: {bad or 'none'}")
    assert ok


def _random_symplectic(n, rng):
    H = rng.standard_normal((n, n)) * 0.4
    return expm(np.linalg.solve(standard_symplectic(n).to_numpy(), (H + H.T) / 2))


def _random_point(n, rng):
    return sp_action(_random_symplectic(n, rng), SiegelPoint(np.eye(n), standard_symplectic(n).to_numpy()))


def test_barycenter_properties(record):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    mean_err = orbit_err = equi_err = 0.0
    for n, group in ((2, "rank2_C6"), (4, "S3_doubled")):
        for _ in range(5):
            p, q = _random_point(n, rng), _random_point(n, rng)
            h = np.real(sqrtm(p.gram))
            ih = np.linalg.inv(h)
            oracle = h @ np.real(sqrtm(ih @ q.gram @ ih)) @ h
            mean_err = max(mean_err, np.linalg.norm(karcher_barycenter([p, q]).gram - oracle))

        G = corpus_group(group)
        B = decide_kahler(G).conjugator
        Bi = inverse(B)
        mats = [(Bi @ g @ B).to_numpy() for g in G.elements]
        C = orbit_barycenter(mats, _random_point(n, rng))
        orbit_err = max(orbit_err, max(siegel_distance(sp_action(g, C, tol=1e-7), C) for g in mats))

        pts = [_random_point(n, rng) for _ in range(4)]
        A = _random_symplectic(n, rng)
        lhs = karcher_barycenter([sp_action(A, x) for x in pts])
        rhs = sp_action(A, karcher_barycenter(pts))
        equi_err = max(equi_err, siegel_distance(lhs, rhs))
    elapsed = time.perf_counter() - t0
    ok = mean_err <= 1e-8 and orbit_err <= 1e-8 and equi_err <= 1e-8 and elapsed < 10
    record(
        6,
        ok,
        f"two-point {mean_err:.1e}, orbit displacement {orbit_err:.1e}, equivariance {equi_err:.1e}, {elapsed:.2f}s",
    )
    assert ok


# stationary paths have step distances at rounding level, where a refinement ratio is meaningless
STATIONARY = 1e-9


def test_deformation_soundness(record):
    failures = []
    ratios = []
    slowest = 0.0
    for name in KAHLER:
        t0 = time.perf_counter()
        G = corpus_group(name)
        cert = decide_kahler(G)
        J0, W0 = perturbed_start(G, cert.omega, seed=0)
        p32 = deform_to_polarisable(G, J0, W0, steps=32)
        p64 = deform_to_polarisable(G, J0, W0, steps=64)
        end = p32.certificate
        sound = verify_certificate(G, end).ok and end.omega.matrix.is_integral()
        d32, d64 = p32.max_step_distance, p64.max_step_distance
        if d32 > STATIONARY:
            ratio = d32 / d64 if d64 > 0 else np.inf
            ratios.append(ratio)
            refined = ratio >= 1.5
        else:
            refined = d64 <= STATIONARY
        elapsed = time.perf_counter() - t0
        slowest = max(slowest, elapsed)
        if not (sound and refined and elapsed < 30):
            failures.append(name)
    ok = not failures
    worst = min(ratios) if ratios else float("nan")
    record(
        7,
        ok,
        f"{len(KAHLER)} groups, {len(ratios)} non-stationary (min refinement ratio {worst:.2f}), "
        f"slowest {slowest:.2f}s, failures: {failures or 'none'}",
    )
    assert ok


def test_density(record):
    G = close_group([block_diag(R4, R4)], name="C4+C4")
    cert = decide_kahler(G)
    J0, W0 = perturbed_start(G, cert.omega, seed=0)
    dists = []
    ok = True
    for r in (1, 1 / 2, 1 / 4, 1 / 8):
        s = sample_polarisable_near(G, J0, W0, radius=r)
        dists.append(s.distance)
        ok &= s.distance <= r and s.certificate.verification.ok
    record(8, ok, "distances " + ", ".join(f"{d:.1e}" for d in dists) + " for radii 1, 1/2, 1/4, 1/8")
    assert ok


def test_cm_cross_check(record):
    parts = []
    ok = True
    for m in (3, 4, 6):
        a = CyclotomicAction.of_order(m)
        J = cm_complex_structure(a)
        K = J.exact
        if m == 4:
            square = K is not None and K @ K == -RationalMatrix.identity(2)
        else:
            square = J.square_residual() <= 1e-12 and J.exact_square_is_minus_identity()
        commutes = K is not None and K @ a.generator == a.generator @ K
        report = cross_check_with_decider(a, decide_kahler(a.group()))
        good = square and commutes and report.ok
        ok &= good
        parts.append(f"m={m} {'ok' if good else 'bad'} (distance {report.distance:.1e})")
    record(9, ok, "; ".join(parts))
    assert ok
