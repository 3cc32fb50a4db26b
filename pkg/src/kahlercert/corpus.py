"""Named test groups: cyclotomic actions, signed permutations and direct sums."""

from __future__ import annotations

from typing import Callable

from .cm_cyclic import companion_matrix, cyclotomic_coefficients
from .exactlin import RationalMatrix, block_diag
from .matgroup import FiniteMatrixGroup, close_group

R3 = RationalMatrix([[0, -1], [1, -1]])
R4 = RationalMatrix([[0, -1], [1, 0]])
R6 = RationalMatrix([[0, -1], [1, 1]])
SWAP = RationalMatrix([[0, 1], [1, 0]])
I2 = RationalMatrix.identity(2)


def cyclotomic_generator(m: int) -> RationalMatrix:
    return companion_matrix(cyclotomic_coefficients(m))


def signed_permutation(perm: list[int], signs: list[int]) -> RationalMatrix:
    """Matrix sending ``e_j`` to ``signs[j] * e_perm[j]``."""
    n = len(perm)
    rows = [[0] * n for _ in range(n)]
    for j, (i, s) in enumerate(zip(perm, signs)):
        rows[i][j] = s
    return RationalMatrix(rows)


def hyperoctahedral_generators(n: int) -> list[RationalMatrix]:
    """Adjacent transpositions and one sign change generate all signed permutations."""
    gens = []
    for k in range(n - 1):
        p = list(range(n))
        p[k], p[k + 1] = p[k + 1], p[k]
        gens.append(signed_permutation(p, [1] * n))
    gens.append(signed_permutation(list(range(n)), [-1] + [1] * (n - 1)))
    return gens


def cyclic_shift(n: int, twist: int = 1) -> RationalMatrix:
    """``e_j -> e_{j+1}`` with the last basis vector sent to ``twist * e_0``."""
    return signed_permutation([(j + 1) % n for j in range(n)], [1] * (n - 1) + [twist])


def doubled(gens: list[RationalMatrix]) -> list[RationalMatrix]:
    return [block_diag(g, g) for g in gens]


def direct_sum(first: list[RationalMatrix], second: list[RationalMatrix]) -> list[RationalMatrix]:
    """Generators of the product group acting block-diagonally."""
    a = first[0].nrows
    b = second[0].nrows
    return [block_diag(g, RationalMatrix.identity(b)) for g in first] + [
        block_diag(RationalMatrix.identity(a), g) for g in second
    ]


def _entries() -> dict[str, tuple[Callable[[], list[RationalMatrix]], bool]]:
    e: dict[str, tuple[Callable[[], list[RationalMatrix]], bool]] = {}
    for m in range(1, 13):
        e[f"cyclotomic_{m}"] = ((lambda m=m: [cyclotomic_generator(m)]), m >= 3)
    e.update({
        "rank2_C1": (lambda: [I2], True),
        "rank2_C2": (lambda: [-I2], True),
        "rank2_C3": (lambda: [R3], True),
        "rank2_C4": (lambda: [R4], True),
        "rank2_C6": (lambda: [R6], True),
        "rank2_reflection": (lambda: [SWAP], False),
        "rank2_S3": (lambda: [R3, SWAP], False),
        "rank2_diag_reflection": (lambda: [RationalMatrix.diag([-1, 1])], False),
        "signed_perm_B2": (lambda: hyperoctahedral_generators(2), False),
        "signed_perm_B3": (lambda: hyperoctahedral_generators(3), False),
        "signed_perm_B4": (lambda: hyperoctahedral_generators(4), False),
        "signed_4cycle": (lambda: [cyclic_shift(4, -1)], True),
        "signed_6cycle": (lambda: [cyclic_shift(6, -1)], True),
        "perm_C3_dim3": (lambda: [cyclic_shift(3)], False),
        "perm_C3_doubled": (lambda: doubled([cyclic_shift(3)]), True),
        "perm_S3_doubled": (lambda: doubled([cyclic_shift(3), signed_permutation([1, 0, 2], [1, 1, 1])]), True),
        "S3_doubled": (lambda: doubled([R3, SWAP]), True),
        "C4_plus_C3": (lambda: direct_sum([R4], [R3]), True),
        "C4_plus_C4_diagonal": (lambda: [block_diag(R4, R4)], True),
        "C4_times_C4": (lambda: direct_sum([R4], [R4]), True),
        "swap_plus_swap": (lambda: [block_diag(SWAP, SWAP)], True),
        "swap_plus_identity": (lambda: [block_diag(SWAP, I2)], False),
        "trivial_dim4": (lambda: [RationalMatrix.identity(4)], True),
        "C6_times_C4_times_C3": (lambda: direct_sum(direct_sum([R6], [R4]), [R3]), True),
    })
    return e


CORPUS = _entries()


def corpus_names() -> list[str]:
    return list(CORPUS)


def expected_kahler(name: str) -> bool:
    """Expected decision, known independently from the isotypic decomposition."""
    return CORPUS[name][1]


def corpus_group(name: str) -> FiniteMatrixGroup:
    gens = CORPUS[name][0]()
    return close_group(gens, name=name)
