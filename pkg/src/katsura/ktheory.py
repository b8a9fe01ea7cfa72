"""Exact integer linear algebra: Smith normal form, K-groups, and
realization of prescribed K-groups by a certified pair construction.

Everything is plain Python integers; no precision limits apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from .errors import CertificationError, StructuralError, UnrealizableWithSquareMatrices
from .matrices import MatrixPair, is_irreducible, satisfies_condition_e

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    rows, inner, cols = len(x), len(y), len(y[0])
    return [
        [sum(x[i][k] * y[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def integer_det(m: Matrix) -> int:
    """Fraction-free Bareiss elimination; exact for any integer matrix."""
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """u @ m @ v = d with u, v unimodular and d diagonal, nonnegative,
    each entry dividing the next."""

    u: tuple[tuple[int, ...], ...]
    d: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0])))]


def smith_normal_form(m: Matrix) -> SmithDecomposition:
    """Diagonalize by unimodular row/column operations.

    Pivot rule: the entry of smallest nonzero absolute value in the working
    block, ties broken row-major, which makes the reduction deterministic.
    """
    if not m or not m[0]:
        raise StructuralError("matrix must be nonempty")
    rows, cols = len(m), len(m[0])
    if any(len(row) != cols for row in m):
        raise StructuralError("ragged matrix")
    a = [list(row) for row in m]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_op(i: int, k: int, q: int) -> None:  # row i -= q * row k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_op(j: int, k: int, q: int) -> None:  # col j -= q * col k
        for row in (a, v):
            for r in row:
                r[j] -= q * r[k]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in (a, v):
            for r in row:
                r[j], r[k] = r[k], r[j]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for s in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(s, rows):
                for j in range(s, cols):
                    x = abs(a[i][j])
                    if x and (pivot is None or x < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != s:
                swap_rows(s, pi)
            if pj != s:
                swap_cols(s, pj)
            dirty = False
            for i in range(s + 1, rows):
                if a[i][s]:
                    row_op(i, s, a[i][s] // a[s][s])
                    dirty = dirty or a[i][s] != 0
            for j in range(s + 1, cols):
                if a[s][j]:
                    col_op(j, s, a[s][j] // a[s][s])
                    dirty = dirty or a[s][j] != 0
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            offender = None
            for i in range(s + 1, rows):
                for j in range(s + 1, cols):
                    if a[i][j] % a[s][s]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(s, offender, -1)  # fold the offending row into the pivot row
        if a[s][s] < 0:
            negate_row(s)

    def freeze(mm):
        return tuple(tuple(row) for row in mm)

    return SmithDecomposition(freeze(u), freeze(a), freeze(v))


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant factor form:
    Z^free_rank + Z/d_1 + ... with 2 <= d_1 | d_2 | ..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise StructuralError("free rank must be nonnegative")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise StructuralError(f"torsion {self.torsion} is not a divisor chain")
        if any(d < 2 for d in self.torsion):
            raise StructuralError("invariant factors must be >= 2")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_group(free_rank: int, cyclic_orders: list[int]) -> AbelianGroup:
    """Normalize a direct sum of cyclic summands into invariant factor form."""
    by_prime: dict[int, list[int]] = {}
    for d in cyclic_orders:
        if d < 1:
            raise StructuralError(f"cyclic order {d} must be positive")
        for p, e in _prime_factors(d).items():
            by_prime.setdefault(p, []).append(e)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for k in range(width):
        f = 1
        for p, exps in by_prime.items():
            exps_sorted = sorted(exps, reverse=True)
            if k < len(exps_sorted):
                f *= p ** exps_sorted[k]
        factors.append(f)
    chain = tuple(sorted(f for f in factors if f > 1))
    return AbelianGroup(free_rank, chain)


def cokernel(m: Matrix) -> AbelianGroup:
    diag = smith_normal_form(m).diagonal()
    zero_rows = len(m) - len(m[0]) if len(m) > len(m[0]) else 0
    free = sum(1 for d in diag if d == 0) + zero_rows
    torsion = tuple(sorted(d for d in diag if d >= 2))
    return AbelianGroup(free, torsion)


def kernel_rank(m: Matrix) -> int:
    diag = smith_normal_form(m).diagonal()
    extra_cols = len(m[0]) - len(m) if len(m[0]) > len(m) else 0
    return sum(1 for d in diag if d == 0) + extra_cols


@dataclass(frozen=True)
class KTheoryResult:
    k0: AbelianGroup
    k1: AbelianGroup


def _i_minus(m: tuple[tuple[int, ...], ...]) -> Matrix:
    n = len(m)
    return [[(1 if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]


def k_groups(pair: MatrixPair) -> KTheoryResult:
    """K_0 = coker(I-A) + ker(I-B),  K_1 = coker(I-B) + ker(I-A)."""
    ia, ib = _i_minus(pair.a), _i_minus(pair.b)
    ca, cb = cokernel(ia), cokernel(ib)
    ka, kb = kernel_rank(ia), kernel_rank(ib)
    return KTheoryResult(
        k0=AbelianGroup(ca.free_rank + kb, ca.torsion),
        k1=AbelianGroup(cb.free_rank + ka, cb.torsion),
    )


@dataclass(frozen=True)
class Realization:
    pair: MatrixPair
    result: KTheoryResult
    condition_e: bool
    irreducible: bool
    diagonal_conditions: bool  # A[i][i] >= 2 and B[i][i] = 1 for all i


def _cumulative_transform(diag: list[int], negate: bool) -> Matrix:
    """L @ diag(d) @ L^T for the all-ones lower triangle L, optionally negated:
    entry (i, j) is the partial sum of d up to min(i, j).  Unimodular on both
    sides, so cokernel and kernel are preserved."""
    n = len(diag)
    sums = []
    acc = 0
    for d in diag:
        acc += d
        sums.append(acc)
    sign = -1 if negate else 1
    return [[sign * sums[min(i, j)] for j in range(n)] for i in range(n)]


def realize(g0: AbelianGroup, g1: AbelianGroup) -> Realization:
    """Produce a pair (A, B) whose K-groups are exactly (g0, g1), with B
    nonzero on the full support of A, A irreducible, and A[i][i] >= 2,
    B[i][i] = 1.  All four clauses are re-verified before returning.

    Square matrices force equal free ranks of the two K-groups, so
    mismatched inputs are rejected up front.
    """
    if g0.free_rank != g1.free_rank:
        raise UnrealizableWithSquareMatrices(
            f"free ranks differ ({g0.free_rank} vs {g1.free_rank}); "
            "square matrices force them equal"
        )
    half = max(len(g0.torsion) + g0.free_rank, len(g1.torsion), 1)
    if not g0.torsion and g0.free_rank == half and half >= 2:
        half += 1  # avoid the all-zero target, which no unimodular move can densify

    diag_a = list(g0.torsion) + [1] * (half - len(g0.torsion) - g0.free_rank) + [0] * g0.free_rank
    diag_b = list(g1.torsion) + [1] * (half - len(g1.torsion))
    m_a = _cumulative_transform(diag_a, negate=True)
    c = _cumulative_transform(diag_b, negate=False)

    a = [[0] * (2 * half) for _ in range(2 * half)]
    b = [[0] * (2 * half) for _ in range(2 * half)]
    for i in range(half):
        a[i][i] = 2
        a[half + i][half + i] = 2
        a[half + i][i] = 1
        b[i][i] = 1
        b[half + i][half + i] = 1
        b[half + i][i] = 1
        for j in range(half):
            a[i][half + j] = (1 if i == j else 0) - m_a[i][j]
            b[i][half + j] = c[i][j]

    pair = MatrixPair.from_rows(a, b)
    result = k_groups(pair)
    cert = Realization(
        pair=pair,
        result=result,
        condition_e=satisfies_condition_e(pair),
        irreducible=is_irreducible(pair),
        diagonal_conditions=all(
            pair.a_at(i, i) >= 2 and pair.b_at(i, i) == 1 for i in pair.vertices
        ),
    )
    if result.k0 != g0 or result.k1 != g1:
        raise CertificationError(
            f"constructed pair has K-groups {result}, expected ({g0}, {g1}); A={a} B={b}"
        )
    if not (cert.condition_e and cert.irreducible and cert.diagonal_conditions):
        raise CertificationError(f"constructed pair violates a structural clause: {cert}")
    return cert
