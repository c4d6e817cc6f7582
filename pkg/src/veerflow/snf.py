"""Smith normal form over the integers, with transforms, and abelian group summaries."""
from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def smith_normal_form(A: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, S, V) with U*A*V = S diagonal, d1 | d2 | ..., all entries >= 0.

    ``ncols`` is only needed when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    S = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i: int, j: int) -> None:
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, k: int) -> None:  # row dst += k * row src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src: int, dst: int, k: int) -> None:
        for row in S:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(t, i, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(t, j, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        done = False
            if done:
                # enforce divisibility against the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest entry of row/column t to the pivot and repeat
            cand = [(abs(S[i][t]), i, t) for i in range(t, m) if S[i][t]]
            cand += [(abs(S[t][j]), t, j) for j in range(t, n) if S[t][j]]
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V


def diagonal(S: Matrix) -> list[int]:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def determinant(A: Matrix) -> int:
    """Exact integer determinant by fraction-free elimination (Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.torsion]
        if self.rank:
            parts.insert(0, "Z" if self.rank == 1 else f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


def rank_of(A: Matrix, ncols: int) -> int:
    _, S, _ = smith_normal_form(A, ncols)
    return sum(1 for d in diagonal(S) if d) if S else 0


def homology_from_boundaries(d1: Matrix, d2: Matrix, n1: int) -> AbelianGroup:
    """Middle homology of C2 -> C1 -> C0, with ``n1`` = rank of C1.

    Matrices act on column vectors: d1 is (dim C0) x n1, d2 is n1 x (dim C2).
    """
    r1 = rank_of(d1, n1) if d1 else 0
    ncols2 = len(d2[0]) if d2 and d2[0] else 0
    if ncols2:
        _, S, _ = smith_normal_form(d2)
        divs = [d for d in diagonal(S) if d]
    else:
        divs = []
    rank = n1 - r1 - len(divs)
    return AbelianGroup(rank, tuple(d for d in divs if d > 1))
