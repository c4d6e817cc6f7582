"""Triple-point accounting for surgeries and tetrahedron counts for the Montesinos family.

All arithmetic is exact (integers and ``fractions.Fraction``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class NotAdmissibleError(ValueError):
    pass


def added_triple_points_horizontal(n1: int, n2: int, k: int) -> int:
    _check_nonneg(n1, n2, k)
    return k * n1 * n2


def added_triple_points_vertical(n1: int, n2: int, k: int) -> int:
    _check_nonneg(n1, n2, k)
    return k * n1 * n2


def _check_nonneg(*xs: int) -> None:
    for x in xs:
        if not isinstance(x, int) or x < 0:
            raise ValueError(f"expected a non-negative integer, got {x!r}")


@dataclass(frozen=True)
class SurgerySystem:
    """Branch counts ``n`` and ``m`` on either side of each annulus, boundary
    intersection numbers ``q`` and surgery coefficients ``k``."""

    n: tuple[int, ...]
    m: tuple[int, ...]
    q: tuple[tuple[int, ...], ...]
    k: tuple[int, ...]

    def __post_init__(self) -> None:
        size = len(self.n)
        if len(self.m) != size or len(self.k) != size or len(self.q) != size:
            raise ValueError("inconsistent sizes")
        _check_nonneg(*self.n, *self.m, *self.k)
        for i in range(size):
            if len(self.q[i]) != size or self.q[i][i] != 0:
                raise ValueError("q must be square with zero diagonal")
            for j in range(size):
                _check_nonneg(self.q[i][j])
                if self.q[i][j] != self.q[j][i]:
                    raise ValueError("q must be symmetric")

    @property
    def C(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(
            tuple(Fraction(self.q[i][j] * self.n[i] * self.n[j], 4) for j in range(len(self.n)))
            for i in range(len(self.n))
        )

    @property
    def d(self) -> tuple[int, ...]:
        return tuple(a * b for a, b in zip(self.n, self.m))


def quadratic_count(C: Sequence[Sequence], d: Sequence, k: Sequence[int]) -> Fraction:
    """k^T (C k + d)."""
    total = Fraction(0)
    for i, ki in enumerate(k):
        total += ki * (sum(Fraction(C[i][j]) * kj for j, kj in enumerate(k)) + d[i])
    return total


def added_triple_points_concurrent(S: SurgerySystem, halved: bool = False) -> int:
    # four times k^T (C k + d), kept in integers
    n, k = S.n, S.k
    size = len(k)
    total = 0
    for i in range(size):
        if k[i]:
            row = S.q[i]
            total += k[i] * (sum(row[j] * n[j] * k[j] for j in range(size)) * n[i] + 4 * n[i] * S.m[i])
    den = 8 if halved else 4
    if total % den:
        raise ValueError(f"non-integral triple point count {Fraction(total, den)}")
    return total // den


def concurrent_from_matrix(C: Sequence[Sequence[int]], d: Sequence[int], k: Sequence[int], halved: bool = False) -> int:
    total = quadratic_count(C, d, k)
    if halved:
        total /= 2
    if total.denominator != 1:
        raise ValueError(f"non-integral triple point count {total}")
    return int(total)


# ---------------------------------------------------------------------------
# Montesinos family


@dataclass(frozen=True)
class TriangulationStats:
    tets: int
    blue: int
    red: int

    def __post_init__(self) -> None:
        if self.tets != self.blue + self.red:
            raise ValueError("tets must equal blue + red")


def _check_params(p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(p)
    if len(p) < 3:
        raise ValueError("need at least three cone points")
    for x in p:
        if not isinstance(x, int) or x < 2:
            raise ValueError(f"cone orders must be integers >= 2, got {x!r}")
    return p


def euler_e(p: Sequence[int]) -> Fraction:
    p = _check_params(p)
    return sum((Fraction(1, x) for x in p), Fraction(0)) - len(p) + 2


def _hyperbolic(p: tuple[int, ...]) -> bool:
    """Sign test for euler_e over a common denominator."""
    L = 1
    for x in p:
        L *= x
    return sum(L // x for x in p) < (len(p) - 2) * L


def _reject(p: tuple[int, ...]) -> None:
    if not _hyperbolic(p):
        raise NotAdmissibleError(f"e = {euler_e(p)} is not negative")


def canonicalize(p: Sequence[int]) -> tuple[int, ...]:
    """Lexicographic minimum over cyclic rotations and reversals."""
    p = _check_params(p)
    n = len(p)
    orbit = []
    for seq in (p, p[::-1]):
        for r in range(n):
            orbit.append(seq[r:] + seq[:r])
    return min(orbit)


def montesinos_label(p: Sequence[int]) -> tuple[Fraction, ...]:
    p = _check_params(p)
    return (Fraction(1, p[0]) + 1,) + tuple(Fraction(1, x) - 1 for x in p[1:])


def cyclic_distance(i: int, j: int, n: int) -> int:
    d = abs(i - j) % n
    return min(d, n - d)


def predict_stats(p: Sequence[int]) -> TriangulationStats:
    p = _check_params(p)
    _reject(p)
    n = len(p)
    if n == 3:
        a, b, c = sorted(p)
        if a == 2 and b == 3:
            k = c - 6
            return TriangulationStats(2 * k + 1, 2 * k, 1)
        if a == 2:
            k1, k2 = b - 4, c - 4
            blue = k1 * k2 + 2 * k1 + 2 * k2
            return TriangulationStats(blue + 2, blue, 2)
        k1, k2, k3 = a - 3, b - 3, c - 3
        blue = k1 * k2 + k1 * k3 + k2 * k3 + 2 * (k1 + k2 + k3)
        return TriangulationStats(blue + 3, blue, 3)
    k = [x - 2 for x in p]
    # unordered pairs: neighbours on the cycle count once, the rest twice
    quad = 0
    for i in range(n):
        for j in range(i + 1, n):
            quad += k[i] * k[j] * (1 if cyclic_distance(i, j, n) == 1 else 2)
    linear = 2 * (n - 3) * sum(k)
    blue = quad + linear + n * (n - 4)
    return TriangulationStats(blue + n, blue, n)


def predict_stats_by_surgery(p: Sequence[int]) -> TriangulationStats:
    """Independent route for n >= 4: base counts plus halved concurrent surgery."""
    p = _check_params(p)
    n = len(p)
    if n < 4:
        raise ValueError("surgery route covers n >= 4 only")
    _reject(p)
    q = tuple(
        tuple(0 if i == j else (1 if cyclic_distance(i, j, n) == 1 else 2) for j in range(n))
        for i in range(n)
    )
    S = SurgerySystem((2,) * n, (2 * (n - 3),) * n, q, tuple(x - 2 for x in p))
    added = added_triple_points_concurrent(S, halved=True)
    base_blue, base_red = n * (n - 4), 2 * n
    return TriangulationStats(base_blue + base_red // 2 + added, base_blue + added, base_red // 2)


def summary(p: Sequence[int]) -> dict:
    st = predict_stats(p)
    return {
        "p": list(p),
        "canonical": list(canonicalize(p)),
        "e": str(euler_e(p)),
        "label": [str(x) for x in montesinos_label(p)],
        "tets": st.tets,
        "blue": st.blue,
        "red": st.red,
    }
