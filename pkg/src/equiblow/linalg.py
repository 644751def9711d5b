"""Exact linear algebra over Q and Z.

Rational ranks and kernels via Gaussian elimination on Fractions (with
an integer fraction-free path for ranks), Hermite reduction for integer
lattices, and a small exact simplex for the convex-position tests that
GIT stability needs.  No floating point anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

Vec = tuple
Mat = tuple  # tuple of row tuples


def to_mat(rows) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_mul(A: Mat, B: Mat) -> Mat:
    if A and B and len(A[0]) != len(B):
        raise ValueError("shape mismatch")
    cols = len(B[0]) if B else 0
    return tuple(
        tuple(sum((a[k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(cols))
        for a in A
    )


def mat_vec(A: Mat, v: Sequence) -> Vec:
    return tuple(sum((row[i] * Fraction(v[i]) for i in range(len(v))), Fraction(0)) for row in A)


def transpose(A: Mat) -> Mat:
    if not A:
        return ()
    return tuple(tuple(A[i][j] for i in range(len(A))) for j in range(len(A[0])))


def rref(A: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot column indices."""
    rows = [list(r) for r in A]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(A: Mat) -> int:
    """Exact rank, computed fraction-free after clearing denominators."""
    rows = []
    for row in A:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in row])
    m = len(rows)
    n = len(rows[0]) if rows else 0
    # Bareiss elimination
    rk = 0
    prev = 1
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                rows[i][j] = (rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        rk += 1
        r += 1
        if r == m:
            break
    return rk


def nullspace(A: Mat) -> list[Vec]:
    """Basis of {v : A v = 0}, deterministic (one vector per free column)."""
    if not A:
        return []
    n = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(tuple(v))
    return basis


def solve(A: Mat, b: Sequence) -> Vec | None:
    """One exact solution of A x = b, or None when inconsistent."""
    if not A:
        return () if all(Fraction(x) == 0 for x in b) else None
    n = len(A[0])
    aug = tuple(tuple(row) + (Fraction(b[i]),) for i, row in enumerate(A))
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return tuple(x)


def coker_projection(A: Mat, rows: int) -> tuple[int, Callable[[Sequence], Vec]]:
    """Cokernel of the column space of A inside Q^rows.

    Returns (dimension, project) where project sends v in Q^rows to its
    coordinates in a fixed complement basis of im(A).  Deterministic:
    the complement consists of the standard basis vectors at non-pivot
    positions of the reduced column space.
    """
    cols = transpose(A) if A else ()
    if not cols:
        R: Mat = ()
        pivots: tuple[int, ...] = ()
    else:
        R, pivots = rref(cols)
    free = [i for i in range(rows) if i not in pivots]

    def project(v: Sequence) -> Vec:
        w = [Fraction(x) for x in v]
        for r, pc in enumerate(pivots):
            f = w[pc]
            if f != 0:
                for j in range(rows):
                    w[j] -= f * R[r][j]
        return tuple(w[i] for i in free)

    return len(free), project


# ---------------------------------------------------------------------------
# integer lattices


def _int_rows(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in M]


def hermite_with_transform(M) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite form H of M with unimodular U such that U M = H.

    Pivots are positive, entries above each pivot are reduced, zero rows
    sink to the bottom.
    """
    H = _int_rows(M)
    m = len(H)
    n = len(H[0]) if H else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        # clear the column below row r by gcd steps
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(H[i][c]), i))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
            if r == m:
                break
    return H, U


def hermite_rows(M) -> list[list[int]]:
    """Nonzero rows of the Hermite form: a canonical lattice basis."""
    H, _ = hermite_with_transform(M)
    return [row for row in H if any(row)]


def left_kernel_basis(M) -> list[list[int]]:
    """Canonical basis of the saturated lattice {v : v M = 0}."""
    H, U = hermite_with_transform(M)
    kernel = [U[i] for i in range(len(H)) if not any(H[i])]
    if not kernel:
        return []
    return hermite_rows(kernel)


def smith_diagonal(M) -> list[int]:
    """Elementary divisors of an integer matrix (non-negative)."""
    A = _int_rows(M)
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag = []
    top = 0
    while top < min(m, n):
        if all(A[i][j] == 0 for i in range(top, m) for j in range(top, n)):
            break
        while True:
            i0, j0 = min(
                (
                    (i, j)
                    for i in range(top, m)
                    for j in range(top, n)
                    if A[i][j] != 0
                ),
                key=lambda ij: (abs(A[ij[0]][ij[1]]), ij),
            )
            A[top], A[i0] = A[i0], A[top]
            for row in A:
                row[top], row[j0] = row[j0], row[top]
            p = A[top][top]
            dirty = False
            for i in range(top + 1, m):
                q = A[i][top] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[top])]
                if A[i][top]:
                    dirty = True
            for j in range(top + 1, n):
                q = A[top][j] // p
                if q:
                    for i in range(m):
                        A[i][j] -= q * A[i][top]
                if A[top][j]:
                    dirty = True
            if not dirty:
                break
        diag.append(abs(A[top][top]))
        top += 1
    # enforce the divisibility chain d1 | d2 | ... via gcd/lcm exchanges
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if a and b and b % a:
                g = gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return diag


def primitive(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (0 stays 0)."""
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    if g <= 1:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


# ---------------------------------------------------------------------------
# exact LP feasibility (phase-one simplex, Bland's rule)


def _phase_one(A: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Feasibility of {x >= 0 : A x = b} over the rationals."""
    m = len(A)
    n = len(A[0]) if A else 0
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # tableau with artificial basis; minimize the sum of artificials
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]] for i in range(m)]
    cost = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            cost[j] -= T[i][j]
    for i in range(m):
        cost[n + i] = Fraction(0)
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # unbounded phase-one cannot happen (objective bounded below by 0)
            raise ArithmeticError("phase-one simplex unbounded")
        _, leave = best
        pv = T[leave][enter]
        T[leave] = [x / pv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        f = cost[enter]
        if f != 0:
            cost = [x - f * y for x, y in zip(cost, T[leave] + [])]
        basis[leave] = enter
    return -cost[-1] == 0


def lp_feasible(A_eq, b_eq, lower) -> bool:
    """Feasibility of {x : A x = b, x_i >= lower_i} with exact rationals."""
    A = [[Fraction(x) for x in row] for row in A_eq]
    b = [Fraction(x) for x in b_eq]
    lo = [Fraction(x) for x in lower]
    if A:
        shift = [sum(A[i][j] * lo[j] for j in range(len(lo))) for i in range(len(A))]
        b = [b[i] - shift[i] for i in range(len(b))]
    return _phase_one(A, b)


def zero_in_convex_hull(vectors: Sequence[Sequence[int]]) -> bool:
    """Is 0 a convex combination of the given integer vectors?"""
    vs = [tuple(int(x) for x in v) for v in vectors]
    if not vs:
        return False
    d = len(vs[0])
    A = [[Fraction(v[i]) for v in vs] for i in range(d)]
    A.append([Fraction(1)] * len(vs))
    b = [Fraction(0)] * d + [Fraction(1)]
    return lp_feasible(A, b, [0] * len(vs))


def zero_in_relative_interior(vectors: Sequence[Sequence[int]]) -> bool:
    """Is 0 a strictly positive convex combination of the vectors?

    For a finite set this characterises membership in the relative
    interior of the convex hull.  The combination is homogeneous, so
    strict positivity can be normalised to lambda_i >= 1.
    """
    vs = [tuple(int(x) for x in v) for v in vectors]
    if not vs:
        return False
    d = len(vs[0])
    A = [[Fraction(v[i]) for v in vs] for i in range(d)]
    b = [Fraction(0)] * d
    return lp_feasible(A, b, [1] * len(vs))
