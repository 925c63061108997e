"""Exact linear algebra: rational matrices, matrices mod p, HNF and SNF.

Matrices are lists of rows.  Lattices are described by generator lists of
integer vectors; ``hnf`` returns the canonical basis as a tuple of column
vectors (see its docstring for the convention).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list
Matrix = list


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def det(A: Sequence[Sequence]) -> Fraction:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] * inv
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return d


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def solve(A: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve A x = b for square nonsingular A over Q."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n] for row in M]


def common_denominator(v: Sequence[Fraction]) -> int:
    from math import lcm

    d = 1
    for x in v:
        d = lcm(d, Fraction(x).denominator)
    return d


# ---------------------------------------------------------------------------
# mod p


def rref_mod(rows: Sequence[Sequence[int]], p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    M = [[x % p for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def kernel_mod(A: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> Matrix:
    """Basis of {x : A x = 0} over F_p (A given by rows)."""
    if ncols is None:
        ncols = len(A[0])
    R, pivots = rref_mod(A, p) if A else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def reduce_mod_subspace(v: Sequence[int], R: Sequence[Sequence[int]], pivots: Sequence[int], p: int) -> Vector:
    """Canonical representative of v modulo the row space of RREF matrix R."""
    w = [x % p for x in v]
    for row, pc in zip(R, pivots):
        if w[pc]:
            f = w[pc]
            w = [(x - f * y) % p for x, y in zip(w, row)]
    return w


def mat_pow_mod(A: Matrix, e: int, p: int) -> Matrix:
    n = len(A)
    result = identity(n)
    base = [[x % p for x in r] for r in A]
    while e:
        if e & 1:
            result = [[x % p for x in r] for r in mat_mul(result, base)]
        base = [[x % p for x in r] for r in mat_mul(base, base)]
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# integer lattices


def hnf(generators: Sequence[Sequence[int]], n: int | None = None, modulus: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Hermite normal form of the lattice spanned by integer vectors.

    Returns the basis as a tuple of n column vectors v_0..v_{n-1} where v_j
    has zero coordinates beyond j, positive pivot v_j[j], and the entries of
    row i to the right of the pivot reduced into [0, v_i[i]).  The lattice
    must have full rank n.  If ``modulus`` D is given, D*Z^n is assumed to be
    contained in the lattice and is used to bound intermediate entries.
    """
    gens = [list(map(int, g)) for g in generators]
    if n is None:
        n = len(gens[0])
    if modulus is not None:
        D = abs(modulus)
        gens = [[x % D for x in g] for g in gens] + [[D if i == j else 0 for i in range(n)] for j in range(n)]
    pool = [g for g in gens if any(g)]
    basis: list[list[int] | None] = [None] * n
    for i in range(n - 1, -1, -1):
        active = [g for g in pool if g[i] != 0]
        rest = [g for g in pool if g[i] == 0]
        if not active:
            raise ValueError("lattice is not of full rank")
        while len(active) > 1:
            active.sort(key=lambda g: abs(g[i]))
            piv = active[0]
            new_active = [piv]
            for g in active[1:]:
                q = g[i] // piv[i]
                h = [a - q * b for a, b in zip(g, piv)]
                if modulus is not None:
                    h = [x % D for x in h[: i + 1]] + h[i + 1 :]
                if h[i] != 0:
                    new_active.append(h)
                elif any(h):
                    rest.append(h)
            active = new_active
        v = active[0]
        if v[i] < 0:
            v = [-x for x in v]
        basis[i] = v
        pool = rest
    # reduce off-diagonal entries
    for j in range(n):
        v = basis[j]
        for i in range(j - 1, -1, -1):
            piv = basis[i]
            q = v[i] // piv[i]
            if q:
                v = [a - q * b for a, b in zip(v, piv)]
        basis[j] = v
    return tuple(tuple(v) for v in basis)  # type: ignore[arg-type]


def hnf_det(H: Sequence[Sequence[int]]) -> int:
    d = 1
    for j, col in enumerate(H):
        d *= col[j]
    return d


def hnf_solve(H: Sequence[Sequence[int]], v: Sequence) -> list[Fraction]:
    """Coordinates c with sum_j c_j H_j = v (H columns, upper triangular)."""
    n = len(H)
    v = [Fraction(x) for x in v]
    c = [Fraction(0)] * n
    for j in range(n - 1, -1, -1):
        c[j] = v[j] / H[j][j]
        if c[j]:
            v = [a - c[j] * b for a, b in zip(v, H[j])]
    return c


def hnf_contains(H: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return all(x.denominator == 1 for x in hnf_solve(H, v))


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Smith form of an integer matrix A (rows x cols).

    Returns (diag, U, V) with U A V = D, U and V unimodular, and
    diag the diagonal of D (length min(rows, cols)), each entry dividing the
    next, all nonnegative.
    """
    m, n = len(A), len(A[0])
    D = [list(map(int, r)) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for r in D:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nz:
                diag = [D[i][i] for i in range(min(m, n))]
                return [abs(x) for x in diag], U, V
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, m):
                q = D[i][t] // D[t][t]
                if q:
                    add_row(i, t, -q)
                if D[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = D[t][j] // D[t][t]
                if q:
                    add_col(j, t, -q)
                if D[t][j]:
                    done = False
            if not done:
                continue
            # divisibility condition
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    diag = [D[i][i] for i in range(min(m, n))]
    return [abs(x) for x in diag], U, V
