"""Short-vector enumeration (LLL preprocessing + Fincke-Pohst).

Vectors are real embeddings of lattice bases; enumeration runs in floating
point with a relative slack on the bound, so callers must re-check every
candidate exactly.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

import mpmath

BOUND_SLACK = 1e-7


def lll(vectors: Sequence[Sequence], delta: float = 0.99, prec: int = 200) -> list[list[int]]:
    """Integer transform T (rows) such that rows of T*B are LLL-reduced.

    ``vectors`` are the basis rows (real numbers or mpf).
    """
    with mpmath.workprec(prec):
        B = [[mpmath.mpf(x) for x in v] for v in vectors]
        n = len(B)
        T = [[int(i == j) for j in range(n)] for i in range(n)]

        def dot(u, v):
            return mpmath.fsum(a * b for a, b in zip(u, v))

        def gso():
            Bs, mu = [], [[mpmath.mpf(0)] * n for _ in range(n)]
            norms = []
            for i in range(n):
                v = list(B[i])
                for j in range(i):
                    mu[i][j] = dot(B[i], Bs[j]) / norms[j]
                    v = [a - mu[i][j] * b for a, b in zip(v, Bs[j])]
                Bs.append(v)
                norms.append(dot(v, v))
            return mu, norms

        k = 1
        mu, norms = gso()
        guard = 0
        while k < n:
            guard += 1
            if guard > 100000:
                raise RuntimeError("LLL did not converge")
            for j in range(k - 1, -1, -1):
                q = int(mpmath.nint(mu[k][j]))
                if q:
                    B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                    T[k] = [a - q * b for a, b in zip(T[k], T[j])]
                    mu, norms = gso()
            if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
                k += 1
            else:
                B[k], B[k - 1] = B[k - 1], B[k]
                T[k], T[k - 1] = T[k - 1], T[k]
                mu, norms = gso()
                k = max(k - 1, 1)
        return T


def fincke_pohst(gram: Sequence[Sequence[float]], bound: float, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """All nonzero integer x with x^T G x <= bound (up to sign: first nonzero coordinate > 0).

    Raises OverflowError if more than ``limit`` vectors would be produced.
    """
    n = len(gram)
    G = [[float(x) for x in row] for row in gram]
    # q[i][i] > 0 and Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    q = [row[:] for row in G]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    C = bound * (1 + BOUND_SLACK) + BOUND_SLACK
    x = [0] * n
    count = 0

    def rec(i: int, remaining: float):
        nonlocal count
        center = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(max(remaining, 0.0) / q[i][i])
        lo, hi = math.ceil(center - r), math.floor(center + r)
        for xi in range(lo, hi + 1):
            t = xi - center
            rem = remaining - q[i][i] * t * t
            if rem < 0:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    first = next(c for c in reversed(x) if c)
                    if first > 0:
                        count += 1
                        if limit is not None and count > limit:
                            raise OverflowError("enumeration limit exceeded")
                        yield tuple(x)
            else:
                yield from rec(i - 1, rem)
        x[i] = 0

    yield from rec(n - 1, C)
