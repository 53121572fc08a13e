"""Dense linear algebra over exact fields and complex doubles.

Matrices are numpy arrays.  ``dtype=object`` arrays hold exact scalars
(``int``, ``Fraction``, :class:`~charpoly.scalars.QI`) and are handled by
elimination in exact arithmetic; numeric arrays go through floating
algorithms with pivoting.

Doubled index layout: the primed copy of point ``i`` sits at ``2*i`` and the
double-primed copy at ``2*i + 1`` (interleaved, primed first).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .scalars import QI


class DimensionError(ValueError):
    pass


class ShapeError(ValueError):
    pass


class SingularityError(ZeroDivisionError):
    pass


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------- containers

def is_exact(A) -> bool:
    return isinstance(A, np.ndarray) and A.dtype == object


def exact_matrix(rows) -> np.ndarray:
    """Object array with ints promoted to ``Fraction``."""
    A = np.array(rows, dtype=object)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, 0)
    out = np.empty(A.shape, dtype=object)
    for idx, v in np.ndenumerate(A):
        out[idx] = Fraction(v) if isinstance(v, int) else v
    return out


def float_matrix(rows) -> np.ndarray:
    A = np.asarray(rows)
    if A.dtype == object:
        A = np.vectorize(complex, otypes=[complex])(A) if A.size else A.astype(complex)
    return np.asarray(A, dtype=complex)


def zeros(n: int, m: int | None = None, exact: bool = True) -> np.ndarray:
    m = n if m is None else m
    if exact:
        out = np.empty((n, m), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((n, m), dtype=complex)


def identity(n: int, exact: bool = True) -> np.ndarray:
    out = zeros(n, n, exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def sub(A, rows: Sequence[int], cols: Sequence[int] | None = None) -> np.ndarray:
    """Submatrix ``A(rows|cols)`` keeping the given order."""
    cols = rows if cols is None else cols
    rows, cols = list(rows), list(cols)
    if not rows or not cols:
        return A[np.ix_(rows, cols)] if A.size else A[:0, :0]
    return A[np.ix_(rows, cols)]


def _is_zero(x) -> bool:
    return x == 0


# ------------------------------------------------------------- determinants

def det_bareiss(A) -> object:
    """Fraction-free (Bareiss) determinant; exact for any exact field entries."""
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    M = [list(r) for r in A]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if _is_zero(M[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(M[r][k]):
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) / prev
        prev = pk
    return M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]


def det(A):
    if A.shape[0] != A.shape[1]:
        raise ShapeError("determinant needs a square matrix")
    if is_exact(A):
        return det_bareiss(A)
    if A.shape[0] == 0:
        return 1.0 + 0j
    return complex(np.linalg.det(A))


def inverse(A):
    """Exact Gauss-Jordan inverse for object arrays, LAPACK otherwise."""
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError("inverse needs a square matrix")
    if not is_exact(A):
        if n and abs(np.linalg.det(A)) == 0:
            raise SingularityError("singular matrix")
        try:
            return np.linalg.inv(A)
        except np.linalg.LinAlgError as exc:
            raise SingularityError(str(exc)) from exc
    M = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not _is_zero(M[r][c])), None)
        if piv is None:
            raise SingularityError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [v / p for v in M[c]]
        for r in range(n):
            if r != c and not _is_zero(M[r][c]):
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return exact_matrix([row[n:] for row in M])


# ---------------------------------------------------------------- pfaffians

def check_skew(A, tol: float = 0.0) -> None:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError("pfaffian needs a square matrix")
    if n % 2:
        raise DimensionError(f"pfaffian of odd dimension {n}")
    if is_exact(A):
        for i in range(n):
            if not _is_zero(A[i, i]):
                raise ShapeError("nonzero diagonal in skew matrix")
            for j in range(i + 1, n):
                if A[i, j] != -A[j, i]:
                    raise ShapeError(f"skew-symmetry fails at ({i},{j})")
    else:
        scale = max(1.0, float(np.abs(A).max(initial=0.0)))
        if np.abs(A + A.T).max(initial=0.0) > tol * scale:
            raise ShapeError("skew-symmetry fails beyond tolerance")


def pfaffian(A, tol: float = 1e-12):
    """Pfaffian by skew Gaussian elimination.

    Exact arrays eliminate over the field with the first nonzero pivot.
    Float arrays use Parlett-Reid style partial pivoting on the pivot row.
    """
    check_skew(A, tol)
    n = A.shape[0]
    exact = is_exact(A)
    if n == 0:
        return Fraction(1) if exact else 1.0 + 0j
    M = A.copy()
    result = Fraction(1) if exact else 1.0 + 0j
    for k in range(0, n - 1, 2):
        row = M[k, k + 1:]
        if exact:
            offs = next((j for j, v in enumerate(row) if not _is_zero(v)), None)
            if offs is None:
                return Fraction(0)
        else:
            offs = int(np.argmax(np.abs(row)))
            if row[offs] == 0:
                return 0j
        piv = k + 1 + offs
        if piv != k + 1:
            M[[k + 1, piv], :] = M[[piv, k + 1], :]
            M[:, [k + 1, piv]] = M[:, [piv, k + 1]]
            result = -result
        p = M[k, k + 1]
        result = result * p
        if k + 2 < n:
            a = M[k + 2:, k]
            b = M[k + 2:, k + 1]
            # Schur complement of the 2x2 pivot block
            upd = (np.outer(b, a) - np.outer(a, b)) / p
            M[k + 2:, k + 2:] = M[k + 2:, k + 2:] + upd
    return result


def pfaffian_matchings(A, max_dim: int = 10):
    """Pfaffian from the perfect-matching definition (oracle, small sizes)."""
    n = A.shape[0]
    if n % 2:
        raise DimensionError(f"pfaffian of odd dimension {n}")
    if n > max_dim:
        raise DimensionError(f"matching oracle limited to dimension {max_dim}")

    def rec(idx):
        if not idx:
            return Fraction(1) if is_exact(A) else 1.0 + 0j
        i, rest = idx[0], idx[1:]
        total = Fraction(0) if is_exact(A) else 0j
        for pos, j in enumerate(rest):
            term = A[i, j] * rec(rest[:pos] + rest[pos + 1:])
            total = total + term if pos % 2 == 0 else total - term
        return total

    return rec(tuple(range(n)))


# ------------------------------------------------------- appendix identities

def vandermonde(pts) -> object:
    """``V(A) = prod_{i<j} (a_i - a_j)``."""
    out = Fraction(1)
    for i, j in combinations(range(len(pts)), 2):
        out = out * (pts[i] - pts[j])
    return out


def cross_product(A, B) -> object:
    """``prod(A;B) = prod_{a,b} (a - b)``."""
    out = Fraction(1)
    for a in A:
        for b in B:
            out = out * (a - b)
    return out


def cauchy_matrix(A, B) -> np.ndarray:
    if len(A) != len(B):
        raise ShapeError("cauchy lists must have equal length")
    for a in A:
        for b in B:
            if a == b:
                raise SingularityError(f"coincident Cauchy points {a}")
    return exact_matrix([[Fraction(1) / (a - b) if not isinstance(a - b, QI) else QI(1) / (a - b)
                          for b in B] for a in A])


def cauchy_determinant(A, B):
    """Closed form ``(-1)^{k(k-1)/2} V(A)V(B)/prod(A;B)``."""
    k = len(A)
    if k != len(B):
        raise ShapeError("cauchy lists must have equal length")
    for a in A:
        for b in B:
            if a == b:
                raise SingularityError(f"coincident Cauchy points {a}")
    val = vandermonde(A) * vandermonde(B) / cross_product(A, B)
    return -val if (k * (k - 1) // 2) % 2 else val


def block_offdiagonal(A, B) -> np.ndarray:
    s = A.shape[0]
    if A.shape != (s, s) or B.shape != (s, s):
        raise ShapeError("blocks must be square and of equal size")
    H = zeros(2 * s, exact=is_exact(A))
    H[:s, s:] = A
    H[s:, :s] = B
    return H


def det_block_offdiagonal(A, B):
    """``det [[0, A], [B, 0]] = (-1)^{s*s} det A det B``."""
    s = A.shape[0]
    if A.shape != (s, s) or B.shape != (s, s):
        raise ShapeError("blocks must be square and of equal size")
    val = det(A) * det(B)
    return -val if (s * s) % 2 else val


def _check_index_lists(rows, cols):
    if len(rows) != len(cols):
        raise ShapeError("row and column lists differ in length")
    for lst in (rows, cols):
        if any(b <= a for a, b in zip(lst, lst[1:])):
            raise PreconditionError("index lists must be strictly increasing")


def minor_of_inverse(B, rows, cols):
    """``det A(rows|cols)`` for ``A = B^{-1}`` from the complementary minor of B."""
    _check_index_lists(rows, cols)
    n = B.shape[0]
    d = det(B)
    if d == 0:
        raise SingularityError("singular matrix")
    keep_r = [i for i in range(n) if i not in cols]
    keep_c = [j for j in range(n) if j not in rows]
    val = det(sub(B, keep_r, keep_c)) / d
    return -val if (sum(rows) + sum(cols)) % 2 else val


def minor_I_plus_A_direct(A, removed_rows, removed_cols):
    n = A.shape[0]
    M = A + identity(n, is_exact(A))
    return det(sub(M, [i for i in range(n) if i not in removed_rows],
                   [j for j in range(n) if j not in removed_cols]))


def minor_expansion_I_plus_A(A, removed_rows, removed_cols):
    """Expansion of the minor of ``I + A`` with the given rows/cols removed.

    Returns ``(-1)^{sum(a+b)+r} sum_X det A(cols, X | rows, X)`` over subsets X
    disjoint from both index lists.
    """
    rows, cols = list(removed_rows), list(removed_cols)
    _check_index_lists(rows, cols)
    if set(rows) & set(cols):
        raise PreconditionError("removed rows and columns must be disjoint")
    n = A.shape[0]
    free = [i for i in range(n) if i not in rows and i not in cols]
    total = Fraction(0) if is_exact(A) else 0j
    for size in range(len(free) + 1):
        for X in combinations(free, size):
            total = total + det(sub(A, cols + list(X), rows + list(X)))
    r = len(rows)
    return -total if (sum(rows) + sum(cols) + r) % 2 else total


def k_matrix(L) -> np.ndarray:
    """``K = I - (I+L)^{-1}``."""
    n = L.shape[0]
    I = identity(n, is_exact(L))
    return I - inverse(I + L)


def k_minor_sum(L, rows, cols):
    """``det K(rows|cols) = sum_X det L(rows,X|cols,X) / det(I+L)``."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ShapeError("row and column lists differ in length")
    n = L.shape[0]
    d = det(L + identity(n, is_exact(L)))
    if d == 0:
        raise SingularityError("det(I+L) vanishes")
    free = [i for i in range(n) if i not in rows and i not in cols]
    total = Fraction(0) if is_exact(L) else 0j
    for size in range(len(free) + 1):
        for X in combinations(free, size):
            total = total + det(sub(L, rows + list(X), cols + list(X)))
    return total / d


def skew_block(A) -> np.ndarray:
    """``[[0, A], [-A^T, 0]]``; A may be rectangular."""
    m, k = A.shape
    H = zeros(m + k, exact=is_exact(A))
    H[:m, m:] = A
    H[m:, :m] = -A.T
    return H


def pfaffian_of_block(A):
    """``Pf [[0, A], [-A^T, 0]] = (-1)^{s(s-1)/2} det A``."""
    s = A.shape[0]
    if A.shape != (s, s):
        raise ShapeError("block must be square")
    val = det(A)
    return -val if (s * (s - 1) // 2) % 2 else val


# ------------------------------------------------- doubled (primed) layout

def prime(i: int) -> int:
    return 2 * i


def dprime(i: int) -> int:
    return 2 * i + 1


def J_matrix(npoints: int, exact: bool = True) -> np.ndarray:
    """Block-diagonal J with ``J[i', i''] = 1`` in the interleaved layout."""
    J = zeros(2 * npoints, exact=exact)
    one = Fraction(1) if exact else 1.0
    for i in range(npoints):
        J[prime(i), dprime(i)] = one
        J[dprime(i), prime(i)] = -one
    return J


def _check_doubled(A, tol=1e-12):
    check_skew(A, tol)
    if A.shape[0] % 2:
        raise ShapeError("doubled layout needs even dimension")


def pf_J_plus_A_direct(A, k: int):
    """Pfaffian of ``J + A`` with the rows/cols ``1',...,(2k)'`` struck out."""
    _check_doubled(A)
    npts = A.shape[0] // 2
    if not 2 <= 2 * k <= npts:
        raise PreconditionError("need 2 <= 2k <= N")
    keep = [dprime(i) for i in range(2 * k)]
    keep += [x for j in range(2 * k, npts) for x in (prime(j), dprime(j))]
    M = A + J_matrix(npts, is_exact(A))
    return pfaffian(sub(M, keep))


def pf_J_plus_A_expansion(A, k: int):
    """Sum over doubled subsets X of points ``2k+1..N`` of ``Pf A[1'',...,(2k)'',X]``."""
    _check_doubled(A)
    npts = A.shape[0] // 2
    if not 2 <= 2 * k <= npts:
        raise PreconditionError("need 2 <= 2k <= N")
    head = [dprime(i) for i in range(2 * k)]
    tail = list(range(2 * k, npts))
    total = Fraction(0) if is_exact(A) else 0j
    for size in range(len(tail) + 1):
        for X in combinations(tail, size):
            idx = head + [x for j in X for x in (prime(j), dprime(j))]
            total = total + pfaffian(sub(A, idx))
    return total


def pf_J_plus_A_via_inverse(A, k: int):
    """Third route: ``Pf((J+A)^{-1})[1',...,(2k)'] * Pf(J+A)``."""
    _check_doubled(A)
    npts = A.shape[0] // 2
    M = A + J_matrix(npts, is_exact(A))
    B = inverse(M)
    return pfaffian(sub(B, [prime(i) for i in range(2 * k)])) * pfaffian(M)


def pf_submatrix_of_inverse(A, m: int):
    """``Pf B[1',...,(2m)']`` for ``B = A^{-1}`` from the complementary Pfaffian of A.

    The complementary index set is ``1'',...,(2m)'', (2m+1)', (2m+1)'', ..., N', N''``.
    """
    _check_doubled(A)
    npts = A.shape[0] // 2
    if not 2 <= 2 * m <= npts:
        raise PreconditionError("need 2 <= 2m <= N")
    pa = pfaffian(A)
    if pa == 0:
        raise SingularityError("singular skew matrix")
    comp = [dprime(i) for i in range(2 * m)]
    comp += [x for j in range(2 * m, npts) for x in (prime(j), dprime(j))]
    return pfaffian(sub(A, comp)) / pa


def pf_submatrix_of_inverse_direct(A, m: int):
    B = inverse(A)
    return pfaffian(sub(B, [prime(i) for i in range(2 * m)]))
