"""Integer symplectic matrices, Picard-Lefschetz transvections and the Meyer cocycle.

Conventions (fixed once, used everywhere):

* A twist t_c^e acts on homology by x -> x + e<c, x> c, where <a_i, b_i> = 1.
* A word t_1 t_2 ... t_k is a composition of maps, so the rightmost twist is
  applied first and the matrix of the word is T_1 T_2 ... T_k.

With these choices the chain, Matsumoto and genus-3 relations all multiply
out to the identity.  Matrices act on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .surfaces import HomologyClass, intersection

Matrix = tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def j_matrix(g: int) -> Matrix:
    """Gram matrix of the pairing: x^T J y = <x, y>."""
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return tuple(tuple(r) for r in rows)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(r) for r in zip(*A))


@dataclass(frozen=True)
class SpMatrix:
    entries: Matrix

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    @classmethod
    def identity(cls, g: int) -> "SpMatrix":
        return cls(identity(2 * g))

    def __matmul__(self, other: "SpMatrix") -> "SpMatrix":
        if self.size != other.size:
            raise ValueError(f"size mismatch {self.size} vs {other.size}")
        return SpMatrix(matmul(self.entries, other.entries))

    def inverse(self) -> "SpMatrix":
        # M^T J M = J  =>  M^{-1} = -J M^T J
        J = j_matrix(self.genus)
        inv = matmul(matmul(J, transpose(self.entries)), J)
        return SpMatrix(tuple(tuple(-x for x in row) for row in inv))

    def is_symplectic(self) -> bool:
        J = j_matrix(self.genus)
        return matmul(matmul(transpose(self.entries), J), self.entries) == J

    def is_identity(self) -> bool:
        return self.entries == identity(self.size)

    def apply(self, x: HomologyClass) -> HomologyClass:
        return HomologyClass(tuple(sum(m * v for m, v in zip(row, x.coeffs))
                                   for row in self.entries))

    def __str__(self):
        return "\n".join(" ".join(f"{v:3d}" for v in row) for row in self.entries)


def transvect(c: HomologyClass, exponent: int, x: HomologyClass) -> HomologyClass:
    """Image of x under t_c^exponent."""
    p = intersection(c, x)
    if not p or not exponent:
        return x
    return x + (exponent * p) * c


def transvection(c: HomologyClass, exponent: int = 1) -> SpMatrix:
    n = len(c)
    cols = []
    for k in range(n):
        e = HomologyClass(tuple(int(i == k) for i in range(n)))
        cols.append(transvect(c, exponent, e).coeffs)
    return SpMatrix(transpose(cols))


def _right_multiply_transvection(M: list[list[int]], c: Sequence[int], e: int) -> None:
    """In place M <- M T_c^e, using T = I + e c (c^T J)."""
    n = len(c)
    if not e or not any(c):
        return
    Mc = [sum(M[i][k] * c[k] for k in range(n)) for i in range(n)]
    # row vector c^T J: (c^T J)_j = sum_i c_i J_ij
    cJ = [0] * n
    for i in range(n // 2):
        cJ[2 * i + 1] += c[2 * i]
        cJ[2 * i] -= c[2 * i + 1]
    for i in range(n):
        if Mc[i]:
            f = e * Mc[i]
            row = M[i]
            for j in range(n):
                if cJ[j]:
                    row[j] += f * cJ[j]


def word_product(terms: Iterable[tuple[HomologyClass, int]], g: int) -> SpMatrix:
    """Matrix of the word t_1^{e_1} t_2^{e_2} ... given (class, exponent) pairs."""
    n = 2 * g
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for c, e in terms:
        if len(c) != n:
            raise ValueError(f"class of length {len(c)} in a genus-{g} word")
        _right_multiply_transvection(M, c.coeffs, e)
    return SpMatrix(tuple(tuple(r) for r in M))


def product(f) -> SpMatrix:
    """Symplectic shadow of a factorization (anything with ``surface`` and ``twists``)."""
    return word_product(((t.homology, t.exponent) for t in f.twists), f.surface.genus)


def prefix_products(f) -> list[SpMatrix]:
    """[P_0 = I, P_1, ..., P_k] with P_j the product of the first j twists."""
    g = f.surface.genus
    n = 2 * g
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    out = [SpMatrix(tuple(tuple(r) for r in M))]
    for t in f.twists:
        _right_multiply_transvection(M, t.homology.coeffs, t.exponent)
        out.append(SpMatrix(tuple(tuple(r) for r in M)))
    return out


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Optional[HomologyClass] = None
    image: Optional[HomologyClass] = None
    note: str = "necessary condition only (Sp-level check)"

    @property
    def label(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def __str__(self):
        if self.passed:
            return f"PASS ({self.note})"
        return f"FAIL: {self.witness} -> {self.image} ({self.note})"


def verify(f) -> Verdict:
    """Compare the product with the Sp shadow of the target, which is always I."""
    M = product(f)
    if M.is_identity():
        return Verdict(True)
    n = M.size
    for k in range(n):
        e = HomologyClass(tuple(int(i == k) for i in range(n)))
        img = M.apply(e)
        if img != e:
            return Verdict(False, e, img)
    raise AssertionError("unreachable")


# ------------------------------------------------------------ exact linear algebra

def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} over Q, via reduced row echelon form."""
    A = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [x / piv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis


def signature(Q: Sequence[Sequence[Fraction]]) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalization."""
    A = [[Fraction(x) for x in r] for r in Q]
    n = len(A)
    sig = 0
    k = 0
    while k < n:
        if A[k][k] == 0:
            # find a nonzero diagonal entry to swap in, else create one
            p = next((i for i in range(k + 1, n) if A[i][i] != 0), None)
            if p is not None:
                A[k], A[p] = A[p], A[k]
                for row in A:
                    row[k], row[p] = row[p], row[k]
            else:
                q = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if q is None:
                    k += 1
                    continue
                # v_k <- v_k + v_q makes the diagonal 2 A[k][q] != 0
                for j in range(n):
                    A[k][j] += A[q][j]
                for i in range(n):
                    A[i][k] += A[i][q]
        d = A[k][k]
        sig += 1 if d > 0 else -1
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / d
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
                for j in range(k, n):
                    A[j][i] = A[i][j]
        k += 1
    return sig


def meyer_tau(A: SpMatrix, B: SpMatrix) -> int:
    """Meyer's signature cocycle tau(A, B).

    V = {(x, y) : (A^{-1} - I) x + (B - I) y = 0} carries the bilinear form
    ((x1, y1), (x2, y2)) -> <x1 + y1, (I - B) y2>; tau is the signature of its
    symmetrization.
    """
    n = A.size
    Ainv = A.inverse().entries
    Bm = B.entries
    rows = [[Ainv[i][j] - (i == j) for j in range(n)] + [Bm[i][j] - (i == j) for j in range(n)]
            for i in range(n)]
    V = nullspace(rows, 2 * n)
    if not V:
        return 0
    g = n // 2

    def pair(x, y):
        return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(g))

    def form(v, w):
        x1, y1 = v[:n], v[n:]
        y2 = w[n:]
        u = [a + b for a, b in zip(x1, y1)]
        IBy = [y2[i] - sum(Bm[i][j] * y2[j] for j in range(n)) for i in range(n)]
        return pair(u, IBy)

    k = len(V)
    F = [[form(V[i], V[j]) for j in range(k)] for i in range(k)]
    S = [[(F[i][j] + F[j][i]) / 2 for j in range(k)] for i in range(k)]
    return signature(S)
