"""Exact linear algebra over Q and Z.

Everything here works on :class:`fractions.Fraction` or Python ``int`` entries;
no floating point is involved.  Subspaces are stored in reduced row echelon
form and lattices in Hermite normal form, so two equal objects compare equal
with ``==``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import qpoly

Vector = tuple


class DimensionError(ValueError):
    """Raised when operands live in different ambient spaces."""


class NotSquareError(ValueError):
    """Raised when a square matrix is required."""


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable dense matrix with exact rational entries."""

    rows: tuple

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if data and len({len(r) for r in data}) != 1:
            raise DimensionError("ragged matrix")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "_ncols", len(data[0]) if data else (ncols or 0))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.rows[i][j]
        return self.rows[idx]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(matmul(self.rows, other.rows), ncols=other.ncols)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(transpose(self.rows), ncols=self.nrows)

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(identity(n), ncols=n)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def to_ints(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return [[int(x) for x in r] for r in self.rows]

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"RationalMatrix([{body}])"


def as_rows(M) -> list[list[Fraction]]:
    if isinstance(M, RationalMatrix):
        return [list(r) for r in M.rows]
    return [[Fraction(x) for x in r] for r in M]


def ncols_of(M) -> int:
    if isinstance(M, RationalMatrix):
        return M.ncols
    return len(M[0]) if len(M) else 0


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*rows)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(r, c) if a and b) for c in Bt] for r in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(r, v) if a and b) for r in A]


def det(M) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    A = as_rows(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise NotSquareError("determinant of non-square matrix")
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


def int_det(M) -> int:
    d = det(M)
    if d.denominator != 1:
        raise ValueError("non-integral determinant")
    return int(d)


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = as_rows(M)
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M) -> int:
    return len(rref(M)[1])


def inverse(M) -> list[list[Fraction]]:
    A = as_rows(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise NotSquareError("inverse of non-square matrix")
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def solve(M, b: Sequence) -> list[Fraction] | None:
    """One solution x of M x = b, or ``None`` when inconsistent."""
    A = as_rows(M)
    n = ncols_of(M)
    aug = [r + [Fraction(bi)] for r, bi in zip(A, b)]
    R, piv = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim in canonical (reduced echelon) form."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [list(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        R, _ = rref(rows) if rows else ([], [])
        return cls(ambient_dim, tuple(tuple(r) for r in R))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(identity(ambient_dim), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence) -> bool:
        return Subspace.span(list(self.basis) + [list(v)], self.ambient_dim).dim == self.dim

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return intersect(self, other) == other

    def is_zero(self) -> bool:
        return not self.basis


def _check_ambient(A: Subspace, B: Subspace) -> None:
    if A.ambient_dim != B.ambient_dim:
        raise DimensionError(f"ambient mismatch: {A.ambient_dim} vs {B.ambient_dim}")


def kernel_basis(M, ncols: int | None = None) -> Subspace:
    """Null space {x : M x = 0} as a canonical subspace of Q^cols."""
    n = ncols if ncols is not None else ncols_of(M)
    R, piv = rref(M) if len(as_rows(M)) else ([], [])
    free = [c for c in range(n) if c not in piv]
    vecs = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(R, piv):
            v[c] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, n)


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check_ambient(A, B)
    return Subspace.span(list(A.basis) + list(B.basis), A.ambient_dim)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    _check_ambient(A, B)
    if A.is_zero() or B.is_zero():
        return Subspace.zero(A.ambient_dim)
    # columns a_i and -b_j; a kernel vector (s, t) gives sum s_i a_i in A ∩ B
    cols = list(A.basis) + [[-x for x in b] for b in B.basis]
    K = kernel_basis(transpose(cols))
    vecs = []
    for k in K.basis:
        s = k[: A.dim]
        vecs.append([sum(si * a[j] for si, a in zip(s, A.basis)) for j in range(A.ambient_dim)])
    return Subspace.span(vecs, A.ambient_dim)


def image(M, domain: Subspace | None = None) -> Subspace:
    """Image of a subspace (default: the whole domain) under x -> M x."""
    rows = as_rows(M)
    m = len(rows)
    if domain is None:
        return Subspace.span(transpose(rows), m) if rows else Subspace.zero(0)
    return Subspace.span([matvec(rows, v) for v in domain.basis], m)


def preimage(M, target: Subspace, ncols: int | None = None) -> Subspace:
    """{x : M x in target}."""
    n = ncols if ncols is not None else ncols_of(M)
    rows = as_rows(M)
    # complement equations: annihilator of target applied to M
    ann = kernel_basis(list(target.basis), target.ambient_dim) if target.dim else Subspace.full(target.ambient_dim)
    eqs = [matvec(transpose(rows), list(a)) for a in ann.basis] if rows else []
    return kernel_basis(eqs, n) if eqs else Subspace.full(n)


# ---------------------------------------------------------------------------
# integer normal forms


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF of an integer matrix, zero rows dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    A = [[int(x) for x in r] for r in M]
    if not A:
        return []
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = xgcd(a, b)
            u, v = a // g, b // g
            ra, rb = A[r], A[i]
            A[r] = [x * p + y * q for p, q in zip(ra, rb)]
            A[i] = [-v * p + u * q for p, q in zip(ra, rb)]
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
    return [row for row in A[:r] if any(row)]


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = diag(invariants) (padded with zeros), U and V unimodular."""

    invariants: tuple
    U: tuple
    V: tuple
    V_inv: tuple


def smith_form(M: Sequence[Sequence[int]]) -> SmithForm:
    A = [[int(x) for x in r] for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        clean = False
            if not clean:
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    inv = tuple(A[i][i] for i in range(min(m, n)))
    return SmithForm(inv, tuple(map(tuple, U)), tuple(map(tuple, V)), tuple(map(tuple, Vi)))


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Diagonal invariants d1 | d2 | ... of an integer matrix."""
    if not M or not len(M[0]):
        return ()
    return smith_form(M).invariants


@dataclass(frozen=True)
class IntegerLattice:
    """Sublattice of Z^ambient_rank, basis in Hermite normal form."""

    ambient_rank: int
    basis: tuple

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient_rank: int) -> "IntegerLattice":
        rows = [list(g) for g in gens]
        for g in rows:
            if len(g) != ambient_rank:
                raise DimensionError("generator length does not match ambient rank")
        return cls(ambient_rank, tuple(tuple(r) for r in hermite_normal_form(rows)))

    @classmethod
    def standard(cls, ambient_rank: int) -> "IntegerLattice":
        return cls.from_generators(identity(ambient_rank), ambient_rank)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rational_span(self) -> Subspace:
        return Subspace.span(self.basis, self.ambient_rank)

    def __contains__(self, v: Sequence[int]) -> bool:
        return IntegerLattice.from_generators(list(self.basis) + [list(v)], self.ambient_rank) == self

    def index_in(self, other: "IntegerLattice") -> int | None:
        """[other : self] when self is a finite-index sublattice of other."""
        if self.rank != other.rank:
            return None
        if IntegerLattice.from_generators(list(self.basis) + list(other.basis), self.ambient_rank) != other:
            return None
        coords = [solve(transpose(other.basis), list(b)) for b in self.basis]
        return abs(int_det(coords)) if coords else 1

    def is_primitive(self) -> bool:
        return saturate(self) == self


def saturate(L: IntegerLattice) -> IntegerLattice:
    """(L ⊗ Q) ∩ Z^m, the smallest primitive lattice containing L."""
    if L.rank == 0:
        return L
    sf = smith_form(L.basis)
    r = sum(1 for d in sf.invariants if d)
    return IntegerLattice.from_generators([list(row) for row in sf.V_inv[:r]], L.ambient_rank)


def lattice_from_subspace(S: Subspace) -> IntegerLattice:
    """Integer points of a rational subspace."""
    gens = []
    for v in S.basis:
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        gens.append([int(x * den) for x in v])
    return saturate(IntegerLattice.from_generators(gens, S.ambient_dim))


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> IntegerLattice:
    return lattice_from_subspace(kernel_basis(M, ncols))


# ---------------------------------------------------------------------------
# similarity over Q


def _poly_smith_diagonal(P: list[list[tuple]]) -> list[tuple]:
    """Diagonal of the Smith form over Q[x] of a square polynomial matrix."""
    A = [list(r) for r in P]
    n = len(A)
    for t in range(n):
        entries = [(qpoly.deg(A[i][j]), i, j) for i in range(t, n) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            clean = True
            for i in range(t + 1, n):
                if A[i][t]:
                    q, _ = qpoly.divmod_poly(A[i][t], A[t][t])
                    A[i] = [qpoly.sub(x, qpoly.mul(q, y)) for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q, _ = qpoly.divmod_poly(A[t][j], A[t][t])
                    for row in A:
                        row[j] = qpoly.sub(row[j], qpoly.mul(q, row[t]))
                    if A[t][j]:
                        clean = False
            if not clean:
                cand = [(qpoly.deg(A[i][t]), i, t) for i in range(t + 1, n) if A[i][t]]
                cand += [(qpoly.deg(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                if j == t:
                    A[t], A[i] = A[i], A[t]
                else:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if qpoly.rem(A[i][j], A[t][t])),
                None,
            )
            if bad is None:
                break
            A[t] = [qpoly.add(x, y) for x, y in zip(A[t], A[bad])]
    return [qpoly.monic(A[i][i]) for i in range(n)]


def invariant_factors(M) -> list[tuple]:
    """Non-constant invariant factors of x*I - M, as monic coefficient tuples."""
    A = as_rows(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise NotSquareError("invariant factors need a square matrix")
    P = [[qpoly.trim([-A[i][j], 1 if i == j else 0]) for j in range(n)] for i in range(n)]
    diag = _poly_smith_diagonal(P)
    return sorted((d for d in diag if qpoly.deg(d) > 0), key=len)


def companion_matrix(coeffs: Sequence) -> list[list[Fraction]]:
    """Companion of the monic polynomial with coefficients constant-first.

    Ones on the subdiagonal, last column carries minus the lower coefficients,
    so the characteristic polynomial is the input.
    """
    c = [Fraction(x) for x in coeffs]
    if c[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    m = len(c) - 1
    C = [[Fraction(0)] * m for _ in range(m)]
    for i in range(1, m):
        C[i][i - 1] = Fraction(1)
    for i in range(m):
        C[i][m - 1] = -c[i]
    return C


def rational_canonical_form(M) -> RationalMatrix:
    """Block diagonal of companion matrices of the invariant factors."""
    n = len(as_rows(M))
    blocks = [companion_matrix(f) for f in invariant_factors(M)]
    out = [[Fraction(0)] * n for _ in range(n)]
    o = 0
    for B in blocks:
        k = len(B)
        for i in range(k):
            for j in range(k):
                out[o + i][o + j] = B[i][j]
        o += k
    return RationalMatrix(out, ncols=n)


@dataclass(frozen=True)
class SimilarityResult:
    similar: bool
    witness: RationalMatrix | None = None

    def __bool__(self):
        return self.similar


def similar(M, N, *, seed: int = 0) -> SimilarityResult:
    """Decide conjugacy over Q; on success g with g M g^-1 = N is attached."""
    A, B = as_rows(M), as_rows(N)
    n = len(A)
    if any(len(r) != n for r in A) or any(len(r) != len(B) for r in B):
        raise NotSquareError("similarity needs square matrices")
    if len(B) != n:
        return SimilarityResult(False)
    if invariant_factors(A) != invariant_factors(B):
        return SimilarityResult(False)
    # solve g A - B g = 0 for the n*n entries of g
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                row[i * n + k] += A[k][j]
                row[k * n + j] -= B[i][k]
            eqs.append(row)
    K = kernel_basis(eqs, n * n).basis
    rng = random.Random(seed)

    def candidates():
        yield from K
        for _ in range(200):
            coeffs = [rng.randint(-3, 3) for _ in K]
            yield [sum(c * k[t] for c, k in zip(coeffs, K)) for t in range(n * n)]

    for vec in candidates():
        g = [list(vec[i * n:(i + 1) * n]) for i in range(n)]
        if det(g) != 0:
            return SimilarityResult(True, RationalMatrix(g, ncols=n))
    raise RuntimeError("similar matrices but no invertible intertwiner found")  # pragma: no cover
