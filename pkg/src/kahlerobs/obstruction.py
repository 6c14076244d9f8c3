"""Cohomological obstructions: cup-product kernels, the Albanese subring,
Gysin adjoints, the subspaces P and P0, the non-injectivity locus and the
quadratic forms q_c."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Mapping, Sequence

from .algebra import AlgebraMorphism, Element, ExteriorAlgebra, GradedAlgebra, add_into, exterior_pullback
from .linalg import Subspace, intersect, kernel_basis, rank, subspace_sum


def multiplication_matrix(A: GradedAlgebra, alpha: Mapping, source_degree: int) -> list[list[Fraction]]:
    """Columns: alpha · b for b in A.basis(source_degree)."""
    src = A.basis(source_degree)
    prods = [A.mul(alpha, {b: Fraction(1)}) for b in src]
    degs = {A.degree(i) for p in prods for i in p}
    rows = sorted({i for p in prods for i in p})
    if len(degs) > 1:
        raise ValueError("alpha must be homogeneous")
    return [[p.get(r, Fraction(0)) for p in prods] for r in rows]


def cup_kernel(A: GradedAlgebra, alpha: Mapping, source_degree: int = 1) -> Subspace:
    """Ker(∪ alpha) on A^source_degree, coordinates in A.basis(source_degree)."""
    n = len(A.basis(source_degree))
    M = multiplication_matrix(A, alpha, source_degree)
    return kernel_basis(M, n) if M else Subspace.full(n)


def cup_image(A: GradedAlgebra, alpha: Mapping, source_degree: int = 1) -> list[Element]:
    return [A.mul(alpha, {b: Fraction(1)}) for b in A.basis(source_degree)]


# ---------------------------------------------------------------------------


@dataclass
class AlbaneseCheck:
    b1: int
    top_degree: int
    top_integral: Fraction | None
    rational_iso: bool
    integral_iso: bool

    def as_dict(self) -> dict:
        return {
            "b1": self.b1,
            "top_degree": self.top_degree,
            "top_integral": None if self.top_integral is None else str(self.top_integral),
            "rational_iso_in_top_degree": self.rational_iso,
            "integral_iso_in_top_degree": self.integral_iso,
        }


def exterior_subring_map(A: GradedAlgebra) -> tuple[AlgebraMorphism, AlbaneseCheck]:
    """∧*H^1(A) -> A.  When b1 equals the top degree, the image of the top
    wedge is checked to integrate to ±1 (iso over Z in top degree)."""
    b1 = A.basis(1)
    E = ExteriorAlgebra(len(b1), name="∧*H^1")
    m = exterior_pullback(E, A, [{i: Fraction(1)} for i in b1], "alb*")
    if len(b1) != A.top_degree:
        return m, AlbaneseCheck(len(b1), A.top_degree, None, False, False)
    top = A.integrate(m.image(E.dim - 1))
    return m, AlbaneseCheck(len(b1), A.top_degree, top, top != 0, abs(top) == 1)


def gysin_adjoint(m: AlgebraMorphism, degree: int) -> list[list[Fraction]]:
    """Matrix of m_*: B^degree -> A^(degree - topB + topA), the adjoint of
    m: A -> B for the two integration pairings.  Rows index the target basis."""
    A, B = m.source, m.target
    shift = B.top_degree - A.top_degree
    dA = degree - shift
    duals = A.dual_basis(dA)
    cols = B.basis(degree)
    rows = A.basis(dA)
    out = [[Fraction(0)] * len(cols) for _ in rows]
    pos = {r: k for k, r in enumerate(rows)}
    for f in A.basis(A.top_degree - dA):
        mf = m.image(f)
        if not mf:
            continue
        for j, b in enumerate(cols):
            c = B.integrate(B.mul({b: Fraction(1)}, mf))
            if c:
                for r, v in duals[f].items():
                    out[pos[r]][j] += c * v
    return out


# ---------------------------------------------------------------------------


@dataclass
class ObstructionSubspaces:
    P: Subspace
    P0: Subspace
    ambient: list  # A.basis(2)

    def as_dict(self) -> dict:
        return {"dim_H2": len(self.ambient), "dim_P": self.P.dim, "dim_P0": self.P0.dim}


def annihilator_in_degree(A: GradedAlgebra, d: int, others: Sequence[Element]) -> Subspace:
    """{x in A^d : x · w = 0 for all w in ``others``}."""
    src = A.basis(d)
    rows: dict = {}
    for k, b in enumerate(src):
        for t, w in enumerate(others):
            for i, c in A.mul({b: Fraction(1)}, w).items():
                rows.setdefault((t, i), [Fraction(0)] * len(src))[k] += c
    return kernel_basis(list(rows.values()), len(src)) if rows else Subspace.full(len(src))


def wedge_image(A: GradedAlgebra, k: int) -> list[Element]:
    """Images of all k-fold products of degree-1 basis classes."""
    b1 = A.basis(1)
    out = []
    for S in combinations(b1, k):
        out.append(A.product(*({i: Fraction(1)} for i in S)))
    return [x for x in out if x]


def obstruction_subspaces(A: GradedAlgebra, generators: Sequence[Element] | None = None) -> ObstructionSubspaces:
    """P = annihilator in H^2 of ∧^(b1-2) H^1 (or of the supplied classes),
    P0 = {x in P : x ∪ H^1 = 0}."""
    b1 = len(A.basis(1))
    gens = list(generators) if generators is not None else wedge_image(A, b1 - 2)
    P = annihilator_in_degree(A, 2, gens)
    h1 = [{i: Fraction(1)} for i in A.basis(1)]
    Z = annihilator_in_degree(A, 2, h1)
    return ObstructionSubspaces(P, intersect(P, Z), A.basis(2))


def orthogonal_complement(A: GradedAlgebra, d: int, vectors: Sequence[Element]) -> Subspace:
    """{x in A^d : ∫ x y = 0 for y in ``vectors``}."""
    src = A.basis(d)
    M = [[A.integrate(A.mul({b: Fraction(1)}, y)) for b in src] for y in vectors]
    return kernel_basis(M, len(src)) if M else Subspace.full(len(src))


# ---------------------------------------------------------------------------


@dataclass
class Component:
    labels: tuple
    dim: int
    kernel: Subspace
    group: str = ""

    def as_dict(self) -> dict:
        return {"labels": list(self.labels), "dim": self.dim, "kernel_dim": self.kernel.dim, "group": self.group}


@dataclass
class LocusReport:
    components: list
    pairwise_trivial: bool
    images_independent: bool | None = None
    notes: list = field(default_factory=list)

    def dims(self) -> list[int]:
        return sorted(c.dim for c in self.components)

    def as_dict(self) -> dict:
        return {
            "components": [c.as_dict() for c in self.components],
            "dims": self.dims(),
            "pairwise_trivial": self.pairwise_trivial,
            "images_independent": self.images_independent,
            "notes": list(self.notes),
        }


def noninjective_locus_components(
    classes: Sequence[tuple[str, Subspace]], groups: Sequence[str] | None = None
) -> LocusReport:
    """Irreducible components of {a : ∪a not injective} inside span(classes).

    For a = Σ a_i c_i with the images c_i ∪ H independent, Ker(∪a) is the
    intersection of the Ker(∪c_i) over the support of a.  When distinct
    kernels meet trivially, the locus is the union of the coordinate
    subspaces spanned by classes sharing one nonzero kernel.
    """
    groups = list(groups) if groups is not None else [lab for lab, _ in classes]
    buckets: list[tuple[Subspace, list[str], str]] = []
    for (lab, K), g in zip(classes, groups):
        if K.is_zero():
            continue
        for b in buckets:
            if b[0] == K:
                b[1].append(lab)
                break
        else:
            buckets.append((K, [lab], g))
    trivial = True
    for a in range(len(buckets)):
        for b in range(a + 1, len(buckets)):
            if not intersect(buckets[a][0], buckets[b][0]).is_zero():
                trivial = False
    comps = [Component(tuple(l), len(l), K, g) for K, l, g in buckets]
    return LocusReport(comps, trivial)


def brute_force_components(classes: Sequence[tuple[str, Subspace]]) -> list[tuple]:
    """Maximal supports with a nonzero common kernel (exponential; test oracle)."""
    n = len(classes)
    good = []
    for mask in range(1, 1 << n):
        K = None
        for i in range(n):
            if mask >> i & 1:
                K = classes[i][1] if K is None else intersect(K, classes[i][1])
        if K is not None and not K.is_zero():
            good.append(mask)
    maximal = [m for m in good if not any(o != m and (o & m) == m for o in good)]
    return sorted(tuple(classes[i][0] for i in range(n) if m >> i & 1) for m in maximal)


def images_independent(A: GradedAlgebra, classes: Sequence[Element], source_degree: int = 1) -> bool:
    """Is Σ_i (c_i ∪ A^k) a direct sum?"""
    total = 0
    vecs = []
    for c in classes:
        img = cup_image(A, c, source_degree)
        total += rank_of_elements(A, img)
        vecs += img
    return rank_of_elements(A, vecs) == total


def rank_of_elements(A: GradedAlgebra, xs: Sequence[Element]) -> int:
    """Rank of a family of classes; vectors with disjoint supports are split
    into independent blocks first."""
    xs = [x for x in xs if x]
    parent: dict = {}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x in xs:
        keys = iter(x)
        first = next(keys)
        parent.setdefault(first, first)
        r = find(first)
        for k in keys:
            parent.setdefault(k, k)
            rk = find(k)
            if rk != r:
                parent[rk] = r
    blocks: dict = {}
    for x in xs:
        blocks.setdefault(find(next(iter(x))), []).append(x)
    total = 0
    for group in blocks.values():
        idx = sorted({i for x in group for i in x})
        total += rank([[x.get(i, Fraction(0)) for i in idx] for x in group])
    return total


def decomposable_span(A: GradedAlgebra, vectors: Sequence[Element]) -> Subspace:
    """Span of the basis vectors whose square vanishes, in coordinates of
    ``vectors``; for a block in which every basis element squares to zero this
    is the whole block."""
    keep = []
    for k, v in enumerate(vectors):
        if not A.mul(v, v):
            e = [Fraction(0)] * len(vectors)
            e[k] = Fraction(1)
            keep.append(e)
    return Subspace.span(keep, len(vectors))


# ---------------------------------------------------------------------------


def q_value(A: GradedAlgebra, c: Mapping, alpha: Mapping, beta: Mapping) -> Fraction:
    """∫ c^(d-2) α β, d the complex dimension; multiplied left to right from αβ."""
    d = A.top_degree // 2
    x = A.mul(alpha, beta)
    for _ in range(d - 2):
        if not x:
            return Fraction(0)
        x = A.mul(x, c)
    return A.integrate(x)


def q_form(A: GradedAlgebra, c: Mapping, basis: Sequence[Element]) -> list[list[Fraction]]:
    n = len(basis)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = q_value(A, c, basis[i], basis[j])
    return G


@dataclass
class IsotropyReport:
    rank: int
    positive: int
    negative: int
    zero: int
    witness: list | None
    totally_isotropic_dim: int
    contradicts_one_positive_sign: bool

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "signature": [self.positive, self.negative],
            "nullity": self.zero,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "totally_isotropic_dim": self.totally_isotropic_dim,
            "contradicts_one_positive_sign": self.contradicts_one_positive_sign,
        }


def inertia(G: Sequence[Sequence]) -> tuple[int, int, int]:
    """(n+, n-, n0) of a rational symmetric matrix by exact congruence."""
    M = [[Fraction(x) for x in r] for r in G]
    n = len(M)
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if M[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active if i < j and M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace row/col i by i + j; the new diagonal is 2 M[i][j] != 0
            for k in range(n):
                M[i][k] += M[j][k]
            for k in range(n):
                M[k][i] += M[k][j]
            p = i
        piv = M[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        for i in active:
            f = M[i][p] / piv
            if f:
                for k in active:
                    M[i][k] -= f * M[p][k]
        for i in active:
            M[i][p] = M[p][i] = Fraction(0)
    return pos, neg, n - pos - neg


def _isotropic_vector(G) -> list | None:
    n = len(G)
    for i in range(n):
        if G[i][i] == 0:
            return [Fraction(int(k == i)) for k in range(n)]
    # a + t b with q(a) q(b) < 0 and t rational: solve q(a) + 2t B(a,b) + t^2 q(b) = 0
    for i in range(n):
        for j in range(i + 1, n):
            qa, qb, bab = Fraction(G[i][i]), Fraction(G[j][j]), Fraction(G[i][j])
            disc = bab * bab - qa * qb
            if disc < 0:
                continue
            num, den = disc.numerator, disc.denominator
            rn, rd = isqrt(num), isqrt(den)
            if rn * rn == num and rd * rd == den:
                t = (-bab + Fraction(rn, rd)) / qb
                return [Fraction(1) if k == i else (t if k == j else Fraction(0)) for k in range(n)]
    return None


def isotropy_report(G: Sequence[Sequence], V: Sequence[Sequence] | None = None) -> IsotropyReport:
    """Signature of G; with V, whether G vanishes identically on span(V).

    A totally isotropic subspace of dimension >= 2 is incompatible with a
    form having a single positive sign on the relevant real subspace."""
    p, m, z = inertia(G)
    if V is not None:
        from .linalg import rank as _rank

        dimV = _rank(V) if V else 0
        GV = restricted_gram(G, V) if V else []
        tot = dimV if all(x == 0 for r in GV for x in r) else 0
        witness = list(V[0]) if tot else _isotropic_vector(G)
    else:
        tot = len(G) if all(x == 0 for r in G for x in r) else 0
        witness = _isotropic_vector(G)
    return IsotropyReport(p + m, p, m, z, witness, tot, tot >= 2)


def restricted_gram(G: Sequence[Sequence], V: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gram matrix of the form G on the span of the coordinate vectors V."""
    n = len(G)
    GV = [[sum(Fraction(G[i][k]) * v[k] for k in range(n)) for i in range(n)] for v in V]
    return [[sum(Fraction(u[i]) * gv[i] for i in range(n)) for gv in GV] for u in V]


def span_sum(spaces: Sequence[Subspace]) -> Subspace:
    out = spaces[0]
    for s in spaces[1:]:
        out = subspace_sum(out, s)
    return out


def element_coordinates(A: GradedAlgebra, xs: Sequence[Element], d: int) -> list[list[Fraction]]:
    return [A.coordinates(x, d) for x in xs]


def sum_elements(xs: Sequence[Element]) -> Element:
    acc: Element = {}
    for x in xs:
        add_into(acc, x)
    return acc


def cup_kernel_on(A: GradedAlgebra, c: Mapping, vectors: Sequence[Element]) -> Subspace:
    """Kernel of v -> c·v on span(vectors), in coordinates of ``vectors``."""
    prods = [A.mul(c, v) for v in vectors]
    idx = sorted({i for p in prods for i in p})
    M = [[p.get(i, Fraction(0)) for p in prods] for i in idx]
    return kernel_basis(M, len(vectors)) if M else Subspace.full(len(vectors))
