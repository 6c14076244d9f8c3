"""Complex tori T = C^n / Z^2n carrying a companion-matrix endomorphism.

H^1(T x T, Z) = Z^2n + Z^2n with coordinates (alpha, beta); pr1 and pr2
pick out the two halves.  The endomorphism phi acts on H_1 by the companion
matrix and on H^1 by its transpose.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import (
    IntegerLattice,
    RationalMatrix,
    Subspace,
    det,
    integer_kernel,
    inverse,
    matmul,
    rank,
    transpose,
)
from .poly import (
    GaloisCertificate,
    IntPolynomial,
    RootSystem,
    companion,
    galois_orbit_generators,
    isolate_roots,
)


class GroupModelError(ValueError):
    """No usable permutation group was supplied for the orbit analysis."""


@dataclass(frozen=True)
class TorusDatum:
    f: IntPolynomial
    phi: tuple  # integer companion matrix, acts on H_1
    roots: RootSystem

    @property
    def n(self) -> int:
        return self.f.degree // 2

    @property
    def phi_star(self) -> list[list[int]]:
        """Action on H^1."""
        return [list(r) for r in transpose(self.phi)]


def torus_from_polynomial(f, selection: Sequence[int] | None = None) -> TorusDatum:
    f = f if isinstance(f, IntPolynomial) else IntPolynomial.parse(f)
    rs = isolate_roots(f, selection)
    return TorusDatum(f, tuple(tuple(r) for r in companion(f)), rs)


@dataclass(frozen=True)
class ProductH1:
    """H^1(T x T) = Z^4n; first 2n coordinates come from pr1."""

    n: int

    @property
    def rank(self) -> int:
        return 4 * self.n

    def restriction_maps(self, phi_star: Sequence[Sequence[int]]) -> dict[str, list[list[int]]]:
        """Restrictions H^1(T x T) -> H^1(T) to T x 0, 0 x T, diagonal, graph."""
        m = 2 * self.n
        I = [[int(i == j) for j in range(m)] for i in range(m)]
        Z = [[0] * m for _ in range(m)]
        ps = [list(r) for r in phi_star]
        return {
            "T x 0": [I[i] + Z[i] for i in range(m)],
            "0 x T": [Z[i] + I[i] for i in range(m)],
            "diagonal": [I[i] + I[i] for i in range(m)],
            "graph": [I[i] + ps[i] for i in range(m)],
        }


SUBTORI = ("T x 0", "0 x T", "diagonal", "graph")


def kernel_sublattices(t: TorusDatum) -> dict[str, IntegerLattice]:
    """Kernels of the four restriction maps, as primitive lattices in Z^4n."""
    maps = ProductH1(t.n).restriction_maps(t.phi_star)
    return {name: integer_kernel(M, 4 * t.n) for name, M in maps.items()}


# ---------------------------------------------------------------------------
# Neron-Severi orbit analysis


@dataclass(frozen=True)
class NSOrbitReport:
    labels: tuple  # (i, j) meaning {sel_i, conj(sel_j)}
    stable_subset: tuple
    ns_rank_bound: int
    orbit_count: int
    products_distinct: bool | None
    min_product_gap: float | None

    def as_dict(self) -> dict:
        return {
            "labels": [list(l) for l in self.labels],
            "stable_subset": [list(l) for l in self.stable_subset],
            "ns_rank_bound": self.ns_rank_bound,
            "orbit_count": self.orbit_count,
            "products_distinct": self.products_distinct,
            "min_product_gap": self.min_product_gap,
        }


def _orbits_on_pairs(m: int, gens: Sequence[Sequence[int]]) -> list[frozenset]:
    seen: set = set()
    orbits = []
    for a in range(m):
        for b in range(a + 1, m):
            start = frozenset((a, b))
            if start in seen:
                continue
            orbit = {start}
            queue = deque([start])
            while queue:
                pair = queue.popleft()
                for g in gens:
                    img = frozenset(g[v] for v in pair)
                    if img not in orbit:
                        orbit.add(img)
                        queue.append(img)
            seen |= orbit
            orbits.append(frozenset(orbit))
    return orbits


def ns_orbit_analysis(t: TorusDatum, group: GaloisCertificate | Sequence[Sequence[int]]) -> NSOrbitReport:
    """Largest Galois-stable set of (1,1) product labels.

    A rational (1,1) class in H^2(T) = wedge^2 H^1 has coordinates supported
    on a Galois-stable set of labels {lambda_i, conj(lambda_j)} with both
    roots among the selected ones, so the size of that set bounds rho(T).
    """
    m = t.f.degree
    if isinstance(group, GaloisCertificate):
        if not group.certified:
            raise GroupModelError(f"Galois group not certified ({group.verdict})")
        gens = galois_orbit_generators(m)
    else:
        gens = [tuple(g) for g in group]
        if not gens:
            raise GroupModelError("empty generator list")
        for g in gens:
            if sorted(g) != list(range(m)):
                raise GroupModelError(f"{g} is not a permutation of the {m} root labels")
    rs = t.roots
    sel = rs.selection
    label_of = {}
    for i, a in enumerate(sel):
        for j, b in enumerate(sel):
            label_of[frozenset((a, rs.conjugate(b)))] = (i, j)
    orbits = _orbits_on_pairs(m, gens)
    stable = []
    for orb in orbits:
        if all(p in label_of for p in orb):
            stable += [label_of[p] for p in orb]
    stable.sort()

    vals = rs.selected_values()
    prods = [vals[i] * vals[j].conjugate() for i in range(len(vals)) for j in range(len(vals))]
    gap = None
    distinct = None
    if len(prods) > 1:
        gap = min(abs(p - q) for k, p in enumerate(prods) for q in prods[:k])
        radius = max(r.radius for r in rs.roots) * 4 * max(abs(v) for v in vals) + 1e-12
        distinct = gap > radius
    return NSOrbitReport(
        labels=tuple(sorted(label_of.values())),
        stable_subset=tuple(stable),
        ns_rank_bound=len(stable),
        orbit_count=len(orbits),
        products_distinct=distinct,
        min_product_gap=gap,
    )


def permutations_from_root_map(rs: RootSystem, maps) -> list[tuple]:
    """Turn callables z -> sigma(z) on root values into label permutations."""
    centers = [r.center for r in rs.roots]
    out = []
    for sigma in maps:
        perm = []
        for z in centers:
            w = sigma(z)
            k = min(range(len(centers)), key=lambda i: abs(centers[i] - w))
            if abs(centers[k] - w) > 1e-8:
                raise GroupModelError("map does not permute the roots")
            perm.append(k)
        if sorted(perm) != list(range(len(centers))):
            raise GroupModelError("map is not a bijection on the roots")
        out.append(tuple(perm))
    return out


# ---------------------------------------------------------------------------
# decomposition and recovery


@dataclass
class DecompositionReport:
    direct_sum: bool
    l3_graph: bool
    l4_graph: bool
    l4_projects_onto_l1: bool
    l4_injects_into_l2: bool
    pairwise_intersections: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.direct_sum and self.l3_graph and self.l4_graph

    def as_dict(self) -> dict:
        return {
            "direct_sum": self.direct_sum,
            "l3_graph": self.l3_graph,
            "l4_graph": self.l4_graph,
            "l4_projects_onto_l1": self.l4_projects_onto_l1,
            "l4_injects_into_l2": self.l4_injects_into_l2,
            "pairwise_intersections": self.pairwise_intersections,
            "passed": self.passed,
        }


def _coords(L1: IntegerLattice, L2: IntegerLattice, L: IntegerLattice):
    """Coordinates of L's basis in the basis (L1, L2); split into the two halves."""
    B = [list(r) for r in L1.basis] + [list(r) for r in L2.basis]
    Binv = inverse(B)
    C = matmul([list(r) for r in L.basis], Binv)
    k = L1.rank
    return [r[:k] for r in C], [r[k:] for r in C]


def verify_torus_decomposition(L1, L2, L3, L4) -> DecompositionReport:
    """L1 + L2 = ambient over Z; L3 and L4 are graphs of maps L1 -> L2.

    L3 must project isomorphically onto both summands.  L4 must project
    isomorphically onto L1 and injectively onto L2 (it is the graph of phi*,
    which need not be invertible over Z).
    """
    ls = [L1, L2, L3, L4]
    amb = L1.ambient_rank
    inter = {}
    for a in range(4):
        for b in range(a + 1, 4):
            S = IntegerLattice.from_generators(list(ls[a].basis) + list(ls[b].basis), amb)
            inter[f"L{a + 1}&L{b + 1}"] = ls[a].rank + ls[b].rank - S.rank
    if L1.rank + L2.rank != amb or L1.rank == 0:
        return DecompositionReport(False, False, False, False, False, inter)
    B = [list(r) for r in L1.basis] + [list(r) for r in L2.basis]
    direct = abs(det(B)) == 1
    if not direct:
        return DecompositionReport(False, False, False, False, False, inter)

    def onto(C):
        return len(C) == len(C[0]) and abs(det(C)) == 1 if C and C[0] else False

    def injective(C, r):
        return rank(C) == r if C else r == 0

    l3 = False
    if L3.rank == L1.rank:
        C1, C2 = _coords(L1, L2, L3)
        l3 = onto(C1) and onto(C2)
    l4_onto = l4_inj = False
    if L4.rank == L1.rank:
        C1, C2 = _coords(L1, L2, L4)
        l4_onto = onto(C1)
        l4_inj = injective(C2, L4.rank)
    return DecompositionReport(direct, l3, l4_onto and l4_inj, l4_onto, l4_inj, inter)


def recover_endomorphism(L1, L2, L3, L4) -> RationalMatrix:
    """Read off psi on L1 from the two graphs L3 and L4.

    L3 identifies L1 with L2; L4 is the graph of psi composed with that
    identification.  The matrix is written in the Hermite basis of L1 and acts
    on column vectors.
    """
    rep = verify_torus_decomposition(L1, L2, L3, L4)
    if not rep.direct_sum or not rep.l3_graph or not rep.l4_projects_onto_l1:
        raise ValueError(f"not a graph configuration: {rep.as_dict()}")
    D1, D2 = _coords(L1, L2, L3)
    G3 = matmul(inverse(D1), D2)
    C1, C2 = _coords(L1, L2, L4)
    G4 = matmul(inverse(C1), C2)
    rows = matmul(G4, inverse(G3))
    return RationalMatrix(transpose(rows))


# ---------------------------------------------------------------------------
# Hodge compatibility


@dataclass(frozen=True)
class HodgeCheck:
    compatible: bool | None
    method: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"compatible": self.compatible, "method": self.method, "detail": self.detail}


def _ambient_action(t: TorusDatum, ambient_rank: int) -> list[list[int]]:
    ps = t.phi_star
    m = len(ps)
    if ambient_rank == m:
        return ps
    if ambient_rank == 2 * m:
        out = [[0] * (2 * m) for _ in range(2 * m)]
        for i in range(m):
            for j in range(m):
                out[i][j] = ps[i][j]
                out[m + i][m + j] = ps[i][j]
        return out
    raise ValueError(f"ambient rank {ambient_rank} is neither 2n nor 4n")


def _h10_basis(t: TorusDatum, ambient_rank: int) -> np.ndarray:
    ps = np.array(t.phi_star, dtype=float)
    w, V = np.linalg.eig(ps)
    targets = [z.conjugate() for z in t.roots.selected_values()]
    cols = []
    for z in targets:
        k = int(np.argmin(np.abs(w - z)))
        cols.append(V[:, k])
    H = np.array(cols).T  # m x n
    m = ps.shape[0]
    if ambient_rank == m:
        return H
    Z = np.zeros_like(H)
    return np.block([[H, Z], [Z, H]])


def hodge_compatibility(L: IntegerLattice | Subspace, t: TorusDatum, tol: float = 1e-10) -> HodgeCheck:
    """Is L_C = (L_C ∩ H^{1,0}) + (L_C ∩ H^{0,1})?

    Sublattices stable under phi* are sub-Hodge structures because phi is
    holomorphic; that case is decided exactly.  Otherwise the intersection
    with the eigenvector description of H^{1,0} is measured numerically.
    """
    basis = [list(b) for b in L.basis]
    amb = L.ambient_rank if isinstance(L, IntegerLattice) else L.ambient_dim
    if not basis:
        return HodgeCheck(True, "exact", "zero lattice")
    A = _ambient_action(t, amb)
    span = Subspace.span(basis, amb)
    images = [[sum(A[i][j] * v[j] for j in range(amb)) for i in range(amb)] for v in basis]
    if all(w in span for w in images):
        return HodgeCheck(True, "exact", "phi*-stable")
    r = len(basis)
    if r % 2:
        return HodgeCheck(False, "exact", "odd rank")
    Lm = np.array([[float(x) for x in v] for v in basis]).T
    H = _h10_basis(t, amb)
    s_L = np.linalg.svd(Lm, compute_uv=False)
    s_H = np.linalg.svd(H, compute_uv=False)
    s = np.linalg.svd(np.hstack([Lm / s_L.max(), H / s_H.max()]), compute_uv=False)
    big = s[s >= tol]
    if big.size and big.min() < 1e3 * tol:
        return HodgeCheck(None, "numeric", f"singular-value margin too small ({big.min():.2e})")
    inter = Lm.shape[1] + H.shape[1] - big.size
    return HodgeCheck(inter == r // 2, "numeric", f"dim L ∩ H^(1,0) = {inter}, rank L = {r}")
