"""Cohomology models of the blow-ups X, X1, X x F, the Kummer variety K and X2.

Every model is an iterated :class:`BlowupAlgebra`; the first ``root.dim``
indices are the classes pulled back from the (product of) tori.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra import (
    AlgebraError,
    AlgebraMorphism,
    Element,
    EvenExteriorAlgebra,
    ExteriorAlgebra,
    GradedAlgebra,
    TensorAlgebra,
    TruncatedPolynomialAlgebra,
    add_into,
    linear_exterior_pullback,
    point_algebra,
    scale,
)
from .blowup import BlowupAlgebra, BlowupCenter
from .linalg import inverse
from .poly import intersection_counts
from .torus import SUBTORI, ProductH1, TorusDatum


@dataclass
class CenterInfo:
    label: str
    kind: str  # "point", "subtorus", "section", "diagonal", "graph"
    stage: BlowupAlgebra
    group: str  # subtorus/locus the class belongs to

    @property
    def divisor_index(self) -> int:
        return next(iter(self.stage.exceptional_divisor()))


@dataclass
class Model:
    name: str
    algebra: GradedAlgebra
    centers: list[CenterInfo]
    meta: dict = field(default_factory=dict)

    def center(self, label: str) -> CenterInfo:
        for c in self.centers:
            if c.label == label:
                return c
        raise KeyError(label)

    def divisor(self, label: str) -> Element:
        return {self.center(label).divisor_index: Fraction(1)}

    def betti(self) -> list[int]:
        return self.algebra.betti()


def _degree0(Y: GradedAlgebra, P: GradedAlgebra) -> AlgebraMorphism:
    """Restriction to a point: keep the constant term."""
    return AlgebraMorphism(Y, P, lambda i: {P.unit: Fraction(1)} if i == Y.unit else {})


def _restriction(Y: GradedAlgebra, Z: GradedAlgebra, root_map: AlgebraMorphism, extra: dict | None = None):
    """Restriction Y -> Z equal to root_map on root classes, ``extra`` on listed
    exceptional classes and zero on the others (disjoint loci)."""
    nroot = root_map.source.dim
    extra = extra or {}

    def on_basis(i):
        if i < nroot:
            return root_map.image(i)
        f = extra.get(i)
        if f is None:
            return {}
        return f() if callable(f) else f

    return AlgebraMorphism(Y, Z, on_basis)


def _exc_power_indices(stage: BlowupAlgebra) -> dict[int, int]:
    """index of E^k = j_*(ξ^(k-1)) for a point center, keyed by k."""
    u = stage.center.algebra.unit
    return {k: stage.exc_index[(u, k)] for k in range(1, stage.r)}


# ---------------------------------------------------------------------------
# X = Bl(T x T) along T x 0, 0 x T, diagonal, graph


@dataclass
class PointInfo:
    label: str
    on: tuple  # subtori containing the point


def incidence_points(t: TorusDatum) -> list[PointInfo]:
    """Pairwise intersections of the four subtori (all transverse points)."""
    ic = intersection_counts(t.phi)
    pts = [PointInfo("x1", SUBTORI)]
    pts += [PointInfo(f"x{k}", ("diagonal", "graph")) for k in range(2, ic.N + 1)]
    pts += [PointInfo(f"y{k}", ("T x 0", "graph")) for k in range(1, ic.det_phi)]
    return pts


def subtorus_restrictions(t: TorusDatum, A: ExteriorAlgebra, T: ExteriorAlgebra | None = None):
    maps = ProductH1(t.n).restriction_maps(t.phi_star)
    out = {}
    for name in SUBTORI:
        Z = T if T is not None else ExteriorAlgebra(2 * t.n, name=f"H*({name})")
        out[name] = linear_exterior_pullback(A, Z, maps[name], name=f"ρ[{name}]")
    return out


def _blown_up_torus(n: int, points: Sequence[str], name: str):
    """Bl_points(T) for a 2n-real-dimensional torus; returns (algebra, {label: stage})."""
    Z: GradedAlgebra = ExteriorAlgebra(2 * n, name=name)
    root = Z
    stages = {}
    P = point_algebra()
    for p in points:
        R = _restriction(Z, P, _degree0(root, P))
        Z = BlowupAlgebra(Z, BlowupCenter(P, R, n, (), p), name=f"{name}~")
        stages[p] = Z
    return Z, root, stages


def build_x_model(t: TorusDatum, level: int = 1, extra_sections: Sequence[int] | None = None) -> Model:
    """Cohomology of X (and X1 when ``extra_sections`` gives multiplicities).

    level 1 treats the four subtori as disjoint with trivial normal bundles;
    the algebra is exact in degrees <= 3 and for all products with at most one
    exceptional factor.  level 2 first blows up the intersection points and
    then the proper transforms, which is the honest iterated construction.
    """
    if level not in (1, 2):
        raise ValueError("level must be 1 or 2")
    n = t.n
    A = ExteriorAlgebra(4 * n, name="H*(T x T)")
    centers: list[CenterInfo] = []
    Y: GradedAlgebra = A
    pts = incidence_points(t) if level == 2 else []
    point_stage: dict[str, BlowupAlgebra] = {}
    P = point_algebra()
    for p in pts:
        R = _restriction(Y, P, _degree0(A, P))
        Y = BlowupAlgebra(Y, BlowupCenter(P, R, 2 * n, (), p.label), name="X")
        point_stage[p.label] = Y
        centers.append(CenterInfo(p.label, "point", Y, "points"))

    # H*(Z~_c) for each subtorus
    tilde: dict[str, tuple] = {}
    for name in SUBTORI:
        on = [p.label for p in pts if name in p.on]
        Zc, Troot, zstages = _blown_up_torus(n, on, f"H*({name}~)")
        tilde[name] = (Zc, Troot, zstages)
    rho = {name: linear_exterior_pullback(A, tilde[name][1], ProductH1(n).restriction_maps(t.phi_star)[name], f"ρ[{name}]") for name in SUBTORI}

    def restriction_to(name: str, Ycur: GradedAlgebra, section_xi: Element | None = None):
        Zc, _, zstages = tilde[name]
        extra = {}
        for p in pts:
            st = point_stage[p.label]
            for k, idx in _exc_power_indices(st).items():
                if name in p.on:
                    e = zstages[p.label].exceptional_divisor()
                    extra[idx] = (lambda e=e, k=k, Zc=Zc: Zc.power(e, k))
        if section_xi is not None:
            st = centers_by_label[name].stage
            for (z, k), idx in st.exc_index.items():
                extra[idx] = (lambda z=z, k=k: Zc.mul({z: Fraction(1)}, Zc.power(section_xi, k)))
        return _restriction(Ycur, Zc, rho[name], extra)

    def exc_sum(name: str) -> Element:
        Zc, _, zstages = tilde[name]
        acc: Element = {}
        for st in zstages.values():
            add_into(acc, st.exceptional_divisor())
        return acc

    centers_by_label: dict[str, CenterInfo] = {}
    for name in SUBTORI:
        Zc = tilde[name][0]
        e = exc_sum(name)
        chern = [scale(Zc.power(e, i), comb(n, i) * (-1) ** i) for i in range(1, n + 1)]
        R = restriction_to(name, Y)
        Y = BlowupAlgebra(Y, BlowupCenter(Zc, R, n, chern, name), name="X")
        info = CenterInfo(name, "subtorus", Y, name)
        centers.append(info)
        centers_by_label[name] = info

    meta = {"level": level, "n": n, "points": [p.label for p in pts]}
    if extra_sections:
        if len(extra_sections) != 4:
            raise ValueError("need one multiplicity per subtorus")
        for name, mult in zip(SUBTORI, extra_sections):
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            Zc = tilde[name][0]
            e = exc_sum(name)
            xi = scale(e, -1)  # O(-1) restricted to a constant section
            chern = [scale(xi, 1)] + [{} for _ in range(n - 1)] if n >= 1 else []
            for s in range(2, mult + 1):
                R = restriction_to(name, Y, section_xi=xi)
                lab = f"{name} section {s}"
                Y = BlowupAlgebra(Y, BlowupCenter(Zc, R, n, chern, lab), name="X1")
                centers.append(CenterInfo(lab, "section", Y, name))
        meta["multiplicities"] = list(extra_sections)
    return Model("X1" if extra_sections else "X", Y, centers, meta)


def x_expected_b2(n: int, level: int, t: TorusDatum | None = None, sections: Sequence[int] | None = None) -> int:
    """Betti number b2 from the blow-up formula (independent of the ring code)."""
    b = comb(4 * n, 2) + 4
    if level == 2 and t is not None:
        ic = intersection_counts(t.phi)
        b += 1 + (ic.N - 1) + (ic.det_phi - 1)
    if sections:
        b += sum(m - 1 for m in sections)
    return b


def x_betti_formula(t: TorusDatum, level: int, sections: Sequence[int] | None = None) -> list[int]:
    """All Betti numbers via b_k(Bl_Z Y) = b_k(Y) + Σ_{k'=1}^{r-1} b_{k-2k'}(Z)."""
    n = t.n
    d = 8 * n
    b = [comb(4 * n, k) for k in range(4 * n + 1)]
    b = b + [0] * (d + 1 - len(b))
    npts = len(incidence_points(t)) if level == 2 else 0

    def add_center(bz: list[int], r: int):
        for k in range(len(b)):
            for kk in range(1, r):
                j = k - 2 * kk
                if 0 <= j < len(bz):
                    b[k] += bz[j]

    for _ in range(npts):
        add_center([1], 2 * n)
    for name in SUBTORI:
        bz = [comb(2 * n, k) for k in range(2 * n + 1)]
        if level == 2:
            m = sum(1 for p in incidence_points(t) if name in p.on)
            for _ in range(m):
                for kk in range(1, n):
                    bz[2 * kk] += 1
        add_center(bz, n)
        for _ in range((sections[SUBTORI.index(name)] - 1) if sections else 0):
            add_center(bz, n)
    return b[: 4 * n + 1]


# ---------------------------------------------------------------------------
# products with a curve or projective space


def product_model(model: Model, factor: GradedAlgebra, name: str | None = None) -> Model:
    """X x F; center records keep their divisor classes E ⊗ 1."""
    TA = TensorAlgebra(model.algebra, factor, name=name or f"{model.name} x {factor.name}")
    m = Model(name or f"{model.name} x F", TA, model.centers, dict(model.meta, factor=factor.name))
    return m


def elliptic_curve() -> ExteriorAlgebra:
    return ExteriorAlgebra(2, name="H*(F)")


def projective_space(k: int) -> TruncatedPolynomialAlgebra:
    return TruncatedPolynomialAlgebra(k)


# ---------------------------------------------------------------------------
# Kummer variety


class KummerAlgebra(GradedAlgebra):
    """H*(K) for K = Bl_{T[2]}(T)/±1, T of complex dimension n >= 2.

    Even classes of ∧*H^1(T) with ∫ vol = 1/2, plus e_x^k (k < n) for the
    2^(2n) exceptional divisors E_x ≅ P^(n-1) with normal bundle O(-2).
    """

    def __init__(self, n: int):
        super().__init__()
        if n < 2:
            raise AlgebraError("Kummer model needs n >= 2")
        self.n = n
        self.even = EvenExteriorAlgebra(2 * n, volume=Fraction(1, 2))
        self.ne = self.even.dim
        self.npoints = 1 << (2 * n)
        self.dim = self.ne + self.npoints * (n - 1)
        self.top_degree = 2 * n
        self.unit = 0
        self.vol = self.even.index[(1 << (2 * n)) - 1]
        self.self_power = Fraction((-1) ** (n - 1) * 2**n)  # e_x^n = self_power * vol
        self.name = f"H*(K{n})"

    def exc(self, x: int, k: int) -> int:
        return self.ne + x * (self.n - 1) + (k - 1)

    def exc_of(self, i: int) -> tuple[int, int]:
        q, r = divmod(i - self.ne, self.n - 1)
        return q, r + 1

    def degree(self, i):
        if i < self.ne:
            return self.even.degree(i)
        return 2 * self.exc_of(i)[1]

    def _mul_basis(self, i, j):
        if i < self.ne and j < self.ne:
            return self.even.mul_basis(i, j)
        if i < self.ne or j < self.ne:
            return {}  # positive-degree invariant class times exceptional class
        x, k = self.exc_of(i)
        y, l = self.exc_of(j)
        if x != y:
            return {}
        if k + l < self.n:
            return {self.exc(x, k + l): Fraction(1)}
        if k + l == self.n:
            return {self.vol: self.self_power}
        return {}

    def _integral_basis(self, i):
        return self.even._integral_basis(i) if i < self.ne else Fraction(0)

    def label(self, i):
        if i < self.ne:
            return self.even.label(i)
        x, k = self.exc_of(i)
        return f"e[{x}]" + (f"^{k}" if k > 1 else "")

    def point_class(self) -> Element:
        return {self.vol: Fraction(2)}

    def e(self, x: int, k: int = 1) -> Element:
        return {self.exc(x, k): Fraction(1)}

    def _compute_dual(self, d):
        out = {}
        full = (1 << (2 * self.n)) - 1
        from .algebra import _wedge_sign

        for f in self.basis(self.top_degree - d):
            if f < self.ne:
                s = self.even.masks[f]
                c = full ^ s
                out[f] = {self.even.index[c]: 1 / (Fraction(_wedge_sign(c, s)) * self.even.volume)}
            else:
                x, k = self.exc_of(f)
                out[f] = {self.exc(x, self.n - k): 1 / (self.self_power * self.even.volume)}
        return out

    def euler_characteristic(self) -> int:
        return 2 ** (2 * self.n - 1) + self.npoints * (self.n - 1)

    def chern_classes(self) -> list[Element]:
        """c_1..c_n of T_K; c_i (i < n) is supported on the exceptional divisors."""
        n = self.n
        # (1+H)^n (1-2H) restricted to E_x ≅ P^(n-1), H the hyperplane class
        coef = [comb(n, i) - 2 * (comb(n, i - 1) if i >= 1 else 0) for i in range(n + 1)]
        out = []
        for i in range(1, n):
            mu = Fraction(coef[i]) / Fraction(-2) ** i
            c: Element = {}
            for x in range(self.npoints):
                if mu:
                    c[self.exc(x, i)] = mu
            out.append(c)
        out.append(scale(self.point_class(), self.euler_characteristic()))
        return out

    def automorphism(self, phi: Sequence[Sequence[int]]) -> AlgebraMorphism:
        """φ_K^* for φ in GL_2n(Z) acting on H_1 (so by ᵗφ on H^1)."""
        m = 2 * self.n
        phi_inv = inverse(phi)
        if any(x.denominator != 1 for r in phi_inv for x in r):
            raise AlgebraError("φ is not invertible over Z")
        ext = ExteriorAlgebra(m)
        # column k of the H^1 action matrix is φ*(f_k) = Σ_j φ[k][j] f_j
        M = [[phi[k][j] for k in range(m)] for j in range(m)]
        lp = linear_exterior_pullback(ext, ext, M)

        def on_basis(i):
            if i < self.ne:
                img = lp.image(self.even.masks[i])
                return {self.even.index[s]: c for s, c in img.items()}
            x, k = self.exc_of(i)
            v = [(x >> b) & 1 for b in range(m)]
            w = [int(sum(phi_inv[a][b] * v[b] for b in range(m))) % 2 for a in range(m)]
            y = sum(bit << a for a, bit in enumerate(w))
            return {self.exc(y, k): Fraction(1)}

        return AlgebraMorphism(self, self, on_basis, "φ_K*")


def kummer_fixed_points(phi: Sequence[Sequence[int]], n: int) -> dict:
    """Fixed points of φ_K: pairs ±x with φx = ±x off T[2], plus n eigenlines
    on E_x for each fixed x in T[2]."""
    m = 2 * n
    from .linalg import det

    dm = abs(int(det([[phi[i][j] - (i == j) for j in range(m)] for i in range(m)])))
    dp = abs(int(det([[phi[i][j] + (i == j) for j in range(m)] for i in range(m)])))
    # fixed 2-torsion: kernel of (φ - I) mod 2
    from .linalg import smith_normal_form

    inv = smith_normal_form([[phi[i][j] - (i == j) for j in range(m)] for i in range(m)])
    ker_dim = sum(1 for d in inv if d % 2 == 0) + (m - len(inv))
    F2 = 2**ker_dim
    off = (dm + dp - 2 * F2) // 2
    return {"off_torsion": off, "torsion_fixed": F2, "total": off + n * F2}


def kummer_lefschetz(f, n: int, F2: int) -> int:
    """(f(-1) + f(1))/2 + (n-1) F2."""
    return (f(-1) + f(1)) // 2 + (n - 1) * F2


def build_x2_model(t: TorusDatum, diagonal_chern_shift: Sequence[tuple[int, int]] | None = None) -> Model:
    """Bl_{Γ~} Bl_Δ (K x K) for the Kummer variety K of T and the graph of φ_K.

    ``diagonal_chern_shift`` adds Σ f_i ∧ f_j to c_1 of the diagonal normal
    bundle; it exists only to build deliberately wrong models.
    """
    n = t.n
    K = KummerAlgebra(n)
    phi = [list(r) for r in t.phi]
    phiK = K.automorphism(phi)
    KK = TensorAlgebra(K, K, name="H*(K x K)")
    cK = K.chern_classes()

    # diagonal
    def diag_r(i):
        a, b = KK.split(i)
        return K.mul_basis(a, b)

    RD = AlgebraMorphism(KK, K, diag_r, "Δ*")
    chern_d = [dict(c) for c in cK]
    if diagonal_chern_shift:
        for i, j in diagonal_chern_shift:
            mask = (1 << i) | (1 << j)
            idx = K.even.index[mask]
            sign = 1 if i < j else -1
            add_into(chern_d[0], {idx: Fraction(sign)})
    Y1 = BlowupAlgebra(KK, BlowupCenter(K, RD, n, chern_d, "diagonal"), name="X2")

    # graph
    fp = kummer_fixed_points(phi, n)
    W = fp["total"]
    P = point_algebra()
    G: GradedAlgebra = K
    wstages = []
    for w in range(W):
        R = AlgebraMorphism(G, P, lambda i, G=G: {P.unit: Fraction(1)} if i == G.unit else {})
        G = BlowupAlgebra(G, BlowupCenter(P, R, n, (), f"w{w}"), name="Γ~")
        wstages.append(G)

    def graph_r(i):
        if i < KK.dim:
            a, b = KK.split(i)
            return K.mul({a: Fraction(1)}, phiK.image(b))
        z, k = Y1.exc_of(i)
        if z != K.unit:
            return {}
        acc: Element = {}
        for st in wstages:
            acc[st.exc_index[(st.center.algebra.unit, k)]] = Fraction(1)
        return acc

    RG = AlgebraMorphism(Y1, G, graph_r, "Γ*")
    Y2 = BlowupAlgebra(Y1, BlowupCenter(G, RG, n, [dict(c) for c in cK], "graph"), name="X2")
    centers = [CenterInfo("diagonal", "diagonal", Y1, "diagonal"), CenterInfo("graph", "graph", Y2, "graph")]
    meta = {"n": n, "fixed_points": fp, "kummer": K, "product": KK, "phiK": phiK}
    return Model("X2", Y2, centers, meta)


def kummer_exceptional_pullbacks(model: Model) -> dict[str, list[Element]]:
    """pr_1^* e_x and pr_2^* e_x in H^2(X2)."""
    K = model.meta["kummer"]
    KK = model.meta["product"]
    left = [{KK.pair(K.exc(x, 1), K.unit): Fraction(1)} for x in range(K.npoints)]
    right = [{KK.pair(K.unit, K.exc(x, 1)): Fraction(1)} for x in range(K.npoints)]
    return {"pr1": left, "pr2": right}


def kummer_wedge2_pullbacks(model: Model) -> dict[str, list[Element]]:
    """pr_i^* of the invariant classes ∧^2 H^1(T) ⊂ H^2(K)."""
    K = model.meta["kummer"]
    KK = model.meta["product"]
    deg2 = [i for i in K.basis(2) if i < K.ne]
    return {
        "pr1": [{KK.pair(i, K.unit): Fraction(1)} for i in deg2],
        "pr2": [{KK.pair(K.unit, i): Fraction(1)} for i in deg2],
    }
