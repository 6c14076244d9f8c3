"""Cohomology ring of a blow-up Ỹ = Bl_Z Y.

H*(Ỹ) = τ*H*(Y) ⊕ ⊕_{k=1}^{r-1} j_*(π*H*(Z) ξ^(k-1)), where r is the complex
codimension of Z, E = P(N) is the exceptional divisor, j: E -> Ỹ and
ξ = c_1(O_E(-1)) = [E]|_E.  Products follow from

* τ*a · j_*(x) = j_*(π*(a|_Z) x),
* j_*(x) · j_*(y) = j_*(x y ξ),
* ξ^r = Σ_{i=1}^r (-1)^(i+1) π*c_i(N) ξ^(r-i)   (Grothendieck relation),
* j_*(π*z ξ^(r-1)) = (-1)^(r-1) [τ*i_*(z) - Σ_{i<r} (-1)^(r-1-i) j_*(π*(z c_i) ξ^(r-1-i))]

the last being the key formula τ*i_*z = j_*(π*z c_(r-1)(π*N/O(-1))).
With these conventions ∫ E^2 = -1 for a point on a surface and
∫ E^3 = +1 for a point on a threefold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (
    AlgebraError,
    AlgebraMorphism,
    Element,
    GradedAlgebra,
    add_into,
    dense_dual,
)


@dataclass
class BlowupCenter:
    """Data of a smooth center Z ⊂ Y."""

    algebra: GradedAlgebra  # H*(Z)
    restriction: AlgebraMorphism  # H*(Y) -> H*(Z)
    codim: int  # complex codimension r >= 2
    chern: Sequence[Element] = field(default_factory=tuple)  # c_1..c_r of N, in H*(Z)
    label: str = "Z"

    def chern_class(self, i: int) -> Element:
        if i == 0:
            return self.algebra.one()
        if i <= len(self.chern):
            return dict(self.chern[i - 1])
        return {}


class BlowupAlgebra(GradedAlgebra):
    """H*(Bl_Z Y).  Indices below ``base.dim`` are τ* of base classes; the
    exceptional classes (z, k) = j_*(π*z ξ^(k-1)) follow."""

    def __init__(self, base: GradedAlgebra, center: BlowupCenter, name: str | None = None):
        super().__init__()
        Z = center.algebra
        r = center.codim
        if r < 2:
            raise AlgebraError("codimension must be at least 2")
        if Z.top_degree + 2 * r != base.top_degree:
            raise AlgebraError(
                f"dimension mismatch: dim Z = {Z.top_degree // 2}, codim {r}, dim Y = {base.top_degree // 2}"
            )
        if center.restriction.source is not base or center.restriction.target is not Z:
            raise AlgebraError("restriction must map the base algebra to the center algebra")
        for i, c in enumerate(center.chern, start=1):
            for idx in c:
                if Z.degree(idx) != 2 * i:
                    raise AlgebraError(f"c_{i} has a component of degree {Z.degree(idx)}")
        self.base = base
        self.center = center
        self.r = r
        self.nbase = base.dim
        self.top_degree = base.top_degree
        self.unit = base.unit
        self.exc: list[tuple[int, int]] = []
        self.exc_index: dict[tuple[int, int], int] = {}
        for k in range(1, r):
            for d in range(Z.top_degree + 1):
                for z in Z.basis(d):
                    self.exc_index[(z, k)] = self.nbase + len(self.exc)
                    self.exc.append((z, k))
        self.dim = self.nbase + len(self.exc)
        self.name = name or f"Bl_{center.label}({base.name})"
        self._gysin_cache: dict[int, Element] = {}
        self._chern = [center.chern_class(i) for i in range(r + 1)]

    # -- bookkeeping
    def is_exceptional(self, i: int) -> bool:
        return i >= self.nbase

    def exc_of(self, i: int) -> tuple[int, int]:
        return self.exc[i - self.nbase]

    def degree(self, i):
        if i < self.nbase:
            return self.base.degree(i)
        z, k = self.exc_of(i)
        return self.center.algebra.degree(z) + 2 * k

    def label(self, i):
        if i < self.nbase:
            return self.base.label(i)
        z, k = self.exc_of(i)
        zl = self.center.algebra.label(z)
        return f"j[{self.center.label}]({zl}·ξ^{k - 1})" if k > 1 else f"j[{self.center.label}]({zl})"

    def exceptional_divisor(self) -> Element:
        return {self.exc_index[(self.center.algebra.unit, 1)]: Fraction(1)}

    def pullback(self) -> AlgebraMorphism:
        return AlgebraMorphism(self.base, self, lambda i: {i: Fraction(1)}, f"τ*[{self.center.label}]")

    def exceptional_indices(self) -> list[int]:
        return list(range(self.nbase, self.dim))

    def centers(self) -> list["BlowupAlgebra"]:
        """All blow-up stages, innermost first."""
        out = self.base.centers() if isinstance(self.base, BlowupAlgebra) else []
        return out + [self]

    def root(self) -> GradedAlgebra:
        return self.base.root() if isinstance(self.base, BlowupAlgebra) else self.base

    # -- Gysin map of the center
    def gysin(self, z: Mapping) -> Element:
        """i_*: H*(Z) -> H*(Y), characterised by ∫_Y i_*(z) a = ∫_Z z a|_Z."""
        acc: Element = {}
        for idx, c in z.items():
            g = self._gysin_cache.get(idx)
            if g is None:
                g = self._gysin_basis(idx)
                self._gysin_cache[idx] = g
            add_into(acc, g, c)
        return acc

    def _gysin_basis(self, zi: int) -> Element:
        Z = self.center.algebra
        d = Z.degree(zi) + 2 * self.r
        Y = self.base
        duals = Y.dual_basis(d)
        out: Element = {}
        zel = {zi: Fraction(1)}
        for f in Y.basis(Y.top_degree - d):
            rf = self.center.restriction.image(f)
            if not rf:
                continue
            c = Z.integrate(Z.mul(zel, rf))
            if c:
                add_into(out, duals[f], c)
        return out

    # -- j_*(π*z ξ^m)
    def push(self, z: Mapping, m: int) -> Element:
        if not z:
            return {}
        Z = self.center.algebra
        r = self.r
        if m < 0:
            raise AlgebraError("negative ξ power")
        if m <= r - 2:
            return {self.exc_index[(zi, m + 1)]: c for zi, c in z.items()}
        if m == r - 1:
            acc: Element = {}
            sgn = -1 if (r - 1) % 2 else 1
            add_into(acc, self.gysin(z), sgn)  # τ* is the identity on indices
            for i in range(1, r):
                zc = Z.mul(z, self._chern[i])
                if zc:
                    s = -1 if (r - 1 - i) % 2 else 1
                    add_into(acc, self.push(zc, r - 1 - i), -sgn * s)
            return acc
        acc = {}
        for i in range(1, r + 1):
            zc = Z.mul(z, self._chern[i])
            if zc:
                add_into(acc, self.push(zc, m - i), 1 if i % 2 else -1)
        return acc

    def _mul_basis(self, i, j):
        Z = self.center.algebra
        R = self.center.restriction
        ei, ej = i >= self.nbase, j >= self.nbase
        if not ei and not ej:
            return dict(self.base.mul_basis(i, j))
        if not ei:
            z, k = self.exc_of(j)
            return self.push(Z.mul(R.image(i), {z: Fraction(1)}), k - 1)
        if not ej:
            z, k = self.exc_of(i)
            return self.push(Z.mul({z: Fraction(1)}, R.image(j)), k - 1)
        z, k = self.exc_of(i)
        w, l = self.exc_of(j)
        return self.push(Z.mul_basis(z, w), k + l - 1)

    def _integral_basis(self, i):
        return self.base._integral_basis(i) if i < self.nbase else Fraction(0)

    def _compute_dual(self, d):
        out = {}
        out.update(self.base.dual_basis(d))
        rows = [i for i in self.basis(d) if i >= self.nbase]
        cols = [i for i in self.basis(self.top_degree - d) if i >= self.nbase]
        out.update(dense_dual(self, rows, cols))
        return out


def blow_up(base: GradedAlgebra, center: BlowupCenter, name: str | None = None) -> BlowupAlgebra:
    return BlowupAlgebra(base, center, name)


def extend_by_zero(base_map: AlgebraMorphism, Y: GradedAlgebra, target: GradedAlgebra, exceptional: Mapping | None = None):
    """Restriction from an iterated blow-up Y to a center disjoint from the
    earlier exceptional loci (unless ``exceptional`` supplies images)."""
    root_dim = base_map.source.dim
    extra = dict(exceptional or {})

    def on_basis(i: int) -> Element:
        if i < root_dim:
            return base_map.image(i)
        f = extra.get(i)
        if f is None:
            return {}
        return f(i) if callable(f) else f

    return AlgebraMorphism(Y, target, on_basis)


def segre_integral(center: BlowupCenter, gamma: Mapping, m: int) -> Fraction:
    """∫ E^m τ*γ via π_*(ξ^(m-1)) = (-1)^(m-1) s_(m-r)(N), s = c(N)^(-1).

    Independent of the ring presentation; used as a cross-check."""
    Z = center.algebra
    r = center.codim
    k = m - r
    if k < 0:
        return Fraction(0)
    # Segre classes by s_0 = 1, s_j = -Σ_{i=1}^j c_i s_{j-i}
    s = [Z.one()]
    for j in range(1, k + 1):
        acc: Element = {}
        for i in range(1, j + 1):
            add_into(acc, Z.mul(center.chern_class(i), s[j - i]), -1)
        s.append(acc)
    val = Z.integrate(Z.mul(center.restriction(gamma), s[k]))
    return val if (m - 1) % 2 == 0 else -val
