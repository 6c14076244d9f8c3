"""Finite-dimensional graded-commutative Q-algebras with an integration map.

Algebras are lazy: a subclass supplies degrees, a product on basis indices
and integrals of basis elements; products are cached as they are asked for.
Elements are sparse dicts {basis index: Fraction}.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import Subspace, inverse, kernel_basis, transpose

Element = dict


class AlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse element arithmetic


def el(*pairs) -> Element:
    out: Element = {}
    for i, c in pairs:
        if c:
            out[i] = out.get(i, 0) + Fraction(c)
            if not out[i]:
                del out[i]
    return out


def add_into(acc: Element, x: Mapping, c=1) -> Element:
    for i, v in x.items():
        w = acc.get(i, 0) + c * v
        if w:
            acc[i] = w
        else:
            acc.pop(i, None)
    return acc


def add(*xs: Mapping) -> Element:
    acc: Element = {}
    for x in xs:
        add_into(acc, x)
    return acc


def scale(x: Mapping, c) -> Element:
    c = Fraction(c)
    return {i: c * v for i, v in x.items()} if c else {}


def sub(x: Mapping, y: Mapping) -> Element:
    return add_into(dict(x), y, -1)


def linear_combination(terms: Iterable[tuple]) -> Element:
    acc: Element = {}
    for c, x in terms:
        if c:
            add_into(acc, x, c)
    return acc


# ---------------------------------------------------------------------------


class GradedAlgebra:
    """Base class.  Subclasses implement ``degree``, ``_mul_basis``,
    ``_integral_basis`` and set ``dim``, ``top_degree``, ``unit``."""

    name = "algebra"
    dim: int
    top_degree: int
    unit: int = 0

    def __init__(self):
        self._mul_cache: dict = {}
        self._basis_cache: dict | None = None
        self._dual_cache: dict = {}

    # -- structure supplied by subclasses
    def degree(self, i: int) -> int:
        raise NotImplementedError

    def _mul_basis(self, i: int, j: int) -> Element:
        raise NotImplementedError

    def _integral_basis(self, i: int) -> Fraction:
        raise NotImplementedError

    def label(self, i: int) -> str:
        return f"b{i}"

    # -- derived
    def _build_basis(self) -> dict:
        out: dict = {}
        for i in range(self.dim):
            out.setdefault(self.degree(i), []).append(i)
        return out

    def basis(self, d: int) -> list[int]:
        if self._basis_cache is None:
            self._basis_cache = self._build_basis()
        return self._basis_cache.get(d, [])

    def betti(self) -> list[int]:
        return [len(self.basis(d)) for d in range(self.top_degree + 1)]

    def mul_basis(self, i: int, j: int) -> Element:
        key = (i, j)
        r = self._mul_cache.get(key)
        if r is None:
            if self.degree(i) + self.degree(j) > self.top_degree:
                r = {}
            elif i == self.unit:
                r = {j: Fraction(1)}
            elif j == self.unit:
                r = {i: Fraction(1)}
            else:
                r = self._mul_basis(i, j)
            self._mul_cache[key] = r
        return r

    def mul(self, x: Mapping, y: Mapping) -> Element:
        acc: Element = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.mul_basis(i, j)
                if prod:
                    add_into(acc, prod, a * b)
        return acc

    def product(self, *xs: Mapping) -> Element:
        acc: Element = {self.unit: Fraction(1)}
        for x in xs:
            acc = self.mul(acc, x)
            if not acc:
                break
        return acc

    def power(self, x: Mapping, k: int) -> Element:
        acc: Element = {self.unit: Fraction(1)}
        for _ in range(k):
            acc = self.mul(acc, x)
            if not acc:
                break
        return acc

    def integrate(self, x: Mapping) -> Fraction:
        top = set(self.basis(self.top_degree))
        return sum((c * self._integral_basis(i) for i, c in x.items() if i in top), Fraction(0))

    def basis_element(self, i: int) -> Element:
        return {i: Fraction(1)}

    def one(self) -> Element:
        return {self.unit: Fraction(1)}

    def homogeneous_parts(self, x: Mapping) -> dict[int, Element]:
        out: dict = {}
        for i, c in x.items():
            out.setdefault(self.degree(i), {})[i] = c
        return out

    def coordinates(self, x: Mapping, d: int) -> list[Fraction]:
        return [Fraction(x.get(i, 0)) for i in self.basis(d)]

    def from_coordinates(self, v: Sequence, d: int) -> Element:
        return {i: Fraction(c) for i, c in zip(self.basis(d), v) if c}

    def pairing_matrix(self, d: int) -> list[list[Fraction]]:
        """G[a][b] = integral of e_a e_b for e_a in degree d, e_b in top - d."""
        return [
            [self.integrate(self.mul_basis(a, b)) for b in self.basis(self.top_degree - d)] for a in self.basis(d)
        ]

    def dual_basis(self, d: int) -> dict[int, Element]:
        """For f of degree top - d, an element f* of degree d with ∫ f* g = δ(f, g)."""
        if d not in self._dual_cache:
            self._dual_cache[d] = self._compute_dual(d)
        return self._dual_cache[d]

    def _compute_dual(self, d: int) -> dict[int, Element]:
        return dense_dual(self, self.basis(d), self.basis(self.top_degree - d))

    def is_poincare_duality(self) -> bool:
        for d in range(self.top_degree // 2 + 1):
            G = self.pairing_matrix(d)
            if len(G) != len(self.basis(self.top_degree - d)):
                return False
            if G and kernel_basis(G, len(G[0])).dim:
                return False
        return True


def dense_dual(A: GradedAlgebra, rows: Sequence[int], cols: Sequence[int]) -> dict[int, Element]:
    """Dual basis {f: f*} for f in ``cols`` with f* in span(rows), by inverting
    the pairing block.  Assumes the block is nondegenerate."""
    if not rows and not cols:
        return {}
    G = [[A.integrate(A.mul_basis(a, b)) for b in cols] for a in rows]
    if len(rows) != len(cols):
        raise AlgebraError("pairing block is not square")
    try:
        X = inverse(transpose(G))  # X G^T = I  => sum_a X[f][a] G[a][g] = δ
    except ZeroDivisionError as exc:
        raise AlgebraError("degenerate intersection pairing") from exc
    return {f: {a: X[k][t] for t, a in enumerate(rows) if X[k][t]} for k, f in enumerate(cols)}


# ---------------------------------------------------------------------------
# concrete algebras


def _wedge_sign(a: int, b: int) -> int:
    """Sign of e_a ∧ e_b relative to e_(a|b) for disjoint bitmasks."""
    s = 0
    bb = b
    while bb:
        low = bb & -bb
        j = low.bit_length() - 1
        s += bin(a >> (j + 1)).count("1")
        bb ^= low
    return -1 if s & 1 else 1


class ExteriorAlgebra(GradedAlgebra):
    """∧*Q^m with basis indexed by bitmasks; ∫ e_1...e_m = volume."""

    def __init__(self, m: int, volume=1, name: str | None = None):
        super().__init__()
        if m > 20:
            raise AlgebraError("exterior algebra rank too large")
        self.m = m
        self.dim = 1 << m
        self.top_degree = m
        self.unit = 0
        self.volume = Fraction(volume)
        self.name = name or f"Λ(Q^{m})"

    def degree(self, i: int) -> int:
        return bin(i).count("1")

    def _mul_basis(self, i, j):
        if i & j:
            return {}
        return {i | j: Fraction(_wedge_sign(i, j))}

    def _integral_basis(self, i):
        return self.volume if i == self.dim - 1 else Fraction(0)

    def label(self, i):
        if i == 0:
            return "1"
        return "^".join(f"e{k + 1}" for k in range(self.m) if i >> k & 1)

    def generator(self, k: int) -> Element:
        return {1 << k: Fraction(1)}

    def _compute_dual(self, d):
        full = self.dim - 1
        out = {}
        for f in self.basis(self.top_degree - d):
            c = full ^ f
            out[f] = {c: Fraction(1) / (_wedge_sign(c, f) * self.volume)}
        return out


class EvenExteriorAlgebra(GradedAlgebra):
    """Even-degree part of ∧*Q^m (m even), reindexed densely."""

    def __init__(self, m: int, volume=1, name: str | None = None):
        super().__init__()
        if m % 2:
            raise AlgebraError("even part needs even rank")
        self.m = m
        self.masks = [s for s in range(1 << m) if bin(s).count("1") % 2 == 0]
        self.index = {s: i for i, s in enumerate(self.masks)}
        self.dim = len(self.masks)
        self.top_degree = m
        self.unit = 0
        self.volume = Fraction(volume)
        self.name = name or f"Λ^even(Q^{m})"

    def degree(self, i):
        return bin(self.masks[i]).count("1")

    def _mul_basis(self, i, j):
        a, b = self.masks[i], self.masks[j]
        if a & b:
            return {}
        return {self.index[a | b]: Fraction(_wedge_sign(a, b))}

    def _integral_basis(self, i):
        return self.volume if self.masks[i] == (1 << self.m) - 1 else Fraction(0)

    def label(self, i):
        s = self.masks[i]
        return "1" if s == 0 else "^".join(f"e{k + 1}" for k in range(self.m) if s >> k & 1)


class TruncatedPolynomialAlgebra(GradedAlgebra):
    """Q[h]/h^(k+1) with |h| = 2 and ∫ h^k = 1 (cohomology of P^k)."""

    def __init__(self, k: int, name: str | None = None):
        super().__init__()
        self.k = k
        self.dim = k + 1
        self.top_degree = 2 * k
        self.unit = 0
        self.name = name or (f"H*(P^{k})" if k else "H*(pt)")

    def degree(self, i):
        return 2 * i

    def _mul_basis(self, i, j):
        return {i + j: Fraction(1)} if i + j <= self.k else {}

    def _integral_basis(self, i):
        return Fraction(1) if i == self.k else Fraction(0)

    def label(self, i):
        return "1" if i == 0 else ("h" if i == 1 else f"h^{i}")


def point_algebra() -> TruncatedPolynomialAlgebra:
    return TruncatedPolynomialAlgebra(0)


class TensorAlgebra(GradedAlgebra):
    """A ⊗ B with the Koszul sign; index = a * dim(B) + b."""

    def __init__(self, A: GradedAlgebra, B: GradedAlgebra, name: str | None = None):
        super().__init__()
        self.A, self.B = A, B
        self.dim = A.dim * B.dim
        self.top_degree = A.top_degree + B.top_degree
        self.unit = A.unit * B.dim + B.unit
        self.name = name or f"{A.name} ⊗ {B.name}"

    def split(self, i: int) -> tuple[int, int]:
        return divmod(i, self.B.dim)

    def pair(self, a: int, b: int) -> int:
        return a * self.B.dim + b

    def degree(self, i):
        a, b = self.split(i)
        return self.A.degree(a) + self.B.degree(b)

    def _build_basis(self):
        out: dict = {}
        for da in range(self.A.top_degree + 1):
            for db in range(self.B.top_degree + 1):
                for a in self.A.basis(da):
                    for b in self.B.basis(db):
                        out.setdefault(da + db, []).append(self.pair(a, b))
        for v in out.values():
            v.sort()
        return out

    def _mul_basis(self, i, j):
        a, b = self.split(i)
        c, d = self.split(j)
        sign = -1 if (self.B.degree(b) * self.A.degree(c)) % 2 else 1
        pa = self.A.mul_basis(a, c)
        if not pa:
            return {}
        pb = self.B.mul_basis(b, d)
        out = {}
        for x, u in pa.items():
            for y, v in pb.items():
                out[self.pair(x, y)] = sign * u * v
        return out

    def _integral_basis(self, i):
        a, b = self.split(i)
        return self.A._integral_basis(a) * self.B._integral_basis(b) if (
            self.A.degree(a) == self.A.top_degree and self.B.degree(b) == self.B.top_degree
        ) else Fraction(0)

    def label(self, i):
        a, b = self.split(i)
        return f"{self.A.label(a)}⊗{self.B.label(b)}"

    def left(self, x: Mapping) -> Element:
        """x ⊗ 1"""
        return {self.pair(a, self.B.unit): c for a, c in x.items()}

    def right(self, y: Mapping) -> Element:
        """1 ⊗ y"""
        return {self.pair(self.A.unit, b): c for b, c in y.items()}

    def _compute_dual(self, d):
        out = {}
        for da in range(self.A.top_degree + 1):
            db = d - da
            if db < 0 or db > self.B.top_degree:
                continue
            DA = self.A.dual_basis(da)
            DB = self.B.dual_basis(db)
            for fa, xa in DA.items():
                for fb, xb in DB.items():
                    # (a* ⊗ b*)(fa ⊗ fb) = (-1)^{|b*||fa|} a*fa ⊗ b*fb
                    sign = -1 if (db * self.A.degree(fa)) % 2 else 1
                    out[self.pair(fa, fb)] = {
                        self.pair(x, y): sign * u * v for x, u in xa.items() for y, v in xb.items()
                    }
        return out


class StructureConstantAlgebra(GradedAlgebra):
    """Algebra given by explicit tables (used for serialised models)."""

    def __init__(self, degrees, products, integrals, name="algebra", labels=None, unit=0):
        super().__init__()
        self.degrees = list(degrees)
        self.dim = len(self.degrees)
        self.top_degree = max(self.degrees) if self.degrees else 0
        self.products = {k: dict(v) for k, v in products.items()}
        self.integrals = {k: Fraction(v) for k, v in integrals.items()}
        self.labels = labels
        self.unit = unit
        self.name = name

    def degree(self, i):
        return self.degrees[i]

    def _mul_basis(self, i, j):
        return dict(self.products.get((i, j), {}))

    def _integral_basis(self, i):
        return self.integrals.get(i, Fraction(0))

    def label(self, i):
        return self.labels[i] if self.labels else f"b{i}"


# ---------------------------------------------------------------------------
# morphisms


class AlgebraMorphism:
    """Linear map on basis elements, assumed (and checkable) multiplicative."""

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, on_basis: Callable[[int], Element], name=""):
        self.source = source
        self.target = target
        self._on_basis = on_basis
        self._cache: dict = {}
        self.name = name

    def image(self, i: int) -> Element:
        r = self._cache.get(i)
        if r is None:
            r = self._on_basis(i)
            self._cache[i] = r
        return r

    def __call__(self, x: Mapping) -> Element:
        acc: Element = {}
        for i, c in x.items():
            add_into(acc, self.image(i), c)
        return acc

    def matrix(self, d: int, d_target: int | None = None) -> list[list[Fraction]]:
        """Columns are images of source basis elements of degree d."""
        dt = d if d_target is None else d_target
        rows = self.target.basis(dt)
        cols = [self.image(i) for i in self.source.basis(d)]
        return [[c.get(r, Fraction(0)) for c in cols] for r in rows]

    def kernel(self, d: int) -> Subspace:
        n = len(self.source.basis(d))
        M = self.matrix(d)
        return kernel_basis(M, n) if M else Subspace.full(n)

    def multiplicativity_defects(self, pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
        bad = []
        for i, j in pairs:
            lhs = self(self.source.mul_basis(i, j))
            rhs = self.target.mul(self.image(i), self.image(j))
            if lhs != rhs:
                bad.append((i, j))
        return bad


def identity_inclusion(source: GradedAlgebra, target: GradedAlgebra, name="τ*") -> AlgebraMorphism:
    """Pullback into an algebra whose first indices copy ``source``."""
    return AlgebraMorphism(source, target, lambda i: {i: Fraction(1)}, name)


def exterior_pullback(source: ExteriorAlgebra, target: GradedAlgebra, generator_images: Sequence[Element], name=""):
    """Morphism ∧*Q^m -> target determined by images of the m generators."""
    if len(generator_images) != source.m:
        raise AlgebraError("need one image per generator")
    cache: dict[int, Element] = {0: target.one()}

    def on_basis(mask: int) -> Element:
        if mask in cache:
            return cache[mask]
        low = mask & -mask
        k = low.bit_length() - 1
        r = target.mul(generator_images[k], on_basis(mask ^ low))
        cache[mask] = r
        return r

    return AlgebraMorphism(source, target, on_basis, name)


def linear_exterior_pullback(source: ExteriorAlgebra, target: ExteriorAlgebra | GradedAlgebra, M, name=""):
    """∧ of the linear map H^1(source) -> H^1(target) whose column k is the
    image of generator k, written in target.basis(1)."""
    b1 = target.basis(1)
    imgs = []
    for k in range(source.m):
        imgs.append({b1[r]: Fraction(M[r][k]) for r in range(len(b1)) if M[r][k]})
    return exterior_pullback(source, target, imgs, name)


# ---------------------------------------------------------------------------
# serialisation


def dump_algebra(A: GradedAlgebra, max_dim: int = 400) -> dict:
    """Complete structure tables; refuses algebras larger than ``max_dim``."""
    if A.dim > max_dim:
        raise AlgebraError(f"algebra of dimension {A.dim} too large to dump")
    products = []
    for i in range(A.dim):
        for j in range(A.dim):
            p = A.mul_basis(i, j)
            if p:
                products.append([i, j, {str(k): str(v) for k, v in sorted(p.items())}])
    integrals = {str(i): str(A._integral_basis(i)) for i in A.basis(A.top_degree) if A._integral_basis(i)}
    return {
        "schema": "kahlerobs.algebra/1",
        "name": A.name,
        "degrees": [A.degree(i) for i in range(A.dim)],
        "labels": [A.label(i) for i in range(A.dim)],
        "unit": A.unit,
        "products": products,
        "integrals": integrals,
    }


def load_algebra(data: Mapping) -> StructureConstantAlgebra:
    if data.get("schema") != "kahlerobs.algebra/1":
        raise AlgebraError("unknown algebra schema")
    products = {(i, j): {int(k): Fraction(v) for k, v in p.items()} for i, j, p in data["products"]}
    return StructureConstantAlgebra(
        data["degrees"],
        products,
        {int(k): Fraction(v) for k, v in data["integrals"].items()},
        name=data.get("name", "algebra"),
        labels=data.get("labels"),
        unit=data.get("unit", 0),
    )


def dumps_algebra(A: GradedAlgebra, **kw) -> str:
    return json.dumps(dump_algebra(A, **kw), sort_keys=True, indent=1, ensure_ascii=False)


def is_graded_commutative(A: GradedAlgebra, indices: Iterable[int] | None = None) -> bool:
    idx = list(range(A.dim)) if indices is None else list(indices)
    for i, j in combinations(idx, 2):
        sign = -1 if (A.degree(i) * A.degree(j)) % 2 else 1
        if A.mul_basis(i, j) != scale(A.mul_basis(j, i), sign):
            return False
    return True


def associativity_defects(A: GradedAlgebra, triples: Iterable[tuple[int, int, int]]) -> list[tuple]:
    bad = []
    for i, j, k in triples:
        lhs = A.mul(A.mul_basis(i, j), {k: Fraction(1)})
        rhs = A.mul({i: Fraction(1)}, A.mul_basis(j, k))
        if lhs != rhs:
            bad.append((i, j, k))
    return bad
