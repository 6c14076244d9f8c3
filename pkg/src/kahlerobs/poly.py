"""Integer polynomials: real-root counting, discriminants, Frobenius cycle
types and certification that the Galois group is the full symmetric group.

Polynomials are monic with integer coefficients, constant term first.  Only
the root isolation step touches floating point; every certificate is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

import mpmath

from . import qpoly
from .linalg import det, identity

# ---------------------------------------------------------------------------
# errors


class PolynomialError(ValueError):
    pass


class NotSquarefreeError(PolynomialError):
    """The polynomial has a repeated root."""


class OddDegreeError(PolynomialError):
    """Odd degree forces a real root."""


class BadPrimeError(PolynomialError):
    """The prime divides the discriminant (or is not prime)."""


class PropertyPError(PolynomialError):
    """Simple, non-real eigenvalues were required but are not present."""


class RootIsolationError(PolynomialError):
    pass


class TransversalityError(ValueError):
    """The diagonal/graph configuration is not transverse."""


# ---------------------------------------------------------------------------


_TERM = re.compile(r"([+-]?)(\d*)\*?(x)?(?:\^(\d+))?")


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, constant term first."""

    coefficients: tuple

    def __post_init__(self):
        c = [int(x) for x in self.coefficients]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c or c[-1] != 1:
            raise PolynomialError(f"polynomial must be monic, got leading coefficient {c[-1] if c else None}")
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def parse(cls, text: str | Sequence[int]) -> "IntPolynomial":
        """Accepts a coefficient list (constant first), a comma separated
        string of the same, or an expression such as ``x^6 + x + 1``."""
        if isinstance(text, str):
            s = text.replace(" ", "").replace("**", "^")
            if "x" not in s:
                return cls(tuple(int(tok) for tok in s.split(",") if tok))
            coeffs: dict[int, int] = {}
            pos = 0
            for m in _TERM.finditer(s):
                if m.start() != pos or not m.group(0):
                    raise PolynomialError(f"cannot parse {text!r}")
                pos = m.end()
                sign, num, var, exp = m.groups()
                if m.start() and not sign:
                    raise PolynomialError(f"cannot parse {text!r}")
                c = int(num) if num else 1
                c = -c if sign == "-" else c
                e = (int(exp) if exp else 1) if var else 0
                if not var and not num:
                    raise PolynomialError(f"cannot parse {text!r}")
                coeffs[e] = coeffs.get(e, 0) + c
                if pos == len(s):
                    break
            if pos != len(s):
                raise PolynomialError(f"cannot parse {text!r}")
            deg = max(coeffs)
            return cls(tuple(coeffs.get(k, 0) for k in range(deg + 1)))
        return cls(tuple(text))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def q(self) -> tuple:
        return qpoly.from_ints(self.coefficients)

    def __call__(self, x):
        return qpoly.evaluate(self.coefficients, x)

    def derivative_coeffs(self) -> tuple:
        return tuple(i * c for i, c in enumerate(self.coefficients))[1:]

    def __str__(self):
        return qpoly.to_str(self.q)

    def as_list(self) -> list[int]:
        return list(self.coefficients)


def _as_poly(f) -> IntPolynomial:
    return f if isinstance(f, IntPolynomial) else IntPolynomial.parse(f)


def is_squarefree(f: IntPolynomial) -> bool:
    return qpoly.deg(qpoly.gcd(f.q, qpoly.derivative(f.q))) == 0


# ---------------------------------------------------------------------------
# Sturm


def sturm_chain(p: tuple) -> list[tuple]:
    chain = [qpoly.trim(p), qpoly.derivative(qpoly.trim(p))]
    while chain[-1] and qpoly.deg(chain[-1]) > 0:
        r = qpoly.neg(qpoly.rem(chain[-2], chain[-1]))
        if not r:
            break
        chain.append(r)
    return [c for c in chain if c]


def _sign_changes(values: Iterable) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at_infinity(chain: list[tuple], positive: bool) -> list[int]:
    out = []
    for p in chain:
        s = 1 if p[-1] > 0 else -1
        if not positive and qpoly.deg(p) % 2:
            s = -s
        out.append(s)
    return out


def sturm_count_interval(f, a, b) -> int:
    """Distinct real roots in (a, b]; f must be squarefree."""
    chain = sturm_chain(_as_poly(f).q)
    va = _sign_changes(qpoly.evaluate(p, Fraction(a)) for p in chain)
    vb = _sign_changes(qpoly.evaluate(p, Fraction(b)) for p in chain)
    return va - vb


def sturm_real_root_count(f) -> int:
    """Exact number of distinct real roots of a squarefree polynomial."""
    f = _as_poly(f)
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} is not squarefree")
    chain = sturm_chain(f.q)
    return _sign_changes(_signs_at_infinity(chain, False)) - _sign_changes(_signs_at_infinity(chain, True))


@dataclass(frozen=True)
class PropertyPReport:
    holds: bool
    squarefree: bool
    real_roots: int | None
    diagnosis: str


def check_property_P(f) -> PropertyPReport:
    """Simple roots and no real root."""
    f = _as_poly(f)
    if f.degree % 2:
        raise OddDegreeError(f"degree {f.degree} is odd; a real root is forced")
    if not is_squarefree(f):
        return PropertyPReport(False, False, None, "repeated root: gcd(f, f') is not constant")
    k = sturm_real_root_count(f)
    if k:
        return PropertyPReport(False, True, k, f"{k} real root(s)")
    return PropertyPReport(True, True, 0, "simple non-real roots")


# ---------------------------------------------------------------------------
# discriminant


def sylvester_matrix(p: Sequence, q: Sequence) -> list[list]:
    """Sylvester matrix of two constant-first coefficient lists."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(p: Sequence[int], q: Sequence[int]) -> int:
    return int(det(sylvester_matrix(p, q)))


def discriminant(f) -> int:
    """(-1)^(d(d-1)/2) Res(f, f') for monic f."""
    f = _as_poly(f)
    d = f.degree
    if d < 1:
        return 1
    if d == 1:
        return 1
    r = resultant(f.coefficients, f.derivative_coeffs())
    return (-1) ** (d * (d - 1) // 2) * r


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# ---------------------------------------------------------------------------
# polynomials over GF(p), lists constant-first with entries in [0, p)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, s in enumerate(sieve) if s]


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] = (a[k + i] - c * x) % p
        _fp_trim(a)
    return _fp_trim(q), a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_divmod(_fp_trim(out), m, p)[1]


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _fp_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_divmod(base, m, p)[1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _fp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def factor_pattern_mod_p(f, p: int) -> tuple[int, ...]:
    """Degrees of the irreducible factors of f mod p, largest first.

    Uses distinct-degree factorization; p must not divide disc(f), so the
    reduction is squarefree and each distinct-degree piece splits into
    factors of equal degree.
    """
    f = _as_poly(f)
    if not is_prime(p):
        raise BadPrimeError(f"{p} is not prime")
    if discriminant(f) % p == 0:
        raise BadPrimeError(f"{p} divides disc(f) = {discriminant(f)}")
    g = _fp_trim([c % p for c in f.coefficients])
    x = [0, 1]
    h = list(x)
    pattern: list[int] = []
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = _fp_powmod(h, p, g, p)
        common = _fp_gcd(g, _fp_sub(h, x, p), p)
        k = len(common) - 1
        if k > 0:
            pattern += [d] * (k // d)
            g = _fp_divmod(g, common, p)[0]
            h = _fp_divmod(h, g, p)[1] if len(g) > 1 else []
    if len(g) - 1 > 0:
        pattern.append(len(g) - 1)
    return tuple(sorted(pattern, reverse=True))


# ---------------------------------------------------------------------------
# exact rational factors


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    out = set(small) | {n // d for d in small}
    return sorted(out | {-d for d in out})


def integer_roots(f) -> list[int]:
    f = _as_poly(f)
    if f.coefficients[0] == 0:
        rest = IntPolynomial(f.coefficients[1:]) if f.degree > 1 else None
        return sorted({0} | set(integer_roots(rest) if rest else []))
    return [r for r in _divisors(f.coefficients[0]) if f(r) == 0]


def quartic_quadratic_factor(f) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Monic integer factorisation (x^2+ax+b)(x^2+cx+d) of a quartic, if any."""
    f = _as_poly(f)
    if f.degree != 4:
        raise PolynomialError("quartic expected")
    a0, a1, a2, a3, _ = f.coefficients
    if a0 == 0:
        return None
    for b in _divisors(a0):
        d = a0 // b
        # a + c = a3, a*c = a2 - b - d
        s, prod = a3, a2 - b - d
        disc = s * s - 4 * prod
        if not is_square(disc):
            continue
        r = isqrt(disc)
        for a in {(s + r), (s - r)}:
            if a % 2:
                continue
            a //= 2
            c = s - a
            if a * d + b * c == a1:
                return (a, b), (c, d)
    return None


def resolvent_cubic(f) -> IntPolynomial:
    """Cubic with roots x1x2+x3x4, x1x3+x2x4, x1x4+x2x3.

    For x^4 + p x^2 + q x + r this is y^3 - p y^2 - 4 r y + (4 p r - q^2).
    """
    f = _as_poly(f)
    if f.degree != 4:
        raise PolynomialError(f"resolvent cubic needs degree 4, got {f.degree}")
    a0, a1, a2, a3, _ = f.coefficients
    return IntPolynomial((4 * a2 * a0 - a1 * a1 - a3 * a3 * a0, a1 * a3 - 4 * a0, -a2, 1))


# ---------------------------------------------------------------------------
# Galois certificates


@dataclass(frozen=True)
class Witness:
    prime: int
    pattern: tuple

    def as_dict(self) -> dict:
        return {"prime": self.prime, "pattern": list(self.pattern)}


@dataclass(frozen=True)
class GaloisCertificate:
    polynomial: tuple
    degree: int
    discriminant: int
    verdict: str  # "certified" | "refuted" | "inconclusive"
    irreducibility: Witness | None = None
    transposition: Witness | None = None
    long_prime_cycle: Witness | None = None
    resolvent: tuple | None = None
    exact_irreducible: bool | None = None
    reasons: tuple = ()
    prime_bound: int = 0

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def as_dict(self) -> dict:
        return {
            "polynomial": list(self.polynomial),
            "degree": self.degree,
            "discriminant": self.discriminant,
            "verdict": self.verdict,
            "irreducibility": self.irreducibility.as_dict() if self.irreducibility else None,
            "transposition": self.transposition.as_dict() if self.transposition else None,
            "long_prime_cycle": self.long_prime_cycle.as_dict() if self.long_prime_cycle else None,
            "resolvent_cubic": list(self.resolvent) if self.resolvent else None,
            "exact_irreducible": self.exact_irreducible,
            "reasons": list(self.reasons),
            "prime_bound": self.prime_bound,
        }


def yields_transposition(pattern: Sequence[int]) -> bool:
    """A power of an element of this cycle type is a transposition."""
    evens = [c for c in pattern if c % 2 == 0]
    return evens == [2]


def long_prime_part(pattern: Sequence[int], degree: int) -> int | None:
    """A prime part q > degree/2; a power of the element is then a q-cycle."""
    for c in pattern:
        if 2 * c > degree and is_prime(c):
            return c
    return None


def certify_symmetric_galois(f, prime_bound: int = 1000) -> GaloisCertificate:
    """Certify (or refute) that Gal(f) acts as the full symmetric group.

    Degree 4 is decided exactly (irreducible quartic, irreducible resolvent
    cubic, non-square discriminant).  Other degrees use Dedekind cycle types:
    an irreducible reduction gives transitivity, a transposition plus a prime
    cycle of length > m/2 then force S_m by Jordan's theorem.
    """
    f = _as_poly(f)
    m = f.degree
    disc = discriminant(f)
    base = dict(polynomial=f.coefficients, degree=m, discriminant=disc, prime_bound=prime_bound)
    if disc == 0:
        return GaloisCertificate(verdict="refuted", reasons=("repeated root",), **base)
    if m >= 2 and is_square(disc):
        return GaloisCertificate(
            verdict="refuted",
            reasons=(f"discriminant {disc} is a square: group lies in the alternating group",),
            **base,
        )
    roots = integer_roots(f)
    if m >= 2 and roots:
        return GaloisCertificate(verdict="refuted", exact_irreducible=False, reasons=(f"rational root {roots[0]}",), **base)
    if m == 4 and quartic_quadratic_factor(f) is not None:
        a, b = quartic_quadratic_factor(f)
        return GaloisCertificate(
            verdict="refuted", exact_irreducible=False, reasons=(f"quadratic factors {a}, {b}",), **base
        )

    irr = trans = cyc = None
    for p in primes_up_to(prime_bound):
        if disc % p == 0:
            continue
        pat = factor_pattern_mod_p(f, p)
        if irr is None and pat == (m,):
            irr = Witness(p, pat)
        if trans is None and yields_transposition(pat):
            trans = Witness(p, pat)
        if cyc is None and long_prime_part(pat, m):
            cyc = Witness(p, pat)
        if irr and trans and cyc:
            break

    if m <= 1:
        return GaloisCertificate(verdict="certified", exact_irreducible=True, reasons=("trivial group",), **base)
    if m in (2, 3):
        # no rational root => irreducible; non-square discriminant then gives S_m
        return GaloisCertificate(
            verdict="certified",
            irreducibility=irr,
            transposition=trans,
            long_prime_cycle=cyc,
            exact_irreducible=True,
            reasons=("irreducible, non-square discriminant",),
            **base,
        )
    if m == 4:
        res = resolvent_cubic(f)
        res_reducible = bool(integer_roots(res))
        if res_reducible:
            return GaloisCertificate(
                verdict="refuted",
                irreducibility=irr,
                resolvent=res.coefficients,
                exact_irreducible=True,
                reasons=(f"resolvent cubic {res} has a rational root",),
                **base,
            )
        return GaloisCertificate(
            verdict="certified",
            irreducibility=irr,
            transposition=trans,
            long_prime_cycle=cyc,
            resolvent=res.coefficients,
            exact_irreducible=True,
            reasons=(
                "no rational root and no quadratic factor",
                f"resolvent cubic {res} irreducible",
                f"discriminant {disc} not a square",
            ),
            **base,
        )
    if irr and trans and cyc:
        return GaloisCertificate(
            verdict="certified",
            irreducibility=irr,
            transposition=trans,
            long_prime_cycle=cyc,
            reasons=("transitive + transposition + long prime cycle (Jordan)",),
            **base,
        )
    missing = [n for n, w in (("irreducible", irr), ("transposition", trans), ("prime cycle", cyc)) if w is None]
    return GaloisCertificate(
        verdict="inconclusive",
        irreducibility=irr,
        transposition=trans,
        long_prime_cycle=cyc,
        reasons=(f"no witness below {prime_bound} for: {', '.join(missing)}",),
        **base,
    )


# ---------------------------------------------------------------------------
# root isolation


@dataclass(frozen=True)
class RootDisc:
    center: complex
    radius: float

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) <= self.radius


@dataclass(frozen=True)
class RootSystem:
    """Isolated roots; roots[i] and roots[i + n] are complex conjugates.

    Labels 0..n-1 have positive imaginary part.  ``selection`` holds one label
    from each conjugate pair.
    """

    degree: int
    roots: tuple
    pairs: tuple
    selection: tuple

    @property
    def n(self) -> int:
        return self.degree // 2

    def conjugate(self, label: int) -> int:
        n = self.n
        return label + n if label < n else label - n

    def with_selection(self, selection: Sequence[int]) -> "RootSystem":
        sel = tuple(int(s) for s in selection)
        if len(sel) != self.n or {min(s, self.conjugate(s)) for s in sel} != set(range(self.n)):
            raise ValueError("selection must contain exactly one root of each conjugate pair")
        return RootSystem(self.degree, self.roots, self.pairs, sel)

    def selected_values(self) -> list[complex]:
        return [self.roots[i].center for i in self.selection]

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "roots": [
                {"re": repr(r.center.real), "im": repr(r.center.imag), "radius": repr(r.radius)} for r in self.roots
            ],
            "pairs": [list(p) for p in self.pairs],
            "selection": list(self.selection),
        }


def _refine(coeffs_desc: list, z: complex) -> tuple[complex, float]:
    with mpmath.workdps(60):
        p = [mpmath.mpf(c) for c in coeffs_desc]
        dp = [mpmath.mpf(c * (len(p) - 1 - i)) for i, c in enumerate(p[:-1])]
        x = mpmath.mpc(z)
        for _ in range(60):
            fx = mpmath.polyval(p, x)
            dfx = mpmath.polyval(dp, x)
            if dfx == 0:
                raise RootIsolationError("vanishing derivative during refinement")
            step = fx / dfx
            x -= step
            if abs(step) < mpmath.mpf(10) ** -50:
                break
        # the disc is centred on the double-precision value we keep
        z = complex(x)
        xz = mpmath.mpc(z.real, z.imag)
        fx = mpmath.polyval(p, xz)
        dfx = mpmath.polyval(dp, xz)
        # a disc of radius deg*|f/f'| around z contains a root
        radius = (len(p) - 1) * abs(fx) / abs(dfx)
        return z, float(radius) * 2 + 1e-300


def isolate_roots(f, selection: Sequence[int] | None = None) -> RootSystem:
    """Disjoint discs around all roots, paired by complex conjugation."""
    import numpy as np

    f = _as_poly(f)
    rep = check_property_P(f)
    if not rep.holds:
        raise PropertyPError(f"{f}: {rep.diagnosis}")
    desc = list(reversed(f.coefficients))
    approx = np.roots(np.array(desc, dtype=float))
    refined = [_refine(desc, complex(z)) for z in approx]
    upper = sorted((r for r in refined if r[0].imag > 0), key=lambda t: (round(t[0].real, 12), t[0].imag))
    n = f.degree // 2
    if len(upper) != n:
        raise RootIsolationError("could not split roots into conjugate pairs")
    discs = [RootDisc(z, r) for z, r in upper] + [RootDisc(z.conjugate(), r) for z, r in upper]
    for i, a in enumerate(discs):
        if abs(a.center.imag) <= a.radius:
            raise RootIsolationError(f"disc {i} meets the real axis")
        for j in range(i):
            b = discs[j]
            if abs(a.center - b.center) <= a.radius + b.radius:
                raise RootIsolationError(f"discs {j} and {i} overlap")
    # every disc holds a root and there are exactly deg disjoint discs
    for z, _ in refined:
        if not any(abs(z - d.center) <= d.radius + 1e-12 * max(1.0, abs(z)) for d in discs):
            raise RootIsolationError("refined root outside the isolating discs")
    pairs = tuple((i, i + n) for i in range(n))
    rs = RootSystem(f.degree, tuple(discs), pairs, tuple(range(n)))
    return rs.with_selection(selection) if selection is not None else rs


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionCounts:
    """N = #(diagonal ∩ graph), det_phi = #(graph ∩ T x 0)."""

    N: int
    det_phi: int

    @property
    def M(self) -> int:
        """Extra points y_j besides the origin on graph ∩ (T x 0)."""
        return self.det_phi - 1

    def as_dict(self) -> dict:
        return {"N": self.N, "det_phi": self.det_phi, "M": self.M}


def intersection_counts(phi: Sequence[Sequence[int]]) -> IntersectionCounts:
    """Transversal point counts |det(phi - I)| and |det(phi)|."""
    m = len(phi)
    I = identity(m)
    d1 = det([[phi[i][j] - I[i][j] for j in range(m)] for i in range(m)])
    d0 = det(phi)
    if d1 == 0:
        raise TransversalityError("det(phi - I) = 0: diagonal and graph are not transverse")
    if d0 == 0:
        raise TransversalityError("det(phi) = 0: graph and T x 0 are not transverse")
    return IntersectionCounts(abs(int(d1)), abs(int(d0)))


def companion(f) -> list[list[int]]:
    """Integer companion matrix whose characteristic polynomial is f."""
    f = _as_poly(f)
    m = f.degree
    C = [[0] * m for _ in range(m)]
    for i in range(1, m):
        C[i][i - 1] = 1
    for i in range(m):
        C[i][m - 1] = -f.coefficients[i]
    return C


def charpoly(M: Sequence[Sequence[int]]) -> IntPolynomial:
    """Characteristic polynomial via Faddeev-LeVerrier (exact)."""
    n = len(M)
    A = [[Fraction(x) for x in r] for r in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = A (M_{k-1} + c_{n-k+1} I)
        prev = [[Mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(A[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return IntPolynomial(tuple(int(c) for c in coeffs))


def galois_orbit_generators(degree: int) -> list[tuple]:
    """Generators (a transposition and an m-cycle) of the full symmetric group."""
    if degree < 2:
        return []
    t = list(range(degree))
    t[0], t[1] = 1, 0
    cyc = [(i + 1) % degree for i in range(degree)]
    return [tuple(t), tuple(cyc)]


def conjugation_sanity(rs: RootSystem) -> float:
    """Max distance between roots[i] and conj(roots[i + n])."""
    n = rs.n
    return max(abs(rs.roots[i].center - rs.roots[i + n].center.conjugate()) for i in range(n))


def root_product(rs: RootSystem) -> complex:
    out = complex(1)
    for r in rs.roots:
        out *= r.center
    return out


__all__ = [
    "IntPolynomial",
    "sturm_real_root_count",
    "check_property_P",
    "discriminant",
    "factor_pattern_mod_p",
    "resolvent_cubic",
    "certify_symmetric_galois",
    "isolate_roots",
    "intersection_counts",
    "companion",
    "charpoly",
]
