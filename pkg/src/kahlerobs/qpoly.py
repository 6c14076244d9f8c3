"""Dense univariate polynomials over Q as coefficient tuples.

A polynomial is a tuple of :class:`fractions.Fraction` (or ``int``) with the
constant term first and no trailing zeros; the zero polynomial is ``()``.
These helpers are shared by the Sturm/Galois code and by the polynomial
Smith form used for similarity testing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

QPoly = tuple


def trim(p: Sequence) -> QPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def deg(p: QPoly) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def lead(p: QPoly) -> Fraction:
    return p[-1]


def add(p: QPoly, q: QPoly) -> QPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: QPoly) -> QPoly:
    return tuple(-c for c in p)


def sub(p: QPoly, q: QPoly) -> QPoly:
    return add(p, neg(q))


def scale(p: QPoly, c) -> QPoly:
    return trim([c * a for a in p])


def mul(p: QPoly, q: QPoly) -> QPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def shift(p: QPoly, k: int) -> QPoly:
    """Multiply by x**k."""
    return trim([0] * k + list(p)) if p else ()


def divmod_poly(p: QPoly, q: QPoly) -> tuple[QPoly, QPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = deg(q)
    lq = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        c = r[-1] / lq
        k = len(r) - 1 - dq
        quot[k] = c
        for i, b in enumerate(q):
            r[k + i] -= c * b
        r = list(trim(r))
    return trim(quot), trim(r)


def rem(p: QPoly, q: QPoly) -> QPoly:
    return divmod_poly(p, q)[1]


def monic(p: QPoly) -> QPoly:
    if not p:
        return p
    return scale(p, 1 / Fraction(p[-1]))


def gcd(p: QPoly, q: QPoly) -> QPoly:
    p, q = trim(p), trim(q)
    while q:
        p, q = q, rem(p, q)
    return monic(p)


def derivative(p: QPoly) -> QPoly:
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p: QPoly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def from_ints(coeffs: Sequence[int]) -> QPoly:
    return trim(coeffs)


def to_str(p: QPoly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if i == 0:
            body = f"{mag}"
        else:
            coeff = "" if mag == 1 else f"{mag}*"
            body = f"{coeff}{var}" + (f"^{i}" if i > 1 else "")
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
