"""Exact univariate polynomial utilities: gcd, Sturm chains, real root counts.

Polynomials are coefficient lists (ascending powers) of Fractions.  Used by
the nondegeneracy decision in dimension <= 2, where the face polynomials
reduce to one variable.
"""

from __future__ import annotations

from fractions import Fraction


def trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def degree(p: list[Fraction]) -> int:
    p = trim(p)
    return len(p) - 1 if p else -1


def derivative(p: list[Fraction]) -> list[Fraction]:
    return trim([Fraction(k) * c for k, c in enumerate(p)][1:])


def divmod_poly(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num, den = trim(list(num)), trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    r = list(num)
    dlead = den[-1]
    while len(r) >= len(den) and trim(r):
        shift = len(r) - len(den)
        coeff = r[-1] / dlead
        q[shift] = coeff
        for i, c in enumerate(den):
            r[shift + i] -= coeff * c
        r = trim(r)
    return trim(q), r


def gcd_poly(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, rem = divmod_poly(a, b)
        a, b = b, rem
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def strip_root_at_zero(p: list[Fraction]) -> list[Fraction]:
    p = trim(list(p))
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return p[k:]


def eval_poly(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    p = trim(list(p))
    chain = [p, derivative(p)]
    while trim(chain[-1]):
        _, rem = divmod_poly(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return [c for c in chain if trim(c)]


def _sign_at_inf(p: list[Fraction], positive: bool) -> int:
    p = trim(p)
    if not p:
        return 0
    lead = p[-1]
    s = 1 if lead > 0 else -1
    if not positive and (len(p) - 1) % 2 == 1:
        s = -s
    return s


def count_real_roots(p: list[Fraction]) -> int:
    """Distinct real roots of p over (-inf, inf); zero polynomial -> error."""
    p = trim(list(p))
    if not p:
        raise ValueError("zero polynomial has infinitely many roots")
    if len(p) == 1:
        return 0
    chain = sturm_chain(p)

    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)

    neg = variations([_sign_at_inf(q, positive=False) for q in chain])
    pos = variations([_sign_at_inf(q, positive=True) for q in chain])
    return neg - pos


def has_nonzero_real_root(p: list[Fraction]) -> bool:
    """Does p have a real root different from 0?"""
    stripped = strip_root_at_zero(p)
    if degree(stripped) < 1:
        return False
    return count_real_roots(stripped) > 0
