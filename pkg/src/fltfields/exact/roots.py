"""Real-root isolation and refinement by Sturm sequences, fully exact.

Isolating intervals either are degenerate [r, r] at an exact rational root,
or have rational endpoints where the polynomial is nonzero with opposite
signs and contain exactly one real root.
"""

from __future__ import annotations

from ..errors import DomainError
from .poly import BigIntPoly, is_squarefree, poly_gcd, root_bound
from .rationals import QQ, RationalInterval


def sturm_chain(f: BigIntPoly) -> list[BigIntPoly]:
    """Sturm sequence of f; remainders are primitivized with positive scale."""
    chain = [f, f.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2].pseudo_rem(chain[-1])
        if r.is_zero():
            break
        # pseudo_rem multiplies by lc^(delta+1); flip sign back if that
        # factor was negative, then negate for the Sturm recurrence.
        delta = chain[-2].degree - chain[-1].degree
        lc = chain[-1].lc()
        if lc < 0 and (delta + 1) % 2 == 1:
            r = -r
        g = r.content()
        chain.append(BigIntPoly([-c // g for c in r.coeffs]))
    return chain


def _sign_at(f: BigIntPoly, x) -> int:
    v = f.eval_rational(x.numerator, x.denominator)
    return (v > 0) - (v < 0)


def _sign_at_inf(f: BigIntPoly, positive: bool) -> int:
    if f.is_zero():
        return 0
    lc = f.lc()
    s = (lc > 0) - (lc < 0)
    if not positive and f.degree % 2 == 1:
        s = -s
    return s


def _variations(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def count_roots_interval(chain: list[BigIntPoly], a, b) -> int:
    """Number of distinct real roots in (a, b] for a squarefree chain head."""
    va = _variations([_sign_at(g, QQ(a)) for g in chain])
    vb = _variations([_sign_at(g, QQ(b)) for g in chain])
    return va - vb


def count_real_roots(f: BigIntPoly) -> int:
    """Number of distinct real roots of f (multiplicities ignored)."""
    if f.is_zero():
        raise DomainError("root count of zero polynomial")
    g = poly_gcd(f, f.derivative())
    if g.degree > 0:
        f, _ = f.primitive().divmod_exact(g)
    if f.degree < 1:
        return 0
    chain = sturm_chain(f)
    vneg = _variations([_sign_at_inf(h, False) for h in chain])
    vpos = _variations([_sign_at_inf(h, True) for h in chain])
    return vneg - vpos


def isolate_real_roots(f: BigIntPoly) -> list[RationalInterval]:
    """Disjoint isolating intervals, one per real root, ascending.

    The input must be squarefree; callers separate multiple roots first.
    """
    if f.is_zero() or f.degree < 1:
        if f.is_zero():
            raise DomainError("cannot isolate roots of the zero polynomial")
        return []
    g = poly_gcd(f, f.derivative())
    if g.degree > 0:
        raise DomainError(f"polynomial is not squarefree; repeated factor {g}")
    chain = sturm_chain(f)
    bound = QQ(root_bound(f))  # strict: every real root lies in (-bound, bound)
    total = count_roots_interval(chain, -bound, bound)
    out: list[RationalInterval] = []

    def recurse(lo, hi, count):
        # invariant: f(lo) != 0, f(hi) != 0, count roots strictly inside
        if count == 0:
            return
        if count == 1:
            out.append(RationalInterval(lo, hi))
            return
        mid = (lo + hi) / 2
        if _sign_at(f, mid) == 0:
            out.append(RationalInterval(mid, mid))
            delta = (hi - lo) / 4
            while (
                count_roots_interval(chain, mid - delta, mid + delta) != 1
                or _sign_at(f, mid - delta) == 0
                or _sign_at(f, mid + delta) == 0
            ):
                delta /= 2
            left = count_roots_interval(chain, lo, mid - delta)
            recurse(lo, mid - delta, left)
            recurse(mid + delta, hi, count - 1 - left)
            return
        left = count_roots_interval(chain, lo, mid)
        recurse(lo, mid, left)
        recurse(mid, hi, count - left)

    recurse(-bound, bound, total)
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    return out


def refine_root(f: BigIntPoly, iv: RationalInterval, width) -> RationalInterval:
    """Shrink an isolating interval of f below the requested width."""
    if iv.lo == iv.hi:
        return iv
    lo, hi = iv.lo, iv.hi
    slo = _sign_at(f, lo)
    shi = _sign_at(f, hi)
    if slo == 0 or shi == 0 or slo == shi:
        raise DomainError("not a sign-change isolating interval")
    width = QQ(width)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign_at(f, mid)
        if sm == 0:
            return RationalInterval(mid, mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return RationalInterval(lo, hi)


def sign_of_value(f: BigIntPoly, root_poly: BigIntPoly, iv: RationalInterval):
    """Exact sign of f(alpha) where alpha is the root of root_poly in iv.

    Returns -1, 0, or 1.  f(alpha) = 0 is detected via a gcd test, so the
    interval refinement below always terminates.
    """
    g = poly_gcd(f, root_poly)
    if g.degree > 0:
        if iv.lo == iv.hi:
            if g.eval_rational(iv.lo.numerator, iv.lo.denominator) == 0:
                return 0
        elif count_roots_interval(sturm_chain(g), iv.lo, iv.hi) > 0:
            # alpha is also a root of g, hence of f
            return 0
    cur = iv
    while True:
        if cur.lo == cur.hi:
            v = f.eval_rational(cur.lo.numerator, cur.lo.denominator)
            return (v > 0) - (v < 0)
        val = eval_on_interval(f, cur)
        s = val.sign()
        if s is not None:
            return s
        cur = refine_root(root_poly, cur, cur.width() / 4)


def eval_on_interval(f: BigIntPoly, iv: RationalInterval) -> RationalInterval:
    """Interval extension of f via Horner in interval arithmetic."""
    acc = RationalInterval(0, 0)
    for c in reversed(f.coeffs):
        acc = acc * iv
        acc = RationalInterval(acc.lo + c, acc.hi + c)
    return acc
