"""Dense univariate polynomials with exact integer coefficients.

Coefficients are stored lowest degree first with no trailing zeros; the
zero polynomial has an empty coefficient tuple.  Everything here is exact:
no floating point enters any code path.
"""

from __future__ import annotations

from math import gcd, isqrt

from itertools import combinations

from ..errors import DomainError
from .integers import primes_up_to
from .matrix import det_int as _bareiss_det
from .rationals import QQ


class BigIntPoly:
    """Immutable polynomial in one variable over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("BigIntPoly is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return isinstance(other, BigIntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return BigIntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BigIntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return BigIntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return BigIntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        result = BigIntPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_x(self, a: int) -> "BigIntPoly":
        """f(x + a)."""
        out = BigIntPoly(())
        for c in reversed(self.coeffs):
            out = out * BigIntPoly((a, 1)) + BigIntPoly((c,))
        return out

    def reverse_sign(self) -> "BigIntPoly":
        """f(-x)."""
        return BigIntPoly(
            [c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)]
        )

    def derivative(self) -> "BigIntPoly":
        return BigIntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_rational(self, num: int, den: int) -> int:
        """den^deg * f(num/den), an integer."""
        acc = 0
        p = 1
        for c in reversed(self.coeffs):
            acc = acc * num + c * p
            p *= den
        return acc

    # -- content and division ----------------------------------------------

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "BigIntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return BigIntPoly([c // g for c in self.coeffs])

    def divmod_exact(self, other: "BigIntPoly"):
        """Quotient and remainder over Q, requiring both to be integral."""
        q, r = _qq_divmod([QQ(c) for c in self.coeffs], [QQ(c) for c in other.coeffs])
        for c in q + r:
            if c.denominator != 1:
                raise DomainError("division not exact over the integers")
        return BigIntPoly([int(c) for c in q]), BigIntPoly([int(c) for c in r])

    def pseudo_rem(self, other: "BigIntPoly") -> "BigIntPoly":
        """prem(self, other): lc(other)^(da-db+1) * self mod other."""
        if other.is_zero():
            raise DomainError("pseudo-division by zero polynomial")
        a = list(self.coeffs)
        b = other.coeffs
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            return self
        lb = b[-1]
        for _ in range(da - db + 1):
            if len(a) - 1 < db:
                a = [c * lb for c in a]
                continue
            la = a[-1]
            a = [c * lb for c in a[:-1]]
            for i in range(db):
                a[len(a) - db + i] -= la * b[i]
            while a and a[-1] == 0:
                a.pop()
        return BigIntPoly(a)

    # -- display -------------------------------------------------------------

    def __repr__(self):
        return f"BigIntPoly({list(self.coeffs)})"

    def __str__(self):
        return poly_to_string(self)


def _coerce(x) -> BigIntPoly:
    if isinstance(x, BigIntPoly):
        return x
    if isinstance(x, int):
        return BigIntPoly((x,))
    raise TypeError(f"cannot coerce {type(x).__name__} to BigIntPoly")


X = BigIntPoly((0, 1))


def poly_to_string(f: BigIntPoly, var: str = "x") -> str:
    """Canonical human/machine form, e.g. 'x^3 - 3*x - 1'."""
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            xs = var if i == 1 else f"{var}^{i}"
            body = xs if mag == 1 else f"{mag}*{xs}"
        parts.append((sign, body))
    sign0, body0 = parts[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- rational-coefficient helpers (lists of QQ, lowest degree first) ---------


def qq_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qq_divmod(a: list, b: list):
    b = qq_trim(list(b))
    if not b:
        raise DomainError("polynomial division by zero")
    a = qq_trim(list(a))
    q = [QQ(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / QQ(b[-1])
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        qq_trim(a)
    return qq_trim(q), a


def qq_divmod(a, b):
    """Division with remainder for rational-coefficient lists."""
    return _qq_divmod([QQ(c) for c in a], [QQ(c) for c in b])


def qq_mul(a, b):
    if not a or not b:
        return []
    out = [QQ(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return qq_trim(out)


def qq_add(a, b):
    out = [QQ(c) for c in (a if len(a) >= len(b) else b)]
    small = b if len(a) >= len(b) else a
    for i, c in enumerate(small):
        out[i] += c
    return qq_trim(out)


def qq_ext_gcd(a, b):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = [QQ(c) for c in a], [QQ(c) for c in b]
    s0, s1 = [QQ(1)], []
    t0, t1 = [], [QQ(1)]
    while qq_trim(r1):
        q, r = _qq_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, qq_add(s0, [-c for c in qq_mul(q, s1)])
        t0, t1 = t1, qq_add(t0, [-c for c in qq_mul(q, t1)])
    if r0:
        inv = 1 / r0[-1]
        r0 = [c * inv for c in r0]
        s0 = [c * inv for c in s0]
        t0 = [c * inv for c in t0]
    return r0, s0, t0


# -- gcd, resultant, discriminant --------------------------------------------


def poly_gcd(f: BigIntPoly, g: BigIntPoly) -> BigIntPoly:
    """Primitive gcd over Q, normalized to positive leading coefficient."""
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a.pseudo_rem(b).primitive()
        a, b = b, r
    return a.primitive()


def is_squarefree(f: BigIntPoly) -> bool:
    if f.is_zero():
        raise DomainError("squarefree test of zero polynomial")
    return poly_gcd(f, f.derivative()).degree == 0


def squarefree_part(f: BigIntPoly) -> BigIntPoly:
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return f.primitive()
    q, r = f.primitive().divmod_exact(g)
    if not r.is_zero():
        raise DomainError("squarefree part division failed")
    return q.primitive()


def resultant(f: BigIntPoly, g: BigIntPoly) -> int:
    """Res(f, g) via the Sylvester matrix with exact elimination."""
    if f.is_zero() or g.is_zero():
        return 0
    m, n = f.degree, g.degree
    if m == 0:
        return f.lc() ** n
    if n == 0:
        return g.lc() ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def poly_discriminant(f: BigIntPoly) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    if f.is_zero():
        raise DomainError("discriminant of the zero polynomial")
    n = f.degree
    if n == 0:
        raise DomainError("discriminant of a constant polynomial")
    if n == 1:
        return 1
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    d, rem = divmod(sign * res, f.lc())
    if rem:
        raise DomainError("non-integral discriminant (internal error)")
    return d


def root_bound(f: BigIntPoly) -> int:
    """Integer Cauchy bound: all real roots lie in (-B, B)."""
    if f.degree < 1:
        raise DomainError("root bound needs degree >= 1")
    lc = abs(f.lc())
    m = max(abs(c) for c in f.coeffs[:-1]) if f.degree >= 1 else 0
    return 1 + (m + lc - 1) // lc


# -- factorization over Z ------------------------------------------------------


def _l2_norm_sq(f: BigIntPoly) -> int:
    return sum(c * c for c in f.coeffs)


def _factor_bound(f: BigIntPoly) -> int:
    """Landau-Mignotte style bound on coefficients of any factor of f."""
    n = f.degree
    norm = isqrt(_l2_norm_sq(f)) + 1
    return (1 << n) * norm * abs(f.lc())


def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step: from f=gh, sg+th=1 (mod m) to mod m^2.

    f, g monic*: g monic; h has possibly non-unit lc mod m but f = g*h mod m.
    Here f is monic and both g, h monic, which the caller arranges.
    """
    mm = m * m

    def red(p):
        return BigIntPoly([c % mm for c in p.coeffs])

    e = red(f - g * h)
    q, r = _poly_divmod_mod(e * s, h, mm)
    g1 = red(g + e * t + q * g)
    h1 = red(h + r)
    b = red(s * g1 + t * h1 - BigIntPoly((1,)))
    c, d = _poly_divmod_mod(s * b, h1, mm)
    s1 = red(s - d)
    t1 = red(t - t * b - c * g1)
    return g1, h1, s1, t1


def _poly_divmod_mod(a: BigIntPoly, b: BigIntPoly, m: int):
    """Division of a by monic-mod-m polynomial b, coefficients mod m."""
    bc = [c % m for c in b.coeffs]
    while bc and bc[-1] == 0:
        bc.pop()
    lead_inv = pow(bc[-1], -1, m)
    ac = [c % m for c in a.coeffs]
    while ac and ac[-1] == 0:
        ac.pop()
    db = len(bc) - 1
    q = [0] * max(len(ac) - db, 0)
    while len(ac) - 1 >= db:
        c = ac[-1] * lead_inv % m
        k = len(ac) - 1 - db
        q[k] = c
        for i in range(db + 1):
            ac[k + i] = (ac[k + i] - c * bc[i]) % m
        while ac and ac[-1] == 0:
            ac.pop()
    return BigIntPoly(q), BigIntPoly(ac)


def _hensel_lift_tree(f: BigIntPoly, facs: list[BigIntPoly], p: int, target: int):
    """Lift a coprime monic factorization of monic f from mod p to mod p^k >= target."""
    from .modp import poly_ext_gcd_mod

    if len(facs) == 1:
        return [BigIntPoly([c % target for c in f.coeffs])]
    half = len(facs) // 2
    gs, hs = facs[:half], facs[half:]
    g = BigIntPoly((1,))
    for x in gs:
        g = g * x
    h = BigIntPoly((1,))
    for x in hs:
        h = h * x
    g = BigIntPoly([c % p for c in g.coeffs])
    h = BigIntPoly([c % p for c in h.coeffs])
    gg, ss, tt = poly_ext_gcd_mod(tuple(g.coeffs), tuple(h.coeffs), p)
    if len(gg) != 1:
        raise DomainError("factors not coprime mod p in Hensel lift")
    inv = pow(gg[0], -1, p)
    s = BigIntPoly([c * inv % p for c in ss])
    t = BigIntPoly([c * inv % p for c in tt])
    m = p
    while m < target:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m = m * m
    # recurse with modulus m (>= target)
    left = _hensel_lift_tree(g, gs, p, target) if len(gs) > 1 else [g]
    right = _hensel_lift_tree(h, hs, p, target) if len(hs) > 1 else [h]
    return left + right


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if 2 * c > m else c


def _factor_squarefree_monic_z(f: BigIntPoly) -> list[BigIntPoly]:
    from . import modp

    n = f.degree
    if n <= 1:
        return [f]
    for p in primes_up_to(2000):
        if f.lc() % p:
            fp = tuple(c % p for c in f.coeffs)
            if modp.poly_is_squarefree_mod(fp, p):
                break
    else:  # pragma: no cover - would need a pathological polynomial
        raise DomainError("no suitable prime found for factorization")
    mod_factors = modp.factor_squarefree_mod(tuple(c % p for c in f.coeffs), p)
    if len(mod_factors) == 1:
        return [f]
    bound = 2 * _factor_bound(f) + 1
    target = p
    while target < bound:
        target *= target
    lifted = _hensel_lift_tree(
        f, [BigIntPoly(g) for g in mod_factors], p, target
    )
    modulus = target
    # subset recombination
    remaining = list(range(len(lifted)))
    factors: list[BigIntPoly] = []
    rest = f
    size = 1
    while 2 * size <= len(remaining):
        found = True
        while found:
            found = False
            for combo in combinations(remaining, size):
                prod = BigIntPoly((1,))
                for i in combo:
                    prod = prod * lifted[i]
                cand = BigIntPoly(
                    [_symmetric(c, modulus) for c in prod.coeffs]
                )
                q = _try_divide(rest, cand)
                if q is not None:
                    factors.append(cand)
                    rest = q
                    remaining = [i for i in remaining if i not in combo]
                    found = True
                    break
        size += 1
    if rest.degree > 0:
        factors.append(rest)
    return sorted(factors, key=lambda g: (g.degree, g.coeffs))


def _try_divide(f: BigIntPoly, g: BigIntPoly):
    """Exact quotient f/g over the integers, or None."""
    if g.degree < 1 or g.degree > f.degree:
        return None
    try:
        q, r = f.divmod_exact(g)
    except DomainError:
        return None
    return q if r.is_zero() else None


def factor_z(f: BigIntPoly) -> list[tuple[BigIntPoly, int]]:
    """Factor a nonzero integer polynomial into irreducibles over Q.

    Returns (primitive irreducible factor, multiplicity) pairs sorted by
    (degree, coefficients); the integer content is dropped.
    """
    if f.is_zero():
        raise DomainError("factorization of the zero polynomial")
    f = f.primitive()
    if f.degree <= 0:
        return []
    pairs = []
    for irr in _factor_squarefree_any_lc(squarefree_part(f)):
        mult = 0
        g = f
        while True:
            q = _try_divide(g, irr)
            if q is None:
                break
            mult += 1
            g = q.primitive()
        pairs.append((irr, mult))
    return sorted(pairs, key=lambda t: (t[0].degree, t[0].coeffs))


def _factor_squarefree_any_lc(f: BigIntPoly) -> list[BigIntPoly]:
    lc = f.lc()
    if lc < 0:
        f = -f
        lc = -lc
    if lc == 1:
        return _factor_squarefree_monic_z(f)
    n = f.degree
    # F(x) = lc^(n-1) f(x/lc) is monic with integer coefficients
    F = BigIntPoly([c * lc ** (n - 1 - i) for i, c in enumerate(f.coeffs)])
    out = []
    for g in _factor_squarefree_monic_z(F):
        gg = BigIntPoly([c * lc**i for i, c in enumerate(g.coeffs)])
        out.append(gg.primitive())
    return out


def is_irreducible_z(f: BigIntPoly) -> bool:
    f = f.primitive()
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    if not is_squarefree(f):
        return False
    return len(_factor_squarefree_any_lc(f)) == 1
