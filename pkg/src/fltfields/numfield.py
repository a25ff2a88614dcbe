"""Number fields and their elements.

A NumberField is built from a monic irreducible integer polynomial; its
maximal order is certified by Dedekind's criterion plus Round-2 enlargement.
Elements carry exact rational coordinates over the integral basis, so norms,
traces, signs under real embeddings, and integrality tests are all exact.
"""

from __future__ import annotations

from math import gcd

from .errors import CapError, DomainError
from .exact.integers import factorint, is_square
from .exact.matrix import det_int, det_qq, invert_qq, mat_mul_qq
from .exact.poly import (
    BigIntPoly,
    factor_z,
    is_irreducible_z,
    poly_discriminant,
    poly_to_string,
    qq_divmod,
    qq_mul,
)
from .exact.rationals import QQ, RationalInterval
from .exact.roots import count_real_roots, isolate_real_roots, refine_root, sign_of_value
from .maxorder import Order, maximal_order, power_basis_order

DEGREE_CAP = 12


class NumberField:
    """A number field Q[x]/(f) with a certified maximal order."""

    def __init__(self, f: BigIntPoly, order: Order, *, _disc_f: int | None = None):
        self.poly = f
        self.degree = f.degree
        n = self.degree
        self._order = order
        self.basis_mat = order.basis_qq()  # rows = integral basis over power basis
        self.basis_inv = invert_qq(self.basis_mat)
        disc_f = _disc_f if _disc_f is not None else poly_discriminant(f)
        self._disc_poly = disc_f

        # power sums of the roots, for fast traces
        self._power_sums = _power_sums(f, 2 * n)

        # multiplication table over the integral basis (integer vectors)
        self.mult_table = self._build_mult_table()
        self.trace_vec = [self._trace_of_basis(i) for i in range(n)]
        self.trace_form = [
            [self._trace_basis_product(i, j) for j in range(n)] for i in range(n)
        ]
        self.disc = det_int(self.trace_form)
        if self.disc == 0:
            raise DomainError("degenerate trace form (reducible polynomial?)")
        idx2, rem = divmod(disc_f, self.disc)
        if rem or not is_square(idx2):
            raise DomainError("disc(f) != index^2 * disc(K) (internal error)")
        self.index = _isqrt_exact(idx2)

        r = count_real_roots(f)
        self.signature = (r, (n - r) // 2)
        self.real_root_intervals = isolate_real_roots(f) if r else []
        # conjugation data for CM fields; populated by the quadratic-extension
        # constructor, and here for imaginary quadratic fields directly
        self.conj_matrix = None
        if self.signature == (0, 1):
            a = QQ(f[1])
            self.set_conjugation_theta_image([-a, QQ(-1)])

    # -- construction helpers ------------------------------------------------

    def _build_mult_table(self):
        n = self.degree
        f = self.poly
        table = [[None] * n for _ in range(n)]
        basis = self.basis_mat
        inv = self.basis_inv
        for i in range(n):
            for j in range(i + 1):
                prod = qq_mul(list(basis[i]), list(basis[j]))
                if len(prod) > n:
                    _, prod = qq_divmod(prod, [QQ(c) for c in f.coeffs])
                prod = list(prod) + [QQ(0)] * (n - len(prod))
                coords = [
                    sum(prod[k] * inv[k][t] for k in range(n)) for t in range(n)
                ]
                vec = []
                for c in coords:
                    if c.denominator != 1:
                        raise DomainError(
                            "integral basis is not multiplicatively closed"
                        )
                    vec.append(int(c))
                table[i][j] = table[j][i] = tuple(vec)
        return table

    def _trace_power_coords(self, coords) -> "QQ":
        return sum(QQ(c) * self._power_sums[k] for k, c in enumerate(coords))

    def _trace_of_basis(self, i) -> int:
        t = self._trace_power_coords(self.basis_mat[i])
        if t.denominator != 1:
            raise DomainError("non-integral trace of integral basis element")
        return int(t)

    def _trace_basis_product(self, i, j) -> int:
        prod = qq_mul(list(self.basis_mat[i]), list(self.basis_mat[j]))
        if len(prod) > self.degree:
            _, prod = qq_divmod(prod, [QQ(c) for c in self.poly.coeffs])
        t = self._trace_power_coords(prod)
        if t.denominator != 1:
            raise DomainError("non-integral trace pairing")
        return int(t)

    # -- elements --------------------------------------------------------------

    def element(self, coords) -> "AlgebraicNumber":
        return AlgebraicNumber(self, coords)

    def zero(self):
        return self.element([0] * self.degree)

    def one(self):
        return self.from_power_coords([1] + [0] * (self.degree - 1))

    def from_int(self, c: int):
        return self.from_power_coords([c] + [0] * (self.degree - 1))

    def gen(self):
        """theta, the root of the defining polynomial."""
        if self.degree == 1:
            # theta is the rational root of the linear polynomial
            return self.from_power_coords([QQ(-self.poly[0], self.poly[1])])
        return self.from_power_coords([0, 1] + [0] * (self.degree - 2))

    def from_power_coords(self, coords):
        coords = list(coords) + [QQ(0)] * (self.degree - len(coords))
        v = [
            sum(QQ(coords[k]) * self.basis_inv[k][t] for k in range(self.degree))
            for t in range(self.degree)
        ]
        return AlgebraicNumber(self, v)

    # -- invariants ----------------------------------------------------------

    def is_totally_real(self) -> bool:
        return self.signature[1] == 0

    def is_cm(self) -> bool:
        return self.signature[0] == 0 and self.conj_matrix is not None

    def t2_gram(self):
        """Gram matrix of the T2 form Tr(x * conj(y)) over the integral basis.

        Exact and positive definite for totally real and CM fields, the two
        shapes this package works in.
        """
        if self.is_totally_real():
            return [list(r) for r in self.trace_form]
        if self.conj_matrix is None:
            raise DomainError("T2 form needs a totally real or CM field")
        n = self.degree
        conj = self.conj_matrix
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                # Tr(w_i * conj(w_j)) with conj(w_j) = sum_k conj[j][k] w_k
                s = 0
                for k in range(n):
                    if conj[j][k]:
                        s += conj[j][k] * self.trace_form[i][k]
                gram[i][j] = s
        return gram

    def set_conjugation_theta_image(self, theta_img_power):
        """Install complex conjugation given conj(theta) in power coordinates.

        Validates that conjugation preserves the maximal order and is an
        involution; stores the integral-basis coordinate matrix.
        """
        n = self.degree
        fq = [QQ(c) for c in self.poly.coeffs]
        rows = [[QQ(1)] + [QQ(0)] * (n - 1)]
        cur = rows[0]
        img = list(theta_img_power) + [QQ(0)] * (n - len(theta_img_power))
        for _ in range(1, n):
            cur = qq_mul(cur, img)
            if len(cur) > n:
                _, cur = qq_divmod(cur, fq)
            cur = list(cur) + [QQ(0)] * (n - len(cur))
            rows.append(cur)
        # coords v (integral) -> power -> substitute -> back to integral
        m = mat_mul_qq(mat_mul_qq(self.basis_mat, rows), self.basis_inv)
        conj = []
        for row in m:
            out = []
            for c in row:
                if c.denominator != 1:
                    raise DomainError("conjugation does not preserve the order")
                out.append(int(c))
            conj.append(out)
        # involution check
        sq = [[sum(conj[i][k] * conj[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        if any(sq[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
            raise DomainError("conjugation is not an involution")
        self.conj_matrix = conj

    def conjugate(self, x: "AlgebraicNumber") -> "AlgebraicNumber":
        if self.conj_matrix is None:
            raise DomainError("field has no conjugation data")
        n = self.degree
        v = x.coords
        return AlgebraicNumber(
            self,
            [sum(v[i] * self.conj_matrix[i][t] for i in range(n)) for t in range(n)],
        )

    def poly_string(self) -> str:
        return poly_to_string(self.poly)

    def __repr__(self):
        return f"NumberField({self.poly_string()})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    # -- embeddings ------------------------------------------------------------

    def refine_embeddings(self, width):
        self.real_root_intervals = [
            refine_root(self.poly, iv, width) for iv in self.real_root_intervals
        ]

    def embedding_floats(self, width=QQ(1, 10**12)) -> list[float]:
        self.refine_embeddings(width)
        return [float(iv.mid()) for iv in self.real_root_intervals]


class AlgebraicNumber:
    """Element of a NumberField, as exact coordinates over the integral basis."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent: NumberField, coords):
        coords = tuple(QQ(c) for c in coords)
        if len(coords) != parent.degree:
            raise DomainError("coordinate length != field degree")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *a):
        raise AttributeError("AlgebraicNumber is immutable")

    # -- ring operations ------------------------------------------------------

    def _check_same(self, other):
        if self.parent is not other.parent and self.parent != other.parent:
            raise DomainError("elements of different fields")

    def __add__(self, other):
        other = self._coerce(other)
        return AlgebraicNumber(
            self.parent, [a + b for a, b in zip(self.coords, other.coords)]
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return AlgebraicNumber(
            self.parent, [a - b for a, b in zip(self.coords, other.coords)]
        )

    def __neg__(self):
        return AlgebraicNumber(self.parent, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, int):
            return AlgebraicNumber(self.parent, [other * a for a in self.coords])
        other = self._coerce(other)
        n = self.parent.degree
        table = self.parent.mult_table
        out = [QQ(0)] * n
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        c = a * b
                        row = table[i][j]
                        for t in range(n):
                            if row[t]:
                                out[t] += c * row[t]
        return AlgebraicNumber(self.parent, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative powers not supported on ring elements")
        result = self.parent.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            self._check_same(other)
            return other
        if isinstance(other, int):
            return self.parent.from_int(other)
        raise TypeError(f"cannot combine AlgebraicNumber with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.parent.from_int(other)
        return (
            isinstance(other, AlgebraicNumber)
            and self.parent == other.parent
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.parent.poly, self.coords))

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise DomainError("element is not integral")
        return tuple(int(c) for c in self.coords)

    def power_coords(self):
        n = self.parent.degree
        basis = self.parent.basis_mat
        return [
            sum(self.coords[k] * basis[k][t] for k in range(n)) for t in range(n)
        ]

    def _regular_matrix(self):
        """Matrix of multiplication by self over the integral basis (rows)."""
        n = self.parent.degree
        table = self.parent.mult_table
        rows = []
        for j in range(n):
            out = [QQ(0)] * n
            for i, a in enumerate(self.coords):
                if a:
                    row = table[i][j]
                    for t in range(n):
                        if row[t]:
                            out[t] += a * row[t]
            rows.append(out)
        return rows

    def norm(self):
        """Field norm, an exact rational (exact integer for integral elements)."""
        return det_qq(self._regular_matrix())

    def trace(self):
        return sum(
            c * t for c, t in zip(self.coords, self.parent.trace_vec) if c
        )

    def t2_value(self):
        """T2(x) = sum over embeddings of |x|^2; exact for real/CM fields."""
        g = self.parent.t2_gram()
        n = self.parent.degree
        v = self.coords
        total = QQ(0)
        for i in range(n):
            if v[i]:
                total += v[i] * v[i] * g[i][i]
                for j in range(i + 1, n):
                    if v[j]:
                        total += 2 * v[i] * v[j] * g[i][j]
        return total

    # -- real-embedding signs -----------------------------------------------------

    def _integer_power_poly(self):
        """Power-basis numerator polynomial and its positive denominator."""
        pc = self.power_coords()
        den = 1
        for c in pc:
            den = den * c.denominator // gcd(den, c.denominator)
        return BigIntPoly([int(c * den) for c in pc]), den

    def signs_at_real_embeddings(self) -> list[int]:
        """Exact sign of the element under each real embedding, ascending."""
        if self.is_zero():
            return [0] * self.parent.signature[0]
        num, _ = self._integer_power_poly()
        out = []
        for iv in self.parent.real_root_intervals:
            out.append(sign_of_value(num, self.parent.poly, iv))
        return out

    def is_totally_positive(self) -> bool:
        """True iff every real embedding is > 0 (exact decision)."""
        if not self.parent.is_totally_real():
            raise DomainError("totally-positive test needs a totally real field")
        if self.is_zero():
            raise DomainError("totally-positive test of zero")
        return all(s > 0 for s in self.signs_at_real_embeddings())

    def __repr__(self):
        return f"AlgebraicNumber({[str(c) for c in self.coords]})"


def _power_sums(f: BigIntPoly, upto: int):
    """Newton power sums s_k = sum of root^k, k = 0..upto, as rationals."""
    n = f.degree
    lc = f.lc()
    c = [QQ(f[i], lc) for i in range(n + 1)]  # monic normalization
    s = [QQ(n)]
    for k in range(1, upto + 1):
        if k <= n:
            acc = -k * c[n - k]
            for i in range(1, k):
                acc -= c[n - i] * s[k - i]
        else:
            acc = QQ(0)
            for i in range(1, n + 1):
                acc -= c[n - i] * s[k - i]
        s.append(acc)
    return s


def _isqrt_exact(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    if r * r != n:
        raise DomainError("expected a perfect square")
    return r


def _nonmax_candidate_primes(disc_f: int) -> list[int]:
    return [p for p, e in factorint(disc_f).items() if e >= 2]


def build_field(f: BigIntPoly, *, _check_irreducible: bool = True) -> NumberField:
    """Construct a number field with certified maximal order from monic f.

    Degree is capped at 12; inputs whose discriminant resists factoring in
    the supported range raise CapError rather than risking an uncertified
    order.
    """
    if f.is_zero() or f.degree < 1:
        raise DomainError("defining polynomial must have degree >= 1")
    if not f.is_monic():
        raise DomainError("defining polynomial must be monic")
    if f.degree > DEGREE_CAP:
        raise CapError(
            f"degree {f.degree} exceeds the computation cap {DEGREE_CAP}",
            limit=DEGREE_CAP,
            requested=f.degree,
        )
    if _check_irreducible:
        if f.degree > 1:
            factors = factor_z(f)
            if len(factors) != 1 or factors[0][1] != 1:
                g = factors[0][0]
                raise DomainError(
                    f"polynomial is reducible; factor: {poly_to_string(g)}"
                )
    disc_f = poly_discriminant(f)
    if disc_f == 0:
        raise DomainError("polynomial has a repeated root")
    order = maximal_order(f, _nonmax_candidate_primes(disc_f))
    return NumberField(f, order, _disc_f=disc_f)


def build_field_from_order(
    f: BigIntPoly, start: Order, candidate_primes
) -> NumberField:
    """Field construction when a starting order and the finitely many primes
    where it may fail to be maximal are already known (used for relative
    quadratic extensions, where this avoids factoring a huge poly disc)."""
    order = maximal_order(f, candidate_primes, start=start)
    disc_f = poly_discriminant(f)
    return NumberField(f, order, _disc_f=disc_f)


_RATIONAL_FIELD = None


def rational_field() -> NumberField:
    """The degree-1 field Q, defined by the polynomial x."""
    global _RATIONAL_FIELD
    if _RATIONAL_FIELD is None:
        _RATIONAL_FIELD = build_field(BigIntPoly((0, 1)))
    return _RATIONAL_FIELD
