"""Integral ideals in HNF, prime splitting, valuations, and the S/T/V sets
attached to the splitting of a rational prime.

Ideals always live over the certified maximal order of their field.  Prime
splitting uses the Dedekind factorization when the prime does not divide the
index, and the quotient-algebra (radical + idempotent splitting) method when
it does.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DomainError
from .exact.integers import is_prime
from .exact.matrix import hnf
from .exact.modp import roots_mod
from .exact.poly import BigIntPoly
from .exact.rationals import QQ
from .numfield import AlgebraicNumber, NumberField
from .relquad import RelativeQuadraticData


def _vec_mul_int(K: NumberField, a, b):
    """Product of two integral coordinate vectors, staying in integers."""
    n = K.degree
    table = K.mult_table
    out = [0] * n
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n):
                bj = b[j]
                if bj:
                    row = table[i][j]
                    c = ai * bj
                    for t in range(n):
                        if row[t]:
                            out[t] += c * row[t]
    return out


class IntegralIdeal:
    """Nonzero integral ideal, stored as a full-rank row HNF basis."""

    __slots__ = ("parent", "hnf_rows", "norm")

    def __init__(self, parent: NumberField, rows, *, _already_hnf=False):
        n = parent.degree
        if _already_hnf:
            h = [list(r) for r in rows]
        else:
            h = [r for r in hnf(rows).tolists() if any(r)]
        if len(h) != n:
            raise DomainError("ideal basis does not have full rank")
        norm = 1
        for i in range(n):
            if h[i][i] == 0:
                raise DomainError("ideal HNF is not triangular (rank defect)")
            norm *= h[i][i]
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "hnf_rows", tuple(tuple(r) for r in h))
        object.__setattr__(self, "norm", norm)

    def __setattr__(self, *a):
        raise AttributeError("IntegralIdeal is immutable")

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def from_generators(K: NumberField, gens) -> "IntegralIdeal":
        rows = []
        n = K.degree
        basis_vecs = [[1 if t == i else 0 for t in range(n)] for i in range(n)]
        for g in gens:
            if isinstance(g, int):
                g = K.from_int(g)
            gc = g.int_coords()
            for w in basis_vecs:
                rows.append(_vec_mul_int(K, gc, w))
        return IntegralIdeal(K, rows)

    @staticmethod
    def principal(g: AlgebraicNumber) -> "IntegralIdeal":
        if g.is_zero():
            raise DomainError("zero element generates the zero ideal")
        return IntegralIdeal.from_generators(g.parent, [g])

    @staticmethod
    def whole_ring(K: NumberField) -> "IntegralIdeal":
        n = K.degree
        return IntegralIdeal(
            K, [[1 if i == j else 0 for j in range(n)] for i in range(n)],
            _already_hnf=True,
        )

    @staticmethod
    def from_int(K: NumberField, m: int) -> "IntegralIdeal":
        if m == 0:
            raise DomainError("zero ideal")
        m = abs(m)
        n = K.degree
        return IntegralIdeal(
            K, [[m if i == j else 0 for j in range(n)] for i in range(n)],
            _already_hnf=True,
        )

    # -- arithmetic ---------------------------------------------------------------

    def __mul__(self, other: "IntegralIdeal") -> "IntegralIdeal":
        if self.parent != other.parent:
            raise DomainError("ideals of different fields")
        rows = []
        for a in self.hnf_rows:
            for b in other.hnf_rows:
                rows.append(_vec_mul_int(self.parent, a, b))
        return IntegralIdeal(self.parent, rows)

    def __add__(self, other: "IntegralIdeal") -> "IntegralIdeal":
        if self.parent != other.parent:
            raise DomainError("ideals of different fields")
        return IntegralIdeal(
            self.parent, [list(r) for r in self.hnf_rows + other.hnf_rows]
        )

    def __pow__(self, e: int) -> "IntegralIdeal":
        if e < 0:
            raise DomainError("negative ideal powers not supported")
        result = IntegralIdeal.whole_ring(self.parent)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- membership -----------------------------------------------------------------

    def reduce_vec(self, v) -> list[int]:
        """Reduce an integer coordinate vector modulo the ideal lattice."""
        v = list(v)
        n = self.parent.degree
        for i in range(n):
            d = self.hnf_rows[i][i]
            q = v[i] // d
            if q:
                row = self.hnf_rows[i]
                for t in range(i, n):
                    v[t] -= q * row[t]
        return v

    def contains_vec(self, v) -> bool:
        return not any(self.reduce_vec(v))

    def contains(self, x: AlgebraicNumber) -> bool:
        if not x.is_integral():
            return False
        return self.contains_vec(x.int_coords())

    def contains_ideal(self, other: "IntegralIdeal") -> bool:
        return all(self.contains_vec(list(r)) for r in other.hnf_rows)

    def element(self, coords_in_basis) -> AlgebraicNumber:
        """The element with the given coordinates over the ideal's HNF basis."""
        n = self.parent.degree
        v = [0] * n
        for c, row in zip(coords_in_basis, self.hnf_rows):
            if c:
                for t in range(n):
                    v[t] += c * row[t]
        return self.parent.element(v)

    def __eq__(self, other):
        return (
            isinstance(other, IntegralIdeal)
            and self.parent == other.parent
            and self.hnf_rows == other.hnf_rows
        )

    def __hash__(self):
        return hash((self.parent.poly, self.hnf_rows))

    def __repr__(self):
        return f"IntegralIdeal(norm={self.norm})"

    def t2_gram(self):
        """Gram matrix of the T2 form on the ideal lattice basis."""
        g = self.parent.t2_gram()
        n = self.parent.degree
        rows = self.hnf_rows
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            gi = [sum(rows[i][a] * g[a][b] for a in range(n)) for b in range(n)]
            for j in range(n):
                out[i][j] = sum(gi[b] * rows[j][b] for b in range(n))
        return out


@dataclass(frozen=True)
class PrimeIdealFactor:
    """A prime of K above the rational prime p, with its e and f."""

    ideal: IntegralIdeal
    p: int
    e: int
    f: int
    two_element_gens: tuple  # (p, AlgebraicNumber)

    @property
    def norm(self) -> int:
        return self.p**self.f

    def sort_key(self):
        return (self.f, self.e, self.ideal.hnf_rows)

    def __repr__(self):
        return f"PrimeIdealFactor(p={self.p}, e={self.e}, f={self.f})"


@dataclass(frozen=True)
class SplittingData:
    """Complete splitting of a rational prime q with the S/T/V subsets."""

    q: int
    factors: tuple  # PrimeIdealFactor, sorted by (f, e, basis)

    @property
    def S(self):
        return tuple(range(len(self.factors)))

    @property
    def T(self):
        return tuple(i for i, P in enumerate(self.factors) if P.f == 1)

    @property
    def V(self):
        return tuple(i for i, P in enumerate(self.factors) if P.e % 2 == 1)

    def s_set(self):
        return list(self.factors)

    def t_set(self):
        return [self.factors[i] for i in self.T]

    def v_set(self):
        return [self.factors[i] for i in self.V]

    @property
    def t_empty(self):
        return not self.T

    @property
    def v_empty(self):
        return not self.V

    def pattern_string(self) -> str:
        """Human form like 'p^3' or 'p1*p2^2', factors in sorted order."""
        parts = []
        many = len(self.factors) > 1
        for i, P in enumerate(self.factors):
            name = f"p{i + 1}" if many else "p"
            parts.append(name if P.e == 1 else f"{name}^{P.e}")
        return "*".join(parts)


def _theta_poly_element(K: NumberField, g: BigIntPoly) -> AlgebraicNumber:
    """g(theta) as a field element."""
    return K.from_power_coords([QQ(c) for c in g.coeffs])


def factor_rational_prime(K: NumberField, q: int) -> SplittingData:
    """Factor (q) into prime ideals with exponents and residue degrees."""
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    if K.index % q != 0:
        factors = _factor_dedekind(K, q)
    else:
        factors = _factor_via_algebra(K, q)
    n = K.degree
    if sum(P.e * P.f for P in factors) != n:
        raise DomainError("splitting data inconsistent: sum e*f != n")
    factors = tuple(sorted(factors, key=lambda P: P.sort_key()))
    return SplittingData(q=q, factors=factors)


def _factor_dedekind(K: NumberField, q: int):
    from .exact import factor_mod_p

    out = []
    theta = K.gen()
    for gbar, e in factor_mod_p(K.poly, q):
        gel = _theta_poly_element(K, gbar)
        ideal = IntegralIdeal.from_generators(K, [K.from_int(q), gel])
        out.append(
            PrimeIdealFactor(
                ideal=ideal,
                p=q,
                e=e,
                f=gbar.degree,
                two_element_gens=(q, gel),
            )
        )
    return out


def _factor_via_algebra(K: NumberField, q: int):
    """Splitting above an index prime via O/qO: radical, then split the
    semisimple quotient along eigenspaces of Frobenius-fixed elements."""
    from .exact.matrix import nullspace_mod, rref_mod
    from .maxorder import _vec_mul_mod, _vec_pow_mod

    n = K.degree
    sc = K.mult_table
    one = list(K.one().int_coords())

    qq_pow = q
    while qq_pow < n:
        qq_pow *= q
    frob_rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        frob_rows.append(_vec_pow_mod(sc, e, qq_pow, q, n, one))
    rad = nullspace_mod(
        [[frob_rows[i][j] for i in range(n)] for j in range(n)], q
    )
    rad_rref, rad_pivots = rref_mod(rad, q) if rad else ([], [])
    rad_rref = [r for r in rad_rref if any(r)]

    def project(v):
        # canonical representative of v modulo the radical
        v = [c % q for c in v]
        for row, piv in zip(rad_rref, rad_pivots):
            c = v[piv]
            if c:
                for t in range(n):
                    v[t] = (v[t] - c * row[t]) % q
        return v

    def subspace_solve(basis, v):
        # coordinates of v in the span of basis (all reduced reps); None if outside
        from .exact.matrix import solve_mod

        mat = [[basis[i][j] for i in range(len(basis))] for j in range(n)]
        return solve_mod(mat, v, q)

    def components(basis, unit):
        """Recursively split the subalgebra spanned by basis (unit given)."""
        dim = len(basis)
        if dim == 1:
            return [(basis, unit)]
        # Frobenius matrix on this subalgebra
        frob_imgs = []
        for b in basis:
            fb = project(_vec_pow_mod(sc, list(b), q, q, n, one))
            frob_imgs.append(subspace_solve(basis, fb))
        # fixed subalgebra: kernel of (Frob - id) in subalgebra coordinates
        mat = [
            [(frob_imgs[i][j] - (1 if i == j else 0)) % q for i in range(dim)]
            for j in range(dim)
        ]
        fixed = nullspace_mod(mat, q)
        if len(fixed) == 1:
            return [(basis, unit)]
        unit_coords = subspace_solve(basis, unit)
        split_elem = None
        for vec in fixed:
            # take a fixed element not proportional to the unit
            if _rank2(vec, unit_coords, q) == 2:
                split_elem = vec
                break
        if split_elem is None:
            raise DomainError("no splitting element found (internal error)")
        s = [0] * n
        for c, b in zip(split_elem, basis):
            if c:
                for t in range(n):
                    s[t] = (s[t] + c * b[t]) % q
        # minimal polynomial of s relative to the subalgebra unit
        powers = [unit]
        cur = unit
        minpoly = None
        for _ in range(dim + 1):
            cur = project(_vec_mul_mod(sc, cur, s, q, n))
            rows = [[p[i] for p in powers] for i in range(n)]
            sol = _solve_dependence(rows, cur, q, n)
            if sol is not None:
                minpoly = sol + [1]
                break
            powers.append(cur)
        roots = roots_mod(tuple(minpoly), q)
        out = []
        for c in roots:
            # kernel of multiplication by (s - c*unit) inside the subalgebra
            shifted = [(s[t] - c * unit[t]) % q for t in range(n)]
            imgs = []
            for b in basis:
                ib = project(_vec_mul_mod(sc, list(b), shifted, q, n))
                imgs.append(subspace_solve(basis, ib))
            mat = [[imgs[i][j] for i in range(dim)] for j in range(dim)]
            ker = nullspace_mod(mat, q)
            sub_basis = []
            for kv in ker:
                vec = [0] * n
                for coef, b in zip(kv, basis):
                    if coef:
                        for t in range(n):
                            vec[t] = (vec[t] + coef * b[t]) % q
                sub_basis.append(project(vec))
            sub_rref, _ = rref_mod(sub_basis, q)
            sub_rref = [r for r in sub_rref if any(r)]
            sub_unit = _subalgebra_unit(sub_rref, sc, q, n, project, subspace_solve)
            out.extend(components(sub_rref, sub_unit))
        return out

    # quotient algebra basis: complement of the radical
    comp_basis = []
    used = set(rad_pivots)
    for j in range(n):
        if j not in used:
            e = [0] * n
            e[j] = 1
            comp_basis.append(project(e))
    comp_rref, _ = rref_mod(comp_basis, q)
    comp_rref = [r for r in comp_rref if any(r)]
    unit = project(list(one))
    comps = components(comp_rref, unit)

    out = []
    for i, (basis_i, _) in enumerate(comps):
        # maximal ideal: radical + all other components, lifted, plus q*O
        rows = [[q if a == b else 0 for b in range(n)] for a in range(n)]
        rows += [list(r) for r in rad_rref]
        for j, (basis_j, _) in enumerate(comps):
            if j != i:
                rows += [list(r) for r in basis_j]
        ideal = IntegralIdeal(K, rows)
        f_i = len(basis_i)
        out.append((ideal, f_i))

    factors = []
    q_ideal = IntegralIdeal.from_int(K, q)
    for ideal, f_i in out:
        e_i = _valuation_of_ideal(q_ideal, ideal)
        gen2 = _second_generator(K, ideal, q)
        factors.append(
            PrimeIdealFactor(
                ideal=ideal, p=q, e=e_i, f=f_i, two_element_gens=(q, gen2)
            )
        )
    return factors


def _rank2(v, w, q) -> int:
    from .exact.matrix import rank_mod

    return rank_mod([list(v), list(w)], q)


def _solve_dependence(rows, target, q, n):
    """Express target as a linear combination of previous powers, mod q.

    rows: n x k matrix (columns = power vectors); returns the negated
    combination coefficients (so result + [1] is the monic minimal poly),
    or None when independent.
    """
    from .exact.matrix import solve_mod

    sol = solve_mod(rows, list(target), q)
    if sol is None:
        return None
    return [(-c) % q for c in sol]


def _subalgebra_unit(basis, sc, q, n, project, subspace_solve):
    """Identity element of a subalgebra given by a reduced basis.

    Solves u * b_j = b_j for all basis elements, in subalgebra coordinates.
    """
    from .exact.matrix import solve_mod
    from .maxorder import _vec_mul_mod

    dim = len(basis)
    rows = []
    rhs = []
    for j in range(dim):
        coords_bj = subspace_solve(basis, list(basis[j]))
        prods = []
        for i in range(dim):
            pr = project(_vec_mul_mod(sc, list(basis[i]), list(basis[j]), q, n))
            prods.append(subspace_solve(basis, pr))
        for t in range(dim):
            rows.append([prods[i][t] for i in range(dim)])
            rhs.append(coords_bj[t])
    sol = solve_mod(rows, rhs, q)
    if sol is None:
        raise DomainError("subalgebra has no identity (internal error)")
    u = [0] * n
    for c, b in zip(sol, basis):
        if c:
            for t in range(n):
                u[t] = (u[t] + c * b[t]) % q
    return project(u)


def _valuation_of_ideal(I: IntegralIdeal, P: IntegralIdeal) -> int:
    v = 0
    power = P
    while power.contains_ideal(I):
        v += 1
        power = power * P
        if v > 64:
            raise DomainError("runaway valuation (internal error)")
    return v


def _second_generator(K: NumberField, P: IntegralIdeal, q: int) -> AlgebraicNumber:
    """Search a second generator alpha with (q, alpha) = P, scanning the HNF
    basis rows and small combinations in a fixed deterministic order."""
    n = K.degree
    q_el = K.from_int(q)
    candidates = []
    for r in P.hnf_rows:
        candidates.append(list(r))
    for r in P.hnf_rows:
        for s in P.hnf_rows:
            if r != s:
                candidates.append([a + b for a, b in zip(r, s)])
    for r in P.hnf_rows:
        candidates.append([a + q if i == 0 else a for i, a in enumerate(r)])
    for cand in candidates:
        alpha = K.element(cand)
        if alpha.is_zero():
            continue
        trial = IntegralIdeal.from_generators(K, [q_el, alpha])
        if trial == P:
            return alpha
    raise DomainError("no two-element generator found in the search box")


def valuation(x, P: PrimeIdealFactor) -> int:
    """Exact P-adic valuation of an element or an integral ideal."""
    if isinstance(x, AlgebraicNumber):
        if x.is_zero():
            raise DomainError("valuation of zero")
        I = IntegralIdeal.principal(x)
    elif isinstance(x, IntegralIdeal):
        I = x
    else:
        raise DomainError("valuation needs an element or an ideal")
    return _valuation_of_ideal(I, P.ideal)


def stv_sets(K: NumberField, q: int) -> SplittingData:
    """The splitting of q with the S/T/V structure exposed."""
    return factor_rational_prime(K, q)


def extend_ideal(rel: RelativeQuadraticData, P: IntegralIdeal) -> IntegralIdeal:
    """P * O_L for an ideal P of the base field."""
    L = rel.top
    gens = [
        AlgebraicNumber(
            rel.base, list(r)
        )
        for r in P.hnf_rows
    ]
    return IntegralIdeal.from_generators(L, [rel.embed(g) for g in gens])


def ramified_primes_in_quadratic_ext(rel: RelativeQuadraticData):
    """Base primes ramifying in the quadratic extension, with gamma = count.

    Detected by factoring the extended ideal in the top field.  Candidate
    primes: those above m, plus the dyadic primes when -m != 1 mod 4 (the
    adjoined generator is otherwise integral over 2).  Also reports the
    'greatest square divisor' ideals of (m) and (2) as informational data.
    """
    K = rel.base
    m = rel.m
    candidates = []
    rationals = sorted(set(list(_prime_divisors(m)) + ([2] if (-m) % 4 != 1 else [])))
    for q in rationals:
        split = factor_rational_prime(K, q)
        candidates.extend(split.factors)
    ram = []
    for P in candidates:
        ext = extend_ideal(rel, P.ideal)
        top_split = factor_rational_prime(rel.top, P.p)
        for Q in top_split.factors:
            if _valuation_of_ideal(ext, Q.ideal) >= 2:
                ram.append(P)
                break
    gamma = len(ram)
    return ram, gamma


def _prime_divisors(n: int):
    from .exact.integers import factorint

    return factorint(n).keys()
