"""Finite fields F_q = F_p[t]/(m(t)) and univariate polynomials over them.

Field elements are plain ints in ``[0, q)``: the base-``p`` digits of the int
are the coefficients of the element as a polynomial in ``t`` (lowest degree
first).  For prime fields this is just the residue mod ``p``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

Q_CAP = 2**20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in itertools.count(2) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


def mobius(n: int) -> int:
    result, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    if m > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class FieldSpec:
    """The field with ``q = p**k`` elements.

    ``modulus`` holds the low-first coefficients of the monic defining
    polynomial over F_p (length ``k + 1``) and is ``None`` for prime fields.
    Use :func:`field_make` rather than constructing this directly.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    def __repr__(self) -> str:
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.q}[{_format_prime_poly(self.modulus, 't')}]"

    # -- element encoding ------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (length ``k``) of an element."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        cs = [c % self.p for c in cs]
        if len(cs) > self.k:
            if self.k == 1:
                raise FieldError("too many coefficients for a prime field element")
            cs = _prime_poly_rem(cs, list(self.modulus), self.p)
        a = 0
        for c in reversed(cs):
            a = a * self.p + (c % self.p)
        return a

    def elements(self) -> range:
        return range(self.q)

    @property
    def gen(self) -> int:
        """The class of ``t`` (``p`` encodes the vector (0, 1, 0, ...))."""
        if self.k == 1:
            raise FieldError("prime field has no generator t")
        return self.p

    # -- arithmetic --------------------------------------------------------
    @cached_property
    def _add_table(self) -> list[list[int]] | None:
        if self.k == 1 or self.p == 2 or self.q > 729:
            return None
        return [[self._add_digits(a, b) for b in range(self.q)] for a in range(self.q)]

    def _add_digits(self, a: int, b: int) -> int:
        p, out, scale = self.p, 0, 1
        for _ in range(self.k):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        table = self._add_table
        if table is not None:
            return table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_coeffs([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        """(exp, log) tables for the multiplicative group; extension fields only."""
        q, p, k = self.q, self.p, self.k
        mod = list(self.modulus)
        order = q - 1
        factors = _prime_factors(order)
        for g in range(2, q):
            gc = list(self.coeffs(g))
            if all(_prime_poly_powmod(gc, order // f, mod, p) != [1] for f in factors):
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise FieldError("no primitive element found")
        exp = [0] * order
        log = [-1] * q
        cur = [1] + [0] * (k - 1)
        for i in range(order):
            val = self.from_coeffs(cur)
            exp[i] = val
            log[val] = i
            cur = _prime_poly_rem(_prime_poly_mul(cur, gc, p), mod, p)
            cur = cur + [0] * (k - len(cur))
        return exp, log

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        exp, log = self._tables
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        exp, log = self._tables
        return exp[(log[a] * e) % (self.q - 1)]

    def is_square(self, a: int) -> bool:
        """True for zero and nonzero squares."""
        if a == 0 or self.p == 2:
            return True
        if self.k == 1:
            return pow(a, (self.p - 1) // 2, self.p) == 1
        return self._tables[1][a] % 2 == 0

    def sqrt(self, a: int) -> int | None:
        """Some square root of ``a`` (the smallest encoding), or ``None``."""
        for w in range(self.q):
            if self.mul(w, w) == a:
                return w
        return None

    def element_str(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return _format_prime_poly(self.coeffs(a), "t")


# -- raw polynomial helpers over F_p (lists, low-first) ------------------------

def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _prime_poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _prime_poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm])


def _prime_poly_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result, base = [1], _prime_poly_rem(a, m, p)
    while e:
        if e & 1:
            result = _prime_poly_rem(_prime_poly_mul(result, base, p), m, p)
        base = _prime_poly_rem(_prime_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _format_prime_poly(cs: Sequence[int], var: str) -> str:
    terms = []
    for d in range(len(cs) - 1, -1, -1):
        c = cs[d]
        if c == 0:
            continue
        if d == 0:
            terms.append(str(c))
            continue
        mono = var if d == 1 else f"{var}^{d}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


def field_make(p: int, k: int = 1) -> FieldSpec:
    """Build F_{p^k}; the modulus is the lexicographically smallest monic
    irreducible of degree ``k`` with low-degree coefficients compared first."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if p**k > Q_CAP:
        raise FieldError(f"q = {p}^{k} exceeds the cap 2^20")
    if k == 1:
        return FieldSpec(p)
    prime = FieldSpec(p)
    for low in itertools.product(range(p), repeat=k):
        if low[0] == 0:
            continue
        cand = Poly(prime, tuple(low) + (1,))
        if poly_is_irreducible(cand):
            return FieldSpec(p, k, tuple(low) + (1,))
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


def field_from_q(q: int) -> FieldSpec:
    p, k = prime_power(q)
    return field_make(p, k)


# -- polynomials -------------------------------------------------------------

class _NegInfinity:
    """Degree of the zero polynomial.  Compares below every int, refuses arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("neg-inf-degree")


NEG_INF = _NegInfinity()


@dataclass(frozen=True)
class Poly:
    """Polynomial over ``field`` with low-first coefficient tuple, no trailing zeros."""

    field: FieldSpec
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # constructors
    @classmethod
    def const(cls, F: FieldSpec, c: int) -> Poly:
        return cls(F, (c,))

    @classmethod
    def x(cls, F: FieldSpec) -> Poly:
        return cls(F, (0, 1))

    @classmethod
    def monomial(cls, F: FieldSpec, d: int, c: int = 1) -> Poly:
        return cls(F, (0,) * d + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def deg(self) -> int:
        """Degree as an int; raises for the zero polynomial."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no integer degree")
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: Poly) -> None:
        if self.field != other.field:
            raise FieldError("polynomials over different fields")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        if F.k == 1:
            p = F.p
            return Poly(F, tuple((x + y) % p for x, y in zip(a, b)) + a[len(b):])
        return Poly(F, tuple(F.add(x, y) for x, y in zip(a, b)) + a[len(b):])

    def __neg__(self) -> Poly:
        F = self.field
        return Poly(F, tuple(F.neg(c) for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | int) -> Poly:
        F = self.field
        if isinstance(other, int):
            return Poly(F, tuple(F.mul(c, other) for c in self.coeffs))
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        if F.k == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly(F, tuple(c % p for c in out))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(rem) - 1 < db:
            return Poly(F), self
        inv_lead = F.inv(other.coeffs[-1])
        quot = [0] * (len(rem) - db)
        b = other.coeffs
        if F.k == 1:
            p = F.p
            for i in range(len(rem) - 1, db - 1, -1):
                c = rem[i] * inv_lead % p
                if c:
                    quot[i - db] = c
                    for j in range(db + 1):
                        rem[i - db + j] = (rem[i - db + j] - c * b[j]) % p
        else:
            for i in range(len(rem) - 1, db - 1, -1):
                c = F.mul(rem[i], inv_lead)
                if c:
                    quot[i - db] = c
                    for j in range(db + 1):
                        rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b[j]))
        return Poly(F, tuple(quot)), Poly(F, tuple(rem[:db]))

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> Poly:
        result, base = Poly.const(self.field, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, m: Poly) -> Poly:
        result, base = Poly.const(self.field, 1) % m, self % m
        while e:
            if e & 1:
                result = result * base % m
            base = base * base % m
            e >>= 1
        return result

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self * self.field.inv(self.coeffs[-1])

    def __call__(self, a: int) -> int:
        F, acc = self.field, 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def derivative(self) -> Poly:
        F = self.field
        return Poly(F, tuple(F.mul(c, i % F.p) for i, c in enumerate(self.coeffs) if i > 0))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r} over {self.field!r})"

    def sort_key(self) -> tuple:
        return (len(self.coeffs), tuple(reversed(self.coeffs)))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def poly_arith(a: Poly, b: Poly, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    if op == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown op {op!r}")


def _frobenius_chain(f: Poly, steps: int) -> list[Poly]:
    """[x^(q^i) mod f for i = 1..steps]."""
    q = f.field.q
    x = Poly.x(f.field)
    out, cur = [], x % f
    for _ in range(steps):
        cur = cur.powmod(q, f)
        out.append(cur)
    return out


def poly_is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^(q^n) = x mod f and gcd(x^(q^(n/l)) - x, f) = 1 for primes l | n."""
    if not f.coeffs or f.deg < 1:
        raise ValueError("irreducibility of a constant polynomial is undefined")
    n = f.deg
    if n == 1:
        return True
    f = f.monic()
    if f.coeffs[0] == 0:
        return False
    x = Poly.x(f.field)
    chain = _frobenius_chain(f, n)
    if chain[-1] != x % f:
        return False
    for ell in _prime_factors(n):
        if poly_gcd(chain[n // ell - 1] - x, f).deg != 0:
            return False
    return True


def monic_polys(F: FieldSpec, d: int) -> Iterator[Poly]:
    for low in itertools.product(range(F.q), repeat=d):
        yield Poly(F, tuple(reversed(low)) + (1,))


def count_monic_irreducibles(F: FieldSpec | int, d: int) -> int:
    """Number of monic irreducibles of degree ``d`` over F (or over F_q for an int q)."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    q = F if isinstance(F, int) else F.q
    total = sum(mobius(e) * q ** (d // e) for e in divisors(d))
    return total // d


_IRRED_CACHE: dict[tuple[FieldSpec, int], tuple[Poly, ...]] = {}


def enumerate_monic_irreducibles(F: FieldSpec, d: int, budget: int = 10**7) -> tuple[Poly, ...]:
    """All monic irreducibles of degree ``d`` in increasing order (highest
    coefficient compared first)."""
    key = (F, d)
    if key not in _IRRED_CACHE:
        if F.q**d > budget:
            raise BudgetExceeded(f"enumerating q^d = {F.q**d} polynomials exceeds budget {budget}")
        if d == 1:
            out = tuple(Poly(F, (F.neg(a), 1)) for a in range(F.q))
            out = tuple(sorted(out, key=Poly.sort_key))
        else:
            out = tuple(f for f in monic_polys(F, d) if poly_is_irreducible(f))
        _IRRED_CACHE[key] = out
    return _IRRED_CACHE[key]


def first_monic_irreducibles(F: FieldSpec, d: int, count: int) -> tuple[Poly, ...]:
    """The ``count`` smallest monic irreducibles of degree ``d``, found lazily."""
    if count > count_monic_irreducibles(F, d):
        raise ValueError(f"only {count_monic_irreducibles(F, d)} monic irreducibles of degree {d}")
    if d == 1:
        return tuple(Poly(F, (c, 1)) for c in range(count))
    return tuple(itertools.islice((f for f in monic_polys(F, d) if poly_is_irreducible(f)), count))


class BudgetExceeded(RuntimeError):
    pass


def is_square_in_residue_field(u: Poly, P: Poly, witness: bool = True) -> tuple[bool, Poly | None]:
    """Euler's criterion in F_q[x]/(P).

    Returns ``(is_square, witness)``; a witness ``w`` with ``w^2 = u mod P``
    is searched for when ``deg P <= 3`` (smallest encoding first), otherwise
    ``None``.
    """
    F = u.field
    if F.p == 2:
        raise FieldError("Euler criterion needs odd q; use the trace criterion")
    r = u % P
    if r.is_zero():
        raise ValueError("u vanishes modulo P")
    e = (F.q**P.deg - 1) // 2
    square = r.powmod(e, P) == Poly.const(F, 1)
    if square and witness and P.deg <= 3:
        return square, residue_sqrt(r, P)
    return square, None


def residue_sqrt(r: Poly, P: Poly) -> Poly | None:
    """Exhaustive square root in F_q[x]/(P); smallest coefficient vector first."""
    F = r.field
    target = r % P
    for low in itertools.product(range(F.q), repeat=P.deg):
        w = Poly(F, low)
        if (w * w) % P == target:
            return w
    return None


def absolute_trace_residue(u: Poly, P: Poly) -> int:
    """Absolute trace to F_p of the class of ``u`` in F_q[x]/(P) (value in F_p)."""
    F = u.field
    n = F.k * P.deg
    cur = u % P
    acc = Poly(F)
    for _ in range(n):
        acc = acc + cur
        cur = cur.powmod(F.p, P)
    if acc.is_zero():
        return 0
    if acc.deg != 0:
        raise ArithmeticError("trace did not land in the constant field")
    c = acc.coeffs[0]
    cs = F.coeffs(c)
    if any(cs[1:]):
        raise ArithmeticError("trace did not land in the prime field")
    return cs[0]


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Squarefree factorisation in characteristic p: ``f = lc * prod a_i^i``.

    Returns ``[(a_i, i), ...]`` with the ``a_i`` monic, squarefree, pairwise coprime,
    nonconstant.
    """
    F = f.field
    if f.is_zero():
        raise ValueError("zero polynomial")
    out: dict[int, Poly] = {}

    def merge(part: Poly, mult: int) -> None:
        if part.deg > 0:
            out[mult] = out[mult] * part if mult in out else part

    def rec(g: Poly, scale: int) -> None:
        g = g.monic()
        if g.deg <= 0:
            return
        c = poly_gcd(g, g.derivative())
        w = g // c
        i = 1
        while w.deg > 0:
            y = poly_gcd(w, c)
            z = w // y
            merge(z, i * scale)
            i += 1
            w, c = y, c // y
        if c.deg > 0:
            rec(_pth_root(c), scale * F.p)

    rec(f, 1)
    return [(poly, m) for m, poly in sorted(out.items())]


def _pth_root(c: Poly) -> Poly:
    F = c.field
    p = F.p
    # coefficient a -> a^(q/p) is the inverse Frobenius on F_q
    e = F.q // p
    cs = [F.pow(c.coeffs[i], e) for i in range(0, len(c.coeffs), p)]
    return Poly(F, tuple(cs))


def squarefree_odd_part(f: Poly) -> Poly:
    """lc(f) times the product of the factors occurring to an odd power."""
    out = Poly.const(f.field, f.lc)
    for part, mult in squarefree_decomposition(f):
        if mult % 2:
            out = out * part
    return out


def valuation(f: Poly, P: Poly) -> int:
    if f.is_zero():
        raise ValueError("valuation of zero")
    v = 0
    while True:
        qt, r = divmod(f, P)
        if not r.is_zero():
            return v
        f, v = qt, v + 1


def factor_trial(f: Poly, budget: int = 10**7) -> list[tuple[Poly, int]]:
    """Factor by trial division with monic irreducibles of increasing degree.

    Desk-scale only: the cost is bounded by enumerating monic polynomials of
    degree up to ``deg(f)/2``.
    """
    out: list[tuple[Poly, int]] = []
    rest = f.monic()
    d = 1
    F = f.field
    spent = 0
    while rest.deg >= 2 * d:
        spent += F.q**d
        if spent > budget:
            raise BudgetExceeded("trial factorisation exceeds budget")
        for P in enumerate_monic_irreducibles(F, d, budget):
            if rest.deg < d:
                break
            e = 0
            while True:
                qt, r = divmod(rest, P)
                if not r.is_zero():
                    break
                rest, e = qt, e + 1
            if e:
                out.append((P, e))
        d += 1
    if rest.deg >= 1:
        out.append((rest, 1))
    return sorted(out, key=lambda pe: pe[0].sort_key())


# -- text format -------------------------------------------------------------

def format_poly(f: Poly, var: str = "x") -> str:
    F = f.field
    if f.is_zero():
        return "0"
    terms = []
    for d in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[d]
        if c == 0:
            continue
        cstr = F.element_str(c)
        compound = "+" in cstr
        if d == 0:
            terms.append(f"({cstr})" if compound and len(terms) else cstr)
            continue
        mono = var if d == 1 else f"{var}^{d}"
        if c == 1:
            terms.append(mono)
        elif compound:
            terms.append(f"({cstr})*{mono}")
        else:
            terms.append(f"{cstr}*{mono}")
    return "+".join(terms)


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z]+)|(\*\*|[-+*^()]))")


class PolyParseError(ValueError):
    pass


def parse_poly(text: str, F: FieldSpec, var: str = "x") -> Poly:
    """Parse a polynomial in ``var`` over ``F``; ``t`` denotes the field generator.

    Accepts sums, differences, products (explicit ``*`` or juxtaposition),
    integer powers (``^`` or ``**``) and parentheses, e.g.
    ``"x^6+2*x^5+3x^4-1"`` or ``"(t+1)*x^2+t"`` or ``"x*(x+1)*(x^2+4)"``.
    """
    tokens: list[str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at {pos} in {text!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    if not tokens:
        raise PolyParseError("empty polynomial")
    one = Poly.const(F, 1)
    idx = 0

    def peek() -> str | None:
        return tokens[idx] if idx < len(tokens) else None

    def take() -> str:
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expr() -> Poly:
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term() -> Poly:
        acc = power()
        while True:
            tok = peek()
            if tok == "*":
                take()
                acc = acc * power()
            elif tok is not None and (tok == "(" or tok[0].isalnum()):
                acc = acc * power()
            else:
                return acc

    def power() -> Poly:
        base = atom()
        if peek() in ("^", "**"):
            take()
            tok = take() if peek() is not None else ""
            if not tok.isdigit():
                raise PolyParseError("exponent must be a nonnegative integer")
            base = base ** int(tok)
        return base

    def atom() -> Poly:
        tok = peek()
        if tok is None:
            raise PolyParseError("unexpected end of input")
        take()
        if tok.isdigit():
            return one * (int(tok) % F.p)
        if tok == "(":
            inner = expr()
            if peek() != ")":
                raise PolyParseError("missing ')'")
            take()
            return inner
        if tok == var:
            return Poly.x(F)
        if tok == "t":
            return Poly.const(F, F.gen)
        raise PolyParseError(f"unknown symbol {tok!r}")

    result = expr()
    if idx != len(tokens):
        raise PolyParseError(f"trailing input at token {tokens[idx]!r}")
    return result
