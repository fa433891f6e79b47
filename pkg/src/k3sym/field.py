"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) reduced modulo
the n-th cyclotomic polynomial, as an integer numerator vector over one
positive common denominator.  The representation is canonical, so equality
and hashing are coefficient-wise.

>>> F = field(84)
>>> z3 = root_of_unity(3, 1, F)
>>> z3 + z3 * z3 + 1 == F.zero
True
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

DEFAULT_CONDUCTOR = 84


class FieldError(ArithmeticError):
    pass


class ContextMismatch(FieldError):
    pass


class BadPrime(FieldError):
    """The chosen prime divides a denominator; retry with another prime."""


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # b monic up to sign (leading coefficient +-1)
    a = list(a)
    lead = b[-1]
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    if any(a):
        raise FieldError("inexact polynomial division")
    return q


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    num, den = [1], [1]
    for d in _divisors(n):
        mu = _mobius(n // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, factor)
        else:
            den = _poly_mul(den, factor)
    return _poly_exact_div(num, den)


class FieldCtx:
    """The field Q(zeta_n).  Obtain instances through :func:`field`."""

    __slots__ = ("n", "phi_n", "cyclo_coeffs", "_tail", "_powers", "_units", "zero", "one")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.cyclo_coeffs = tuple(cyclotomic_polynomial(n))
        self.phi_n = len(self.cyclo_coeffs) - 1
        # x^phi = -sum c_j x^j
        self._tail = tuple((j, -c) for j, c in enumerate(self.cyclo_coeffs[:-1]) if c)
        powers = []
        for k in range(n):
            vec = [0] * max(k + 1, self.phi_n)
            vec[k] = 1
            powers.append(tuple(self._reduce(vec)))
        self._powers = tuple(powers)
        self._units = tuple(k for k in range(1, n) if gcd(k, n) == 1) if n > 1 else ()
        self.zero = CycNum._raw(self, (0,) * self.phi_n, 1)
        self.one = self(1)

    def __repr__(self) -> str:
        return f"FieldCtx(n={self.n})"

    def __reduce__(self):
        return (field, (self.n,))

    def _reduce(self, vec: list[int]) -> list[int]:
        phi = self.phi_n
        for i in range(len(vec) - 1, phi - 1, -1):
            c = vec[i]
            if c:
                vec[i] = 0
                base = i - phi
                for j, t in self._tail:
                    vec[base + j] += c * t
        del vec[phi:]
        return vec

    def __call__(self, value) -> "CycNum":
        """Coerce an int, Fraction or CycNum of this field."""
        if isinstance(value, CycNum):
            if value.ctx is not self:
                raise ContextMismatch(f"{value.ctx} vs {self}")
            return value
        q = Fraction(value)
        return CycNum._make(self, [q.numerator] + [0] * (self.phi_n - 1), q.denominator)

    def zeta_power(self, k: int) -> "CycNum":
        """zeta_n ** k for any integer k."""
        return CycNum._raw(self, self._powers[k % self.n], 1)

    def from_coeffs(self, coeffs: Iterable) -> "CycNum":
        """Element sum c_j zeta^j from a power-basis coefficient sequence of any length."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        acc = [0] * self.phi_n
        for j, c in enumerate(fr):
            if c:
                w = c.numerator * (den // c.denominator)
                for i, x in enumerate(self._powers[j % self.n]):
                    if x:
                        acc[i] += w * x
        return CycNum._make(self, acc, den)


_CONTEXTS: dict[int, FieldCtx] = {}


def field(n: int = DEFAULT_CONDUCTOR) -> FieldCtx:
    """Shared immutable context for Q(zeta_n); one instance per conductor."""
    n = int(n)
    ctx = _CONTEXTS.get(n)
    if ctx is None:
        ctx = _CONTEXTS.setdefault(n, FieldCtx(n))
    return ctx


class CycNum:
    """An element of Q(zeta_n); immutable."""

    __slots__ = ("ctx", "_num", "_den", "_hash")

    @classmethod
    def _raw(cls, ctx: FieldCtx, num: tuple, den: int) -> "CycNum":
        self = object.__new__(cls)
        self.ctx = ctx
        self._num = num
        self._den = den
        self._hash = None
        return self

    @classmethod
    def _make(cls, ctx: FieldCtx, num: list[int], den: int) -> "CycNum":
        if den < 0:
            num = [-x for x in num]
            den = -den
        g = den
        for x in num:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if not any(num):
            den = 1
        elif g != 1:
            num = [x // g for x in num]
            den //= g
        return cls._raw(ctx, tuple(num), den)

    # -- inspection ---------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self._num) if x]

    def root_exponent(self) -> int | None:
        """k with self == zeta_n**k, or None if self is not an n-th root of unity."""
        if self._den != 1:
            return None
        for k, p in enumerate(self.ctx._powers):
            if p == self._num:
                return k
        return None

    # -- protocol -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self.ctx is other.ctx and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.ctx.n, self._num, self._den))
        return self._hash

    def sort_key(self) -> tuple:
        return (self._num, self._den)

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycNum({Fraction(self._num[0], self._den)})"
        terms = []
        for j, x in enumerate(self._num):
            if x:
                c = Fraction(x, self._den)
                terms.append(f"{c}*z^{j}" if j else f"{c}")
        return "CycNum(" + " + ".join(terms) + f"; n={self.ctx.n})"

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.ctx is not self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._den, other._den
        if a == b:
            return CycNum._make(self.ctx, [x + y for x, y in zip(self._num, other._num)], a)
        return CycNum._make(self.ctx, [x * b + y * a for x, y in zip(self._num, other._num)], a * b)

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.ctx, tuple(-x for x in self._num), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum._make(self.ctx, [x * q.numerator for x in self._num], self._den * q.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        ia = [(i, x) for i, x in enumerate(self._num) if x]
        ib = [(j, y) for j, y in enumerate(other._num) if y]
        if not ia or not ib:
            return ctx.zero
        if len(ia) == 1 and ia[0][0] == 0:
            return other * Fraction(ia[0][1], self._den)
        if len(ib) == 1 and ib[0][0] == 0:
            return self * Fraction(ib[0][1], other._den)
        vec = [0] * (2 * ctx.phi_n - 1)
        for i, x in ia:
            for j, y in ib:
                vec[i + j] += x * y
        return CycNum._make(ctx, ctx._reduce(vec), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ctx.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_n)")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def conjugate(self, k: int) -> "CycNum":
        """Galois conjugate zeta -> zeta**k (k a unit mod n)."""
        ctx = self.ctx
        acc = [0] * ctx.phi_n
        for j, x in enumerate(self._num):
            if x:
                for i, y in enumerate(ctx._powers[(j * k) % ctx.n]):
                    if y:
                        acc[i] += x * y
        return CycNum._make(ctx, acc, self._den)

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_n."""
        ctx = self.ctx
        nz = self.support()
        if not nz:
            raise ZeroDivisionError("division by zero in Q(zeta_n)")
        if nz == [0]:
            return ctx(Fraction(self._den, self._num[0]))
        k = self.root_exponent_scaled()
        if k is not None:
            c, e = k
            return ctx.zeta_power(-e) * (1 / c)
        return _ext_euclid_inverse(self)

    def root_exponent_scaled(self) -> tuple[Fraction, int] | None:
        """(c, k) with self == c * zeta**k for rational c, if such exist."""
        nz = self.support()
        if len(nz) == 1:
            return Fraction(self._num[nz[0]], self._den), nz[0]
        return None


def _ext_euclid_inverse(a: CycNum) -> CycNum:
    # invariant: s*a == r (mod Phi); polynomials as Fraction lists, low degree first
    ctx = a.ctx
    r0 = [Fraction(c) for c in ctx.cyclo_coeffs]
    r1 = list(a.coeffs)
    s0: list[Fraction] = [Fraction(0)]
    s1: list[Fraction] = [Fraction(1)]

    def trim(p):
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    trim(r1)
    while len(r1) > 1 or r1[0] != 0:
        if len(r1) == 1:
            inv_c = 1 / r1[0]
            return ctx.from_coeffs([c * inv_c for c in s1])
        # r0 = q*r1 + rem
        rem = list(r0)
        q = [Fraction(0)] * (len(rem) - len(r1) + 1)
        lead = r1[-1]
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + len(r1) - 1] / lead
            q[i] = c
            if c:
                for j, y in enumerate(r1):
                    rem[i + j] -= c * y
        trim(rem)
        prod = [Fraction(0)] * (len(q) + len(s1) - 1)
        for i, x in enumerate(q):
            if x:
                for j, y in enumerate(s1):
                    prod[i + j] += x * y
        s2 = [Fraction(0)] * max(len(s0), len(prod))
        for i, x in enumerate(s0):
            s2[i] += x
        for i, x in enumerate(prod):
            s2[i] -= x
        r0, r1, s0, s1 = r1, rem, s1, trim(s2)
    raise ZeroDivisionError("element is not invertible")  # pragma: no cover


def root_of_unity(order: int, power: int = 1, ctx: FieldCtx | None = None) -> CycNum:
    """zeta_n ** ((n // order) * power); primitive of the given order when gcd(power, order) == 1."""
    ctx = ctx or field()
    if order < 1 or ctx.n % order:
        raise FieldError(f"order {order} does not divide the conductor {ctx.n}")
    return ctx.zeta_power((ctx.n // order) * power)


def sqrt_minus_seven(ctx: FieldCtx | None = None) -> CycNum:
    """The Gauss sum l + l^2 + l^4 - l^3 - l^5 - l^6 for l a primitive 7th root of unity."""
    ctx = ctx or field()
    lam = root_of_unity(7, 1, ctx)
    return sum((lam ** k for k in (1, 2, 4)), ctx.zero) - sum((lam ** k for k in (3, 5, 6)), ctx.zero)


# -- prime-field reduction ----------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class PrimeEmbedding:
    """A ring map Z[zeta_n][1/den] -> F_p sending zeta_n to an element of exact order n."""

    __slots__ = ("p", "zeta_image", "n")

    def __init__(self, p: int, zeta_image: int, n: int = DEFAULT_CONDUCTOR):
        if not _is_prime(p) or (p - 1) % n:
            raise FieldError(f"{p} is not a prime congruent to 1 mod {n}")
        if not 1 <= zeta_image < p or pow(zeta_image, n, p) != 1 or any(
            pow(zeta_image, n // q, p) == 1 for q in _prime_factors(n)
        ):
            raise FieldError(f"{zeta_image} does not have order {n} mod {p}")
        self.p, self.zeta_image, self.n = p, zeta_image, n

    def __repr__(self) -> str:
        return f"PrimeEmbedding(p={self.p}, zeta_image={self.zeta_image}, n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeEmbedding) and (self.p, self.zeta_image, self.n) == (
            other.p,
            other.zeta_image,
            other.n,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.zeta_image, self.n))

    @classmethod
    def for_prime(cls, p: int, n: int = DEFAULT_CONDUCTOR) -> "PrimeEmbedding":
        """Embedding at p using the smallest element of exact order n."""
        if not _is_prime(p) or (p - 1) % n:
            raise FieldError(f"{p} is not a prime congruent to 1 mod {n}")
        for z in range(2, p):
            if pow(z, n, p) == 1 and all(pow(z, n // q, p) != 1 for q in _prime_factors(n)):
                return cls(p, z, n)
        raise FieldError(f"no element of order {n} mod {p}")  # pragma: no cover

    @classmethod
    def default(cls, n: int = DEFAULT_CONDUCTOR, start: int = 2) -> "PrimeEmbedding":
        """Embedding at the smallest prime p >= start with p == 1 mod n (337 for n = 84)."""
        return cls.for_prime(next_good_prime(n, start), n)

    def next(self) -> "PrimeEmbedding":
        return PrimeEmbedding.default(self.n, self.p + 1)


def next_good_prime(n: int, start: int = 2) -> int:
    p = max(start, 2)
    p += (1 - p) % n
    while not _is_prime(p):
        p += n
    return p


def reduce_mod_prime(a: CycNum, emb: PrimeEmbedding) -> int:
    if a.ctx.n != emb.n:
        raise ContextMismatch(f"{a.ctx} vs embedding for n={emb.n}")
    p = emb.p
    if a.denominator % p == 0:
        raise BadPrime(f"denominator {a.denominator} divisible by {p}")
    acc, zpow = 0, 1
    for x in a.numerators:
        if x:
            acc += x * zpow
        zpow = zpow * emb.zeta_image % p
    return acc * pow(a.denominator, -1, p) % p


# -- JSON wire format -----------------------------------------------------------

def to_wire(a: CycNum) -> list:
    """[[j, "a/b"], ...] in canonical power-basis order."""
    return [[j, str(c)] for j, c in enumerate(a.coeffs) if c]


def from_wire(terms, ctx: FieldCtx | None = None) -> CycNum:
    ctx = ctx or field()
    if isinstance(terms, (int, str)):
        return ctx(Fraction(terms))
    if not isinstance(terms, list):
        raise ValueError(f"coefficient must be a list of [exponent, \"a/b\"] terms, got {terms!r}")
    acc = ctx.zero
    for t in terms:
        if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], int) and not isinstance(t[0], bool)):
            raise ValueError(f"malformed coefficient term {t!r}")
        try:
            c = Fraction(t[1]) if isinstance(t[1], (int, str)) else None
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {t[1]!r}") from exc
        if c is None:
            raise ValueError(f"malformed rational {t[1]!r}")
        acc = acc + ctx.zeta_power(t[0]) * c
    return acc
