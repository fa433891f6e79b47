"""Dense polynomial arithmetic over F_p and over finite extensions F_p[t]/(q).

Polynomials are lists of ints, lowest degree first, with no trailing zeros
(the zero polynomial is ``[]``).  Everything is reduced mod ``p``.
"""

from __future__ import annotations

import random
from typing import Sequence

Poly = list  # list[int]


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: Sequence[int]) -> int:
    return len(a) - 1  # -1 for zero


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return trim(out)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return trim(out)


def scale(a: Poly, c: int, p: int) -> Poly:
    c %= p
    return trim([x * c % p for x in a]) if c else []


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([x % p for x in out])


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * y) % p
    return trim(q), trim(a[:db])


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    return scale(a, pow(a[-1], -1, p), p) if a else []


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def derivative(a: Poly, p: int) -> Poly:
    return trim([i * x % p for i, x in enumerate(a)][1:])


def evaluate(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def powmod(base: Poly, e: int, m: Poly, p: int) -> Poly:
    result, base = [1], mod(base, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return result


def interpolate(xs: Sequence[int], ys: Sequence[int], p: int) -> Poly:
    """Newton interpolation through (xs[i], ys[i]); xs distinct mod p."""
    n = len(xs)
    coef = [y % p for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], -1, p) % p
    out: Poly = []
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [(-xs[i]) % p, 1], p), [coef[i]], p)
    return out


def det_mod(mat: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in r] for r in mat]
    n = len(m)
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result = result * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return result % p


def sylvester_resultant(a: Sequence[int], b: Sequence[int], da: int, db: int, p: int) -> int:
    """Resultant with formal degrees da, db (coefficients low degree first, zero-padded)."""
    a = list(a) + [0] * (da + 1 - len(a))
    b = list(b) + [0] * (db + 1 - len(b))
    if da == 0 and db == 0:
        return 1
    n = da + db
    rows = []
    for i in range(db):
        row = [0] * n
        for j in range(da + 1):
            row[i + j] = a[da - j]
        rows.append(row)
    for i in range(da):
        row = [0] * n
        for j in range(db + 1):
            row[i + j] = b[db - j]
        rows.append(row)
    return det_mod(rows, p)


# -- bivariate polynomials: list indexed by y-degree of F_p[x] polynomials -----------

BiPoly = list  # list[Poly]


def bi_trim(f: BiPoly) -> BiPoly:
    f = [trim(c) for c in f]
    while f and not f[-1]:
        f.pop()
    return f


def bi_eval_x(f: BiPoly, x0: int, p: int) -> Poly:
    return [evaluate(c, x0, p) for c in f]


def resultant_y(f: BiPoly, g: BiPoly, p: int) -> Poly:
    """Res_y(f, g) in F_p[x], by evaluation at enough points and interpolation."""
    df, dg = len(f) - 1, len(g) - 1
    if df < 0 or dg < 0:
        return []
    dx_f = max(len(c) for c in f) - 1
    dx_g = max(len(c) for c in g) - 1
    bound = df * max(dx_g, 0) + dg * max(dx_f, 0)
    npts = bound + 1
    if npts > p:
        raise ValueError("prime too small for interpolation of the resultant")
    xs = list(range(npts))
    ys = [sylvester_resultant(bi_eval_x(f, x, p), bi_eval_x(g, x, p), df, dg, p) for x in xs]
    return interpolate(xs, ys, p)


# -- factorization of squarefree univariate polynomials -----------------------------

def squarefree_part(a: Poly, p: int) -> Poly:
    """a / gcd(a, a'); valid when deg a < p."""
    a = monic(a, p)
    if deg(a) >= p:
        raise ValueError("degree must be below the characteristic")
    g = gcd(a, derivative(a, p), p)
    return monic(divmod_(a, g, p)[0], p)


def distinct_degree(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """[(g_k, k)]: g_k is the product of the monic irreducible factors of degree k of squarefree a."""
    out = []
    f = monic(a, p)
    h = [0, 1]
    k = 0
    while deg(f) >= 2 * (k + 1):
        k += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if deg(g) > 0:
            out.append((g, k))
            f = divmod_(f, g, p)[0]
            h = mod(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(a: Poly, k: int, p: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-k irreducibles (p odd)."""
    a = monic(a, p)
    if deg(a) == k:
        return [a]
    e = (p ** k - 1) // 2
    while True:
        r = trim([rng.randrange(p) for _ in range(deg(a))])
        if deg(r) < 1:
            continue
        g = gcd(a, r, p)
        if 0 < deg(g) < deg(a):
            break
        g = gcd(a, sub(powmod(r, e, a, p), [1], p), p)
        if 0 < deg(g) < deg(a):
            break
    return equal_degree(g, k, p, rng) + equal_degree(divmod_(a, g, p)[0], k, p, rng)


def factor_squarefree(a: Poly, p: int, seed: int = 0) -> list[Poly]:
    rng = random.Random(seed)
    out = []
    for g, k in distinct_degree(a, p):
        out.extend(equal_degree(g, k, p, rng))
    return sorted(out, key=lambda q: (deg(q), q))


# -- polynomials over K = F_p[t]/(q) -------------------------------------------------

class ExtField:
    """F_p[t]/(q) for irreducible q; elements are reduced F_p[t] polynomials."""

    def __init__(self, q: Poly, p: int):
        self.q = monic(q, p)
        self.p = p

    def red(self, a: Poly) -> Poly:
        return mod(a, self.q, self.p)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.red(mul(a, b, self.p))

    def inv(self, a: Poly) -> Poly:
        # extended Euclid: s a + t q = 1
        p = self.p
        r0, r1 = self.q, self.red(a)
        s0, s1 = [], [1]
        if not r1:
            raise ZeroDivisionError("zero has no inverse")
        while r1:
            qt, r = divmod_(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, sub(s0, mul(qt, s1, p), p)
        c = pow(r0[0], -1, p)  # r0 is a nonzero constant
        return scale(s0, c, p)

    def poly_trim(self, f: list) -> list:
        f = [self.red(c) for c in f]
        while f and not f[-1]:
            f.pop()
        return f

    def poly_mod(self, a: list, b: list) -> list:
        a = list(a)
        inv = self.inv(b[-1])
        db = len(b) - 1
        for i in range(len(a) - 1, db - 1, -1):
            c = self.mul(a[i], inv)
            if c:
                for j, y in enumerate(b):
                    a[i - db + j] = sub(a[i - db + j], self.mul(c, y), self.p)
        return self.poly_trim(a[:db])

    def poly_gcd(self, a: list, b: list) -> list:
        a, b = self.poly_trim(a), self.poly_trim(b)
        while b:
            a, b = b, self.poly_mod(a, b)
        return a


def bi_specialize(f: BiPoly, K: ExtField) -> list:
    """Image of f(x, y) in K[y] under x -> t."""
    return K.poly_trim([K.red(c) for c in f])
