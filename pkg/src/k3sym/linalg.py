"""Exact linear algebra over Q(zeta_n): 3x3 matrices and row reduction."""

from __future__ import annotations

from typing import Sequence

from k3sym.field import CycNum, FieldCtx, field


class SingularMatrix(ArithmeticError):
    pass


def _inv(x: CycNum) -> CycNum:
    return x.inverse()


def rref(rows: Sequence[Sequence[CycNum]], ncols: int | None = None) -> tuple[list[list[CycNum]], list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        # prefer rational pivots: their inverses are cheap
        for i in range(r, len(mat)):
            v = mat[i][c]
            if v:
                if v.is_rational():
                    piv = i
                    break
                if piv is None:
                    piv = i
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = _inv(mat[r][c])
        mat[r] = [x * inv if x else x for x in mat[r]]
        for i in range(len(mat)):
            if i != r:
                f = mat[i][c]
                if f:
                    mat[i] = [x - f * y if y else x for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence[CycNum]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[CycNum]], ncols: int, ctx: FieldCtx | None = None) -> list[list[CycNum]]:
    """Basis of {x : A x = 0}; deterministic (one vector per free column)."""
    if rows:
        ctx = rows[0][0].ctx
    ctx = ctx or field()
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ctx.zero] * ncols
        v[fc] = ctx.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def det(rows: Sequence[Sequence[CycNum]]) -> CycNum:
    mat = [list(r) for r in rows]
    n = len(mat)
    ctx = mat[0][0].ctx
    result = ctx.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            v = mat[i][c]
            if v:
                if v.is_rational():
                    piv = i
                    break
                if piv is None:
                    piv = i
        if piv is None:
            return ctx.zero
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            result = -result
        p = mat[c][c]
        result = result * p
        inv = _inv(p)
        for i in range(c + 1, n):
            f = mat[i][c]
            if f:
                f = f * inv
                mat[i] = [x - f * y if y else x for x, y in zip(mat[i], mat[c])]
    return result


def charpoly(rows: Sequence[Sequence[CycNum]]) -> list[CycNum]:
    """Coefficients (low degree first, monic) of det(x I - A) by Faddeev-LeVerrier."""
    n = len(rows)
    ctx = rows[0][0].ctx
    a = [list(r) for r in rows]
    coeffs = [ctx.zero] * (n + 1)
    coeffs[n] = ctx.one
    m = [[ctx.zero] * n for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        c_prev = coeffs[n - k + 1]
        am = [[sum((a[i][t] * m[t][j] for t in range(n) if a[i][t] and m[t][j]), ctx.zero) for j in range(n)]
              for i in range(n)]
        for i in range(n):
            am[i][i] = am[i][i] + c_prev
        m = am
        # c_{n-k} = -tr(A M_k) / k
        tr = ctx.zero
        for i in range(n):
            for t in range(n):
                if a[i][t] and m[t][i]:
                    tr = tr + a[i][t] * m[t][i]
        coeffs[n - k] = tr * (-1) / k
    return coeffs


def poly_eval(coeffs: Sequence[CycNum], x: CycNum) -> CycNum:
    acc = x.ctx.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class Mat3:
    """Immutable 3x3 matrix over Q(zeta_n)."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs a 3x3 array")
        ctx = next((x.ctx for r in rows for x in r if isinstance(x, CycNum)), None) or field()
        self.rows = tuple(tuple(ctx(x) for x in r) for r in rows)
        self._hash = None

    @property
    def ctx(self) -> FieldCtx:
        return self.rows[0][0].ctx

    @classmethod
    def identity(cls, ctx: FieldCtx | None = None) -> "Mat3":
        return cls.diag(1, 1, 1, ctx=ctx)

    @classmethod
    def diag(cls, a, b, c, ctx: FieldCtx | None = None) -> "Mat3":
        ctx = ctx or next((x.ctx for x in (a, b, c) if isinstance(x, CycNum)), None) or field()
        z = ctx.zero
        return cls([[ctx(a), z, z], [z, ctx(b), z], [z, z, ctx(c)]])

    @classmethod
    def permutation(cls, perm: Sequence[int], ctx: FieldCtx | None = None) -> "Mat3":
        """Matrix with (m z)_i = z_{perm[i]}."""
        ctx = ctx or field()
        return cls([[ctx.one if j == perm[i] else ctx.zero for j in range(3)] for i in range(3)])

    def __getitem__(self, i):
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat3) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(x.sort_key() for r in self.rows for x in r)

    def __repr__(self) -> str:
        return "Mat3(" + repr([list(r) for r in self.rows]) + ")"

    def __matmul__(self, other):
        if isinstance(other, Mat3):
            a, b = self.rows, other.rows
            zero = self.ctx.zero
            out = []
            for i in range(3):
                row = []
                for j in range(3):
                    acc = zero
                    for k in range(3):
                        x, y = a[i][k], b[k][j]
                        if x and y:
                            acc = acc + x * y
                    row.append(acc)
                out.append(row)
            return Mat3(out)
        return self.apply(other)

    def apply(self, vec: Sequence[CycNum]) -> tuple[CycNum, ...]:
        zero = self.ctx.zero
        return tuple(sum((x * v for x, v in zip(r, vec) if x and v), zero) for r in self.rows)

    def scale(self, c) -> "Mat3":
        return Mat3([[x * c for x in r] for r in self.rows])

    def det(self) -> CycNum:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def adjugate(self) -> "Mat3":
        m = self.rows

        def cof(i, j):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            v = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            return v if (i + j) % 2 == 0 else -v

        return Mat3([[cof(j, i) for j in range(3)] for i in range(3)])

    def inverse(self) -> "Mat3":
        d = self.det()
        if not d:
            raise SingularMatrix("matrix is not invertible")
        return self.adjugate().scale(d.inverse())

    def transpose(self) -> "Mat3":
        return Mat3([[self.rows[j][i] for j in range(3)] for i in range(3)])

    def is_scalar(self) -> bool:
        m = self.rows
        return all(not m[i][j] for i in range(3) for j in range(3) if i != j) and m[0][0] == m[1][1] == m[2][2]

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(3) for j in range(3) if i != j)

    def is_monomial(self) -> bool:
        return all(sum(1 for x in r if x) == 1 for r in self.rows)

    def canonical(self) -> "Mat3":
        """Projective representative: first nonzero entry (row-major) scaled to 1."""
        for r in self.rows:
            for x in r:
                if x:
                    if x == 1:
                        return self
                    return self.scale(x.inverse())
        raise SingularMatrix("zero matrix has no projective class")

    def __pow__(self, k: int) -> "Mat3":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Mat3.identity(self.ctx), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def projective_order(self, bound: int = 84) -> int | None:
        """Smallest k <= bound with self**k scalar, else None."""
        p = self
        for k in range(1, bound + 1):
            if p.is_scalar():
                return k
            p = p @ self
        return None
