"""Exact arithmetic over the Gaussian rationals Q(i) and a small dense matrix kernel.

Every number is stored as ``(a + b*i) / d`` with integers ``a, b`` and ``d > 0``
reduced so that ``gcd(a, b, d) == 1``.  That triple is canonical, so equality
and hashing are structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "GaussianRational",
    "Matrix",
    "Vector",
    "ZERO",
    "ONE",
    "I_UNIT",
    "parse_scalar",
    "rref",
    "rref_rows",
    "rank",
    "nullspace",
    "kron",
    "vec",
    "unvec",
    "RowSpace",
]


class GaussianRational:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = _as_fraction(re)
        im = _as_fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = gcd(a, b, d)
        self._a, self._b, self._d = a // g, b // g, d // g

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        z = object.__new__(cls)
        z._a, z._b, z._d = a, b, d
        return z

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        return cls(x)

    @property
    def real(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def re_num(self) -> int:
        return self.real.numerator

    @property
    def re_den(self) -> int:
        return self.real.denominator

    @property
    def im_num(self) -> int:
        return self.imag.numerator

    @property
    def im_den(self) -> int:
        return self.imag.denominator

    def conjugate(self) -> "GaussianRational":
        if not self._b:
            return self
        return GaussianRational._raw(self._a, -self._b, self._d)

    def reciprocal(self) -> "GaussianRational":
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational._raw(d * a, -d * b, n)

    def is_real(self) -> bool:
        return self._b == 0

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a1, b1, d1 = self._a, self._b, self._d
        a2, b2, d2 = other._a, other._b, other._d
        if d1 == d2:
            return GaussianRational._raw(a1 + a2, b1 + b2, d1)
        return GaussianRational._raw(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        z = object.__new__(GaussianRational)
        z._a, z._b, z._d = -self._a, -self._b, self._d
        return z

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a1, b1, d1 = self._a, self._b, self._d
        a2, b2, d2 = other._a, other._b, other._d
        if b1 == 0 and b2 == 0:
            return GaussianRational._raw(a1 * a2, 0, d1 * d2)
        return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.reciprocal()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __str__(self):
        re_part = _fmt_fraction(self.real)
        if self._b == 0:
            return re_part
        im = _fmt_fraction(self.imag)
        if self._a == 0:
            return f"{im}i"
        sign = "" if im.startswith("-") else "+"
        return f"{re_part}{sign}{im}i"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def _fmt_fraction(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)

_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?:(?P<im>[+-]\d*(?:/\d+)?)i)?|(?P<imonly>[+-]?\d*(?:/\d+)?)i)$"
)


def _im_fraction(text: str) -> Fraction:
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    if text.startswith(("+/", "-/", "/")):
        raise ValueError
    return Fraction(text)


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``"a/b"``, ``"a/b+c/di"``, ``"2"``, ``"-i"`` and similar forms."""
    s = str(text).strip().replace("−", "-").replace(" ", "")
    m = _SCALAR_RE.match(s)
    if not m:
        raise ValueError(f"invalid scalar {text!r}")
    try:
        if m.group("imonly") is not None:
            return GaussianRational(0, _im_fraction(m.group("imonly")))
        re_part = Fraction(m.group("re"))
        im_text = m.group("im")
        im_part = Fraction(0) if im_text is None else _im_fraction(im_text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"invalid scalar {text!r}") from None
    return GaussianRational(re_part, im_part)


Vector = tuple  # tuple[GaussianRational, ...]


def as_vector(values: Iterable) -> Vector:
    return tuple(GaussianRational.coerce(v) for v in values)


def vdot(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> GaussianRational:
    """Inner product sum(u_i * conj(v_i))."""
    acc = ZERO
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y.conjugate()
    return acc


def vconj(u: Sequence[GaussianRational]) -> Vector:
    return tuple(x.conjugate() for x in u)


def is_zero_vector(u: Sequence[GaussianRational]) -> bool:
    return not any(u)


class Matrix:
    """Immutable dense matrix of Gaussian rationals stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ent = tuple(GaussianRational.coerce(e) for e in entries)
        if len(ent) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(ent)}")
        self.rows = rows
        self.cols = cols
        self.entries = ent
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("from_rows needs at least one row; use Matrix.zeros")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._trusted(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "Matrix":
        """Matrix unit with a single 1 at (i, j), zero-based."""
        ent = [ZERO] * (rows * cols)
        ent[i * cols + j] = ONE
        return cls._trusted(rows, cols, tuple(ent))

    @classmethod
    def _trusted(cls, rows: int, cols: int, entries: tuple) -> "Matrix":
        m = object.__new__(cls)
        m.rows, m.cols, m.entries, m._hash = rows, cols, entries, None
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        return Matrix._trusted(c, r, tuple(self.entries[i * c + j] for j in range(c) for i in range(r)))

    def conj(self) -> "Matrix":
        return Matrix._trusted(self.rows, self.cols, tuple(x.conjugate() for x in self.entries))

    def adjoint(self) -> "Matrix":
        """Conjugate transpose."""
        return self.transpose().conj()

    H = property(adjoint)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix._trusted(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix._trusted(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, s) -> "Matrix":
        s = GaussianRational.coerce(s)
        return Matrix._trusted(self.rows, self.cols, tuple(s * x for x in self.entries))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            n, k, m = self.rows, self.cols, other.cols
            out = []
            a, b = self.entries, other.entries
            for i in range(n):
                arow = a[i * k:(i + 1) * k]
                nz = [(t, x) for t, x in enumerate(arow) if x]
                for j in range(m):
                    acc = ZERO
                    for t, x in nz:
                        y = b[t * m + j]
                        if y:
                            acc = acc + x * y
                    out.append(acc)
            return Matrix._trusted(n, m, tuple(out))
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(v)}")
        return tuple(
            _dot_plain(self.entries[i * self.cols:(i + 1) * self.cols], v) for i in range(self.rows)
        )

    def inverse(self) -> "Matrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        red, piv = rref_rows(aug, 2 * n)
        if piv != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix._trusted(n, n, tuple(x for r in red[:n] for x in r[n:]))

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))
        return f"Matrix([{rows}])"


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _dot_plain(u, v) -> GaussianRational:
    acc = ZERO
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def rref_rows(rows: Iterable[Sequence[GaussianRational]], ncols: int) -> tuple[list[list], list[int]]:
    """Row-reduce a list of rows; returns the nonzero reduced rows and pivot columns."""
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        p = None
        for i in range(r, len(work)):
            if work[i][c]:
                p = i
                break
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        prow = work[r]
        lead = prow[c]
        if lead != ONE:
            inv = lead.reciprocal()
            for k in range(c, ncols):
                if prow[k]:
                    prow[k] = prow[k] * inv
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(len(work)):
            if i == r:
                continue
            row = work[i]
            f = row[c]
            if not f:
                continue
            for k in nz:
                row[k] = row[k] - f * prow[k]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form, zero rows kept at the bottom so the shape is preserved."""
    red, _ = rref_rows(m.to_rows(), m.cols)
    ent = [x for row in red for x in row]
    ent.extend([ZERO] * (m.rows * m.cols - len(ent)))
    return Matrix._trusted(m.rows, m.cols, tuple(ent))


def rank(m: Matrix) -> int:
    return len(rref_rows(m.to_rows(), m.cols)[1])


def _nullspace_rows(rows: Iterable[Sequence[GaussianRational]], ncols: int) -> list[Vector]:
    red, pivots = rref_rows(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    canon, _ = rref_rows(basis, ncols)
    return [tuple(v) for v in canon]


def nullspace(m: Matrix) -> list[Vector]:
    """Canonical (row-reduced) basis of {x : m @ x == 0}."""
    return _nullspace_rows(m.to_rows(), m.cols)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product, block (i, j) equal to a[i, j] * b."""
    ra, ca, rb, cb = a.rows, a.cols, b.rows, b.cols
    out = []
    for i in range(ra):
        for k in range(rb):
            brow = b.row(k)
            for j in range(ca):
                x = a[i, j]
                if x:
                    out.extend(x * y if y else ZERO for y in brow)
                else:
                    out.extend([ZERO] * cb)
    return Matrix._trusted(ra * rb, ca * cb, tuple(out))


def vec(m: Matrix) -> Vector:
    """Column-stacking vectorization: vec(m)[j*rows + i] == m[i, j]."""
    return tuple(m.entries[i * m.cols + j] for j in range(m.cols) for i in range(m.rows))


def unvec(v: Sequence, rows: int, cols: int) -> Matrix:
    if len(v) != rows * cols:
        raise ValueError(f"cannot unvec length {len(v)} into {rows}x{cols}")
    v = as_vector(v)
    return Matrix._trusted(rows, cols, tuple(v[j * rows + i] for i in range(rows) for j in range(cols)))


class RowSpace:
    """Incrementally maintained reduced row basis (mutable helper, not shared)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence[GaussianRational]) -> list:
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            if f:
                for k in range(p, self.ncols):
                    if row[k]:
                        w[k] = w[k] - f * row[k]
        return w

    def contains(self, v: Sequence[GaussianRational]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[GaussianRational]) -> bool:
        """Add a vector; returns True when the span grew."""
        w = self.reduce(v)
        p = next((k for k, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = w[p].reciprocal()
        w = [x * inv if x else x for x in w]
        for row in self.rows:
            f = row[p]
            if f:
                for k in range(p, self.ncols):
                    if w[k]:
                        row[k] = row[k] - f * w[k]
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < p:
            idx += 1
        self.rows.insert(idx, w)
        self.pivots.insert(idx, p)
        return True

    def extend(self, vs: Iterable[Sequence[GaussianRational]]) -> None:
        for v in vs:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> tuple[Vector, ...]:
        return tuple(tuple(r) for r in self.rows)
