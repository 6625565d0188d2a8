"""Exact arithmetic over the field Q(sqrt 5): scalars, matrices, polynomials.

Everything downstream (root systems, reflection groups, class invariants)
runs on these types; there is no floating-point path anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class Scalar:
    """a + b*sqrt(5) with a, b exact rationals.

    Fraction keeps both components in lowest terms with positive
    denominator, so equal values are structurally equal.  Crystallographic
    computations simply keep b = 0.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, other):
        return Scalar(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return Scalar(self.a - other.a, self.b - other.b)

    def __mul__(self, other):
        return Scalar(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def __neg__(self):
        return Scalar(-self.a, -self.b)

    def __truediv__(self, other):
        n = other.a * other.a - 5 * other.b * other.b
        if n == 0:
            # n = 0 forces a = b = 0 since sqrt(5) is irrational
            raise ZeroDivisionError("division by zero Scalar")
        return self * Scalar(other.a / n, -other.b / n)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_rational(self):
        return self.b == 0

    def sign(self):
        """Exact sign of the real value a + b*sqrt(5)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # mixed signs: compare a^2 against 5 b^2
        bigger_rational = self.a * self.a > 5 * self.b * self.b
        if self.a > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def text(self):
        """Canonical rendering "a/b+c/d*r5", bit-exact across platforms."""
        return "%d/%d+%d/%d*r5" % (
            self.a.numerator,
            self.a.denominator,
            self.b.numerator,
            self.b.denominator,
        )

    @classmethod
    def parse(cls, s):
        rat, _, irr = s.partition("+")
        if not irr.endswith("*r5"):
            raise ValueError("bad scalar text: %r" % (s,))
        return cls(Fraction(rat), Fraction(irr[:-3]))

    def __repr__(self):
        return self.text()


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT5 = Scalar(0, 1)
# the golden ratio (1 + sqrt 5)/2; its inverse is GOLDEN - 1
GOLDEN = Scalar(Fraction(1, 2), Fraction(1, 2))


def _as_scalar(x):
    return x if isinstance(x, Scalar) else Scalar(x)


class ExactMatrix:
    """Dense matrix of Scalars.  Group elements are square and orthogonal."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_as_scalar(x) for x in row) for row in rows)
        if rows and any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("ragged rows")
        self.rows = rows

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def n(self):
        if self.nrows != self.ncols:
            raise ValueError("matrix is not square")
        return self.nrows

    @classmethod
    def identity(cls, n):
        return cls(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        )

    @classmethod
    def diagonal(cls, entries):
        entries = tuple(_as_scalar(x) for x in entries)
        n = len(entries)
        return cls(
            tuple(
                tuple(entries[i] if i == j else ZERO for j in range(n))
                for i in range(n)
            )
        )

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            tuple(
                tuple(x + y for x, y in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactMatrix(tuple(tuple(-x for x in row) for row in self.rows))

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return ExactMatrix(
                tuple(tuple(x * other for x in row) for row in self.rows)
            )
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = tuple(zip(*other.rows))
        return ExactMatrix(
            tuple(
                tuple(_dot(row, col) for col in cols) for row in self.rows
            )
        )

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = ExactMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def transpose(self):
        return ExactMatrix(tuple(zip(*self.rows)))

    def apply(self, vector):
        return tuple(_dot(row, vector) for row in self.rows)

    def trace(self):
        t = ZERO
        for i in range(self.n):
            t = t + self.rows[i][i]
        return t

    def is_orthogonal(self):
        return self.transpose() * self == ExactMatrix.identity(self.n)

    def _eliminated(self):
        """Row echelon form; returns (rows, rank, det_of_square_part)."""
        n, m = self.nrows, self.ncols
        rows = [list(row) for row in self.rows]
        det = ONE
        rank = 0
        for col in range(m):
            pivot = None
            for r in range(rank, n):
                if not rows[r][col].is_zero():
                    pivot = r
                    break
            if pivot is None:
                det = ZERO
                continue
            if pivot != rank:
                rows[rank], rows[pivot] = rows[pivot], rows[rank]
                det = -det
            p = rows[rank][col]
            det = det * p
            for r in range(rank + 1, n):
                f = rows[r][col]
                if f.is_zero():
                    continue
                f = f / p
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rows, rank, det

    def rank(self):
        return self._eliminated()[1]

    def nullity(self):
        return self.ncols - self.rank()

    def det(self):
        n = self.n
        _, rank, det = self._eliminated()
        return det if rank == n else ZERO

    def inverse(self):
        n = self.n
        aug = ExactMatrix(
            tuple(
                tuple(self.rows[i]) + tuple(ExactMatrix.identity(n).rows[i])
                for i in range(n)
            )
        )
        rows, rank, _ = aug._eliminated()
        if rank < n:
            raise ZeroDivisionError("matrix is singular")
        # back substitution on the echelon form
        for r in range(n - 1, -1, -1):
            p = rows[r][r]
            rows[r] = [x / p for x in rows[r]]
            for above in range(r):
                f = rows[above][r]
                if f.is_zero():
                    continue
                rows[above] = [x - f * y for x, y in zip(rows[above], rows[r])]
        return ExactMatrix(tuple(tuple(row[n:]) for row in rows))

    def char_poly(self):
        """Monic characteristic polynomial det(t*I - M), Faddeev-LeVerrier."""
        n = self.n
        coeffs = [ZERO] * n + [ONE]  # c_n = 1
        mk = self
        for k in range(1, n + 1):
            ck = -(mk.trace() / Scalar(k))
            coeffs[n - k] = ck
            if k < n:
                mk = self * (mk + ExactMatrix.identity(n) * ck)
        return ExactPoly(coeffs)

    def __repr__(self):
        body = "; ".join(
            " ".join(x.text() for x in row) for row in self.rows
        )
        return "ExactMatrix[%s]" % body


def _dot(u, v):
    acc = ZERO
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


class ExactPoly:
    """Polynomial over Scalar, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [_as_scalar(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        # zero polynomial has degree -1 by convention here
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            x = self.coeffs[i] if i < len(self.coeffs) else ZERO
            y = other.coeffs[i] if i < len(other.coeffs) else ZERO
            out.append(x + y)
        return ExactPoly(out)

    def __neg__(self):
        return ExactPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return ExactPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return ExactPoly(())
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return ExactPoly(out)

    def evaluate(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def root_multiplicity(self, r):
        """Multiplicity of r as a root, by repeated synthetic division."""
        p = self
        mult = 0
        while p.degree >= 1 and p.evaluate(r).is_zero():
            # divide by (t - r)
            out = [ZERO] * p.degree
            carry = ZERO
            for i in range(p.degree, 0, -1):
                carry = p.coeffs[i] + carry * r
                out[i - 1] = carry
            p = ExactPoly(out)
            mult += 1
        return mult

    def reciprocal(self):
        """t^deg * p(1/t): coefficient reversal.

        Applied to a monic det(t*I - g) this yields det(I - t*g), the
        convention used by the explicit 3-dimensional model tables.
        """
        return ExactPoly(tuple(reversed(self.coeffs)))

    def text(self):
        return ",".join(c.text() for c in self.coeffs)

    @classmethod
    def parse(cls, s):
        if not s:
            return cls(())
        return cls([Scalar.parse(part) for part in s.split(",")])

    def __repr__(self):
        return "ExactPoly(%s)" % (self.text(),)


# the monomial t, handy for building polynomials in tests and tables
T = ExactPoly((ZERO, ONE))
