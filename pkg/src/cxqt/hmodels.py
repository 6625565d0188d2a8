"""Explicit models for the two noncrystallographic H types.

H3: the three printed reflection matrices over Q(sqrt 5), their Coxeter
relations, and the characteristic polynomials of the positive-determinant
classes in the det(1 - t*g) convention.

H4: the quaternion realization.  Rotations act as x -> l x r*, the
orientation-reversing elements as x -> p x*; the two lemmas this model
rests on (p-maps always have eigenvalue -1; l,r-maps miss it exactly when
l0 + r0 != 0, via det(x -> lx + xr) = 4 (l0+r0)^2 for unit quaternions)
are implemented as executable checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .exact import GOLDEN, ONE, ZERO, ExactMatrix, ExactPoly, Scalar

HALF = Scalar(Fraction(1, 2))


def h3_generators():
    """The three reflection matrices generating the order-120 group."""
    k = GOLDEN
    a = ExactMatrix.diagonal((ONE, -ONE, ONE))
    b = ExactMatrix(
        (
            (HALF, k * HALF, (k - ONE) * HALF),
            (k * HALF, (ONE - k) * HALF, -HALF),
            ((k - ONE) * HALF, -HALF, k * HALF),
        )
    )
    c = ExactMatrix.diagonal((-ONE, ONE, ONE))
    return a, b, c


def _word_matrix(word, gens):
    m = ExactMatrix.identity(3)
    for ch in word:
        m = m * gens["abc".index(ch)]
    return m


def h3_expected_charpolys():
    """Positive-determinant class representatives -> det(1 - t*g)."""
    k = GOLDEN
    one_minus_t = ExactPoly((ONE, -ONE))
    return {
        "": one_minus_t * one_minus_t * one_minus_t,
        "ac": one_minus_t * ExactPoly((ONE, ONE)) * ExactPoly((ONE, ONE)),
        "bc": one_minus_t * ExactPoly((ONE, ONE, ONE)),
        "ab": one_minus_t * ExactPoly((ONE, ONE - k, ONE)),
        "abab": one_minus_t * ExactPoly((ONE, k, ONE)),
    }


def h3_charpoly_table():
    """Compute det(1 - t*g) for the five representatives and compare.

    Returns (word, computed, expected) triples; raises on any mismatch and
    on failure of the companion claims (every entry has root +1, and every
    one of these determinants is +1).
    """
    gens = h3_generators()
    expected = h3_expected_charpolys()
    rows = []
    problems = []
    for word in ("", "ac", "bc", "ab", "abab"):
        mat = _word_matrix(word, gens)
        computed = mat.char_poly().reciprocal()
        want = expected[word]
        rows.append((word, computed, want))
        if computed != want:
            problems.append(
                "%s: computed %s, expected %s"
                % (word or "1", computed.text(), want.text())
            )
        if not computed.evaluate(ONE).is_zero():
            problems.append("%s: no +1 eigenvalue" % (word or "1"))
        if mat.det() != ONE:
            problems.append("%s: determinant is not +1" % (word or "1"))
    if problems:
        raise ValueError("model table mismatch: " + "; ".join(problems))
    return rows


# --- quaternions -------------------------------------------------------------


@dataclass(frozen=True)
class Quaternion:
    w: Scalar
    x: Scalar
    y: Scalar
    z: Scalar

    @classmethod
    def from_vector(cls, v):
        return cls(*v)

    @classmethod
    def from_ints(cls, w, x, y, z, denom=1):
        return cls(
            Scalar(Fraction(w, denom)),
            Scalar(Fraction(x, denom)),
            Scalar(Fraction(y, denom)),
            Scalar(Fraction(z, denom)),
        )

    def to_vector(self):
        return (self.w, self.x, self.y, self.z)

    def __add__(self, other):
        return Quaternion(
            self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z
        )

    def __sub__(self, other):
        return Quaternion(
            self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z
        )

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        a, b, c, d = self.w, self.x, self.y, self.z
        e, f, g, h = other.w, other.x, other.y, other.z
        return Quaternion(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )

    def conj(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def is_unit(self):
        return self.norm2() == ONE


Q_ONE = Quaternion(ONE, ZERO, ZERO, ZERO)
Q_I = Quaternion(ZERO, ONE, ZERO, ZERO)
Q_J = Quaternion(ZERO, ZERO, ONE, ZERO)
Q_K = Quaternion(ZERO, ZERO, ZERO, ONE)
BASIS = (Q_ONE, Q_I, Q_J, Q_K)


def _matrix_from_images(images):
    cols = [img.to_vector() for img in images]
    return ExactMatrix(tuple(zip(*cols)))


def map_lr(l, r):
    """Matrix of x -> l x r* in the basis (1, i, j, k)."""
    if not (l.is_unit() and r.is_unit()):
        raise ValueError("map_lr requires unit quaternions")
    rc = r.conj()
    return _matrix_from_images([l * e * rc for e in BASIS])


def map_star(p):
    """Matrix of x -> p x* in the basis (1, i, j, k)."""
    if not p.is_unit():
        raise ValueError("map_star requires a unit quaternion")
    return _matrix_from_images([p * e.conj() for e in BASIS])


def lx_plus_xr_matrix(l, r):
    """Matrix of x -> l x + x r; defined for arbitrary quaternions."""
    return _matrix_from_images([l * e + e * r for e in BASIS])


def verify_det_identity(l, r):
    """det(x -> lx + xr) == 4 (l0 + r0)^2, asserted for unit quaternions."""
    if not (l.is_unit() and r.is_unit()):
        raise ValueError("the asserted identity is for unit quaternions")
    det = lx_plus_xr_matrix(l, r).det()
    s = l.w + r.w
    return det == Scalar(4) * s * s


def observed_general_det(l, r):
    """Observed determinant of x -> lx + xr for arbitrary quaternions.

    (s^2 + |Im l|^2 + |Im r|^2)^2 - 4 |Im l|^2 |Im r|^2 with s = l0 + r0.
    This reduces to 4 s^2 on unit quaternions; outside the unit case it is
    reported as an observation, not an asserted contract.
    """
    s = l.w + r.w
    u2 = l.x * l.x + l.y * l.y + l.z * l.z
    v2 = r.x * r.x + r.y * r.y + r.z * r.z
    t = s * s + u2 + v2
    return t * t - Scalar(4) * u2 * v2


def h4_no_minus_one_criterion(l, r):
    """True iff x -> l x r* has no eigenvalue -1: the l0 + r0 != 0 test."""
    if not (l.is_unit() and r.is_unit()):
        raise ValueError("criterion applies to unit quaternions")
    return not (l.w + r.w).is_zero()


def star_minus_one_witness(p):
    """A nonzero vector x with p x* = -x: x = -1 + p, or i when p = 1."""
    if p == Q_ONE:
        return Q_I.to_vector()
    return (p - Q_ONE).to_vector()


def icosian_units():
    """The 120 unit quaternions forming the H4 root set."""
    from .roots import build_root_system

    system = build_root_system("H4")
    return tuple(Quaternion.from_vector(r) for r in system.roots)


def random_unit_quaternions(count, seed=0):
    """Exact unit quaternions: rescaled integer quadruples with square
    norm, optionally twisted by an icosian to leave the rational subfield."""
    rng = random.Random(seed)
    icosians = icosian_units()
    out = []
    while len(out) < count:
        quad = [rng.randint(-6, 6) for _ in range(4)]
        n = sum(v * v for v in quad)
        if n == 0 or isqrt(n) ** 2 != n:
            continue
        s = isqrt(n)
        q = Quaternion.from_ints(*quad, denom=s)
        if rng.random() < 0.5:
            q = q * icosians[rng.randrange(len(icosians))]
        out.append(q)
    return out


def lift_rotation(matrix, units=None):
    """Find unit quaternions (l, r) with matrix = (x -> l x r*).

    Works for the rotation half of the quaternion model: l is located by
    scanning the 120 icosians, then r = q* l with q the image of 1.
    """
    if units is None:
        units = icosian_units()
    q = Quaternion.from_vector(matrix.apply(Q_ONE.to_vector()))
    qc = q.conj()
    # M'(x) = M(x) q* is conjugation by l; match it on i and j
    mi = Quaternion.from_vector(matrix.apply(Q_I.to_vector())) * qc
    mj = Quaternion.from_vector(matrix.apply(Q_J.to_vector())) * qc
    for l in units:
        lc = l.conj()
        if l * Q_I * lc == mi and l * Q_J * lc == mj:
            r = qc * l
            if map_lr(l, r) == matrix:
                return l, r
    raise ValueError("matrix is not an l,r rotation of this model")
