"""Closed-form class counts: partition counters for the classical series,
the dihedral class model, and the exceptional constants.

These are the oracle partners of the brute-force engine; the two must agree
wherever both run.
"""

from __future__ import annotations

from dataclasses import dataclass

EXCEPTIONAL_COUNTS = {
    "E6": 9,
    "E7": 12,
    "E8": 30,
    "F4": 9,
    "G2": 3,
    "H3": 4,
    "H4": 20,
}


@dataclass(frozen=True)
class PartitionTable:
    """DP tables for partition counts, indexed 0..n_max."""

    n_max: int
    p_all: tuple
    p_odd: tuple
    p_even_evens: tuple


def build_partition_table(n_max):
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    size = n_max + 1

    alls = [1] + [0] * n_max
    for part in range(1, size):
        for s in range(part, size):
            alls[s] += alls[s - part]

    odds = [1] + [0] * n_max
    for part in range(1, size, 2):
        for s in range(part, size):
            odds[s] += odds[s - part]

    # track the parity of the number of even parts used
    even_parity = [[1, 0]] + [[0, 0] for _ in range(n_max)]
    for part in range(1, size):
        flip = part % 2 == 0
        for s in range(part, size):
            prev = even_parity[s - part]
            if flip:
                even_parity[s][0] += prev[1]
                even_parity[s][1] += prev[0]
            else:
                even_parity[s][0] += prev[0]
                even_parity[s][1] += prev[1]

    return PartitionTable(
        n_max=n_max,
        p_all=tuple(alls),
        p_odd=tuple(odds),
        p_even_evens=tuple(row[0] for row in even_parity),
    )


def p_all(n):
    """Partitions of n into positive integers."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return build_partition_table(n).p_all[n]


def p_odd(n):
    """Partitions of n into odd positive integers."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return build_partition_table(n).p_odd[n]


def p_even_evens(n):
    """Partitions of n with an even number of even parts."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return build_partition_table(n).p_even_evens[n]


def dihedral_classes(n):
    """Class list of the order-2n dihedral group acting on the plane.

    Rotations by 2*pi*k/n and n-k are conjugate; reflections form one class
    for odd n and two for even n.  Each record carries the dimension of the
    (-1)-eigenspace: 2 for the half turn, 1 for any reflection, else 0.
    """
    if n < 2:
        raise ValueError("dihedral model needs n >= 2")
    classes = []
    for k in range(0, n // 2 + 1):
        grade = 2 if 2 * k == n else 0
        size = 1 if k == 0 or 2 * k == n else 2
        classes.append(("rotation", k, size, grade))
    if n % 2 == 1:
        classes.append(("reflection", 0, n, 1))
    else:
        classes.append(("reflection", 0, n // 2, 1))
        classes.append(("reflection", 1, n // 2, 1))
    return classes


def q_dihedral(n):
    """Count of dihedral classes with no -1 eigenvalue, from the model."""
    return sum(1 for _, _, _, grade in dihedral_classes(n) if grade == 0)


def q_closed(label, n=None):
    """Closed-form count for any supported type tag."""
    if label in EXCEPTIONAL_COUNTS:
        return EXCEPTIONAL_COUNTS[label]
    if label == "A":
        if n is None or n < 1:
            raise ValueError("A requires rank >= 1")
        return p_odd(n + 1)
    if label in ("B", "C", "BC"):
        if n is None or n < 1:
            raise ValueError("%s requires rank >= 1" % label)
        return p_all(n)
    if label == "D":
        if n is None or n < 2:
            raise ValueError("D requires rank >= 2")
        return p_even_evens(n)
    if label == "I2":
        if n is None:
            raise ValueError("I2 requires n")
        return q_dihedral(n)
    raise ValueError("unknown type %r" % (label,))
