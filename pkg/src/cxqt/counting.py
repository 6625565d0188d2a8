"""The count Q: conjugacy classes whose elements have no eigenvalue -1."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .closedforms import q_closed
from .engine import conjugacy_classes, generate
from .exact import ExactMatrix


def e_grade(matrix):
    """Dimension of the eigenspace {x : M x = -x}, by exact elimination."""
    return (matrix + ExactMatrix.identity(matrix.n)).nullity()


@dataclass
class QReport:
    label: str
    rank: int
    group_order: int
    num_classes: int | None
    q: int
    method: str
    classes: list

    def to_dict(self):
        return {
            "type": self.label,
            "rank": self.rank,
            "group_order": self.group_order,
            "num_classes": self.num_classes,
            "q": self.q,
            "method": self.method,
            "classes": [
                {
                    "size": c.size,
                    "order": c.order,
                    "det": c.det.text(),
                    "trace": c.trace.text(),
                    "charpoly": c.charpoly.text(),
                    "e_grade": c.e_grade,
                    "rep_word": list(c.rep_word),
                }
                for c in self.classes
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))


def q_bruteforce(system, budget=None, threads=1):
    """Generate the group, enumerate classes, count those with grade 0."""
    group = generate(system, budget)
    classes = conjugacy_classes(group, threads=threads)
    q = sum(1 for c in classes if c.e_grade == 0)
    return QReport(
        label=system.name,
        rank=system.rank,
        group_order=group.order,
        num_classes=len(classes),
        q=q,
        method="brute",
        classes=list(classes),
    )


def report_from_group(group, threads=1):
    """Brute-force report for an already generated (or cached) group."""
    classes = conjugacy_classes(group, threads=threads)
    q = sum(1 for c in classes if c.e_grade == 0)
    return QReport(
        label=group.system.name,
        rank=group.system.rank,
        group_order=group.order,
        num_classes=len(classes),
        q=q,
        method="brute",
        classes=list(classes),
    )


def q_closed_report(system):
    """Closed-form report; no enumeration, so no per-class records."""
    if system.symbolic:
        q = q_closed("I2", system.dihedral_n)
    elif system.label in ("A", "B", "C", "D", "BC"):
        q = q_closed(system.label, system.rank)
    else:
        q = q_closed(system.label)
    return QReport(
        label=system.name,
        rank=system.rank,
        group_order=system.group_order,
        num_classes=None,
        q=q,
        method="closed",
        classes=[],
    )


def verify_multiplicativity(r1, r2, budget=None):
    """Brute-force check that Q is multiplicative over the direct sum."""
    from .roots import direct_sum

    q1 = q_bruteforce(r1, budget).q
    q2 = q_bruteforce(r2, budget).q
    q12 = q_bruteforce(direct_sum(r1, r2), budget).q
    return q12 == q1 * q2
