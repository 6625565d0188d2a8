"""Reflection group generation and conjugacy-class enumeration.

Elements are stored as permutations of the ordered root list (the action on
roots is faithful), packed into a uint8 array with one row per element and
kept in lexicographic order, so a row's position is its canonical index.
Composition is numpy fancy indexing, which keeps the E7 run (order
2,903,040) to a couple of minutes and well under 4 GB.

Breadth-first generation exploits that the Cayley graph over reflection
generators is bipartite via the determinant sign: a product of a level-k
element with a generator lands in level k-1 or k+1, never deeper, so each
new level only needs deduplication against the level before last.
"""

from __future__ import annotations

import hashlib
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exact import ONE, ExactMatrix
from .roots import reflection_in, system_from_json, system_to_json, vdot

SLOW_CUTOFF = 1_000_000
NO_PARENT = 255

CACHE_MAGIC = b"CXQT"
CACHE_VERSION = 1


class BudgetError(Exception):
    """Requested enumeration exceeds the configured resource budget."""


class CacheError(Exception):
    pass


class CacheVersionError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


class CacheClosureError(CacheError):
    pass


@dataclass
class Budget:
    max_elements: int = 5_000_000
    slow: bool = False
    force_e8: bool = False


@dataclass(frozen=True)
class ConjugacyClass:
    rep_index: int
    size: int
    order: int
    det: object
    trace: object
    charpoly: object
    e_grade: int
    rep_word: tuple


@dataclass(frozen=True)
class GroupElement:
    key: bytes
    matrix: ExactMatrix
    word: tuple


def _void_view(rows):
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.shape[1]))).ravel()


def _rows_membership(rows, sorted_void):
    """Boolean mask: which rows occur in the sorted void-key array."""
    v = _void_view(rows)
    pos = np.searchsorted(sorted_void, v)
    pos_clipped = np.minimum(pos, len(sorted_void) - 1)
    return sorted_void[pos_clipped] == v


class FiniteGroup:
    """A generated reflection group over a concrete root system."""

    def __init__(self, system, keys, gen_perms, parent_gen):
        self.system = system
        self.keys = keys
        self.gen_perms = gen_perms
        self.parent_gen = parent_gen
        self.order = keys.shape[0]
        self._void = _void_view(keys)
        self.identity_index = self.index_of_row(
            np.arange(keys.shape[1], dtype=keys.dtype)
        )
        self.classes = None
        self.class_id = None
        self._proj = None

    # --- element lookup -------------------------------------------------

    def index_of_row(self, row):
        pos = int(np.searchsorted(self._void, _void_view(row[None, :])[0]))
        if pos >= self.order or not np.array_equal(self.keys[pos], row):
            raise KeyError("permutation is not a group element")
        return pos

    def indices_of_rows(self, rows):
        v = _void_view(rows)
        pos = np.searchsorted(self._void, v)
        if (pos >= self.order).any() or (self._void[pos] != v).any():
            raise KeyError("some rows are not group elements")
        return pos

    @property
    def generator_indices(self):
        return tuple(self.index_of_row(p) for p in self.gen_perms)

    def compose(self, i, j):
        """Index of element i * j."""
        return self.index_of_row(self.keys[i][self.keys[j]])

    def index_of_matrix(self, matrix):
        """Index of the element acting as the given orthogonal matrix."""
        root_index = {r: k for k, r in enumerate(self.system.roots)}
        row = np.empty(len(self.system.roots), dtype=self.keys.dtype)
        for k, root in enumerate(self.system.roots):
            image = tuple(matrix.apply(root))
            if image not in root_index:
                raise KeyError("matrix does not preserve the root set")
            row[k] = root_index[image]
        return self.index_of_row(row)

    def inverse_index(self, i):
        inv = np.argsort(self.keys[i]).astype(self.keys.dtype)
        return self.index_of_row(inv)

    # --- element data ----------------------------------------------------

    def element_order(self, i):
        perm = self.keys[i]
        seen = np.zeros(len(perm), dtype=bool)
        result = 1
        for start in range(len(perm)):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = int(perm[j])
                length += 1
            result = math.lcm(result, length)
        return result

    def word(self, i):
        out = []
        while i != self.identity_index:
            g = int(self.parent_gen[i])
            out.append(g)
            i = self.index_of_row(self.keys[i][self.gen_perms[g]])
        out.reverse()
        return tuple(out)

    def _projection(self):
        # M = A_p K + (I - A K): identity on the root-span complement,
        # determined by simple-root images on the span
        if self._proj is None:
            system = self.system
            root_index = {r: k for k, r in enumerate(system.roots)}
            simple_idx = tuple(root_index[s] for s in system.simple_roots)
            a = ExactMatrix(tuple(zip(*system.simple_roots)))
            at = a.transpose()
            k = (at * a).inverse() * at
            c = ExactMatrix.identity(system.ambient_dim) - a * k
            self._proj = (simple_idx, k, c)
        return self._proj

    def matrix(self, i):
        simple_idx, k, c = self._projection()
        perm = self.keys[i]
        images = tuple(self.system.roots[int(perm[s])] for s in simple_idx)
        a_p = ExactMatrix(tuple(zip(*images)))
        return a_p * k + c

    def element(self, i):
        return GroupElement(
            key=self.keys[i].tobytes(),
            matrix=self.matrix(i),
            word=self.word(i),
        )

    def class_members(self, class_index):
        if self.class_id is None:
            raise RuntimeError("classes not computed yet")
        return np.nonzero(self.class_id == class_index)[0]


def _generator_perms(system):
    root_index = {r: k for k, r in enumerate(system.roots)}
    m = len(system.roots)
    if m > 255:
        raise ValueError("more than 255 roots; key width not supported")
    perms = []
    two = ONE + ONE
    for v in system.simple_roots:
        tv = two / vdot(v, v)
        images = []
        for w in system.roots:
            cf = tv * vdot(w, v)
            img = tuple(wi - cf * vi for wi, vi in zip(w, v))
            images.append(root_index[img])
        perms.append(np.array(images, dtype=np.uint8))
    return tuple(perms)


def generate(system, budget=None):
    """Breadth-first closure of the simple reflections.

    The result stores every element once under its canonical key; the
    element count is checked against the degree product for the type.
    """
    if system.symbolic:
        raise ValueError("cannot generate a symbolic dihedral system")
    budget = budget or Budget()
    predicted = system.group_order
    if not budget.force_e8:
        if "E8" in system.name and predicted > budget.max_elements:
            raise BudgetError(
                "W(E8) has order %d; enumeration is beyond desk scale "
                "(use force_e8 to try anyway)" % predicted
            )
        if predicted > budget.max_elements:
            raise BudgetError(
                "predicted order %d exceeds the element budget %d"
                % (predicted, budget.max_elements)
            )
        if predicted > SLOW_CUTOFF and not budget.slow:
            raise BudgetError(
                "predicted order %d is a long run; enable slow mode"
                % predicted
            )

    perms = _generator_perms(system)
    m = len(system.roots)
    identity = np.arange(m, dtype=np.uint8)[None, :]

    levels = [identity]
    level_parents = [np.array([NO_PARENT], dtype=np.uint8)]
    prev, before = identity, None
    total = 1
    while True:
        cand = np.concatenate([prev[:, p] for p in perms])
        gens = np.concatenate(
            [
                np.full(prev.shape[0], g, dtype=np.uint8)
                for g in range(len(perms))
            ]
        )
        cand, first = np.unique(cand, axis=0, return_index=True)
        gens = gens[first]
        if before is None:
            mask = ~_rows_membership(cand, _void_view(identity))
        else:
            mask = ~_rows_membership(cand, _void_view(before))
        nxt, nxtgens = cand[mask], gens[mask]
        if nxt.shape[0] == 0:
            break
        total += nxt.shape[0]
        if total > predicted:
            raise RuntimeError(
                "generation exceeded the predicted order %d" % predicted
            )
        levels.append(nxt)
        level_parents.append(nxtgens)
        before, prev = prev, nxt

    if total != predicted:
        raise RuntimeError(
            "generated %d elements but the degree product is %d"
            % (total, predicted)
        )
    rows = np.concatenate(levels)
    parents = np.concatenate(level_parents)
    rows, first = np.unique(rows, axis=0, return_index=True)
    parents = parents[first]
    if rows.shape[0] != predicted:
        raise RuntimeError("levels were not disjoint")  # pragma: no cover
    return FiniteGroup(system, rows, perms, parents)


def _class_partition(group):
    keys, perms = group.keys, group.gen_perms
    n = group.order
    class_id = np.full(n, -1, dtype=np.int32)
    reps = []
    sizes = []
    cid = 0
    for start in range(n):
        if class_id[start] >= 0:
            continue
        class_id[start] = cid
        size = 1
        frontier = np.array([start])
        while frontier.size:
            rows = keys[frontier]
            found = []
            for p in perms:
                conj = p[rows][:, p]  # s w s for an involution s
                found.append(group.indices_of_rows(conj))
            found = np.unique(np.concatenate(found))
            found = found[class_id[found] < 0]
            class_id[found] = cid
            size += found.size
            frontier = found
        reps.append(start)
        sizes.append(size)
        cid += 1
    return class_id, reps, sizes


def _invariants(group, rep, size):
    mat = group.matrix(rep)
    n = mat.n
    poly = mat.char_poly()
    # constant term of det(tI - M) is (-1)^n det M
    det = poly.coeffs[0] if n % 2 == 0 else -poly.coeffs[0]
    grade = (mat + ExactMatrix.identity(n)).nullity()
    # the charpoly route must agree with the kernel route
    if poly.root_multiplicity(-ONE) != grade:
        raise RuntimeError(
            "eigenvalue -1 multiplicity disagrees with kernel dimension"
        )
    return ConjugacyClass(
        rep_index=rep,
        size=size,
        order=group.element_order(rep),
        det=det,
        trace=mat.trace(),
        charpoly=poly,
        e_grade=grade,
        rep_word=group.word(rep),
    )


def conjugacy_classes(group, threads=1):
    """Partition the group by conjugation orbits under the generators.

    Classes are sorted by (size, representative key); representatives are
    the minimal canonical keys, so output is deterministic and independent
    of the thread count.
    """
    if group.classes is not None:
        return group.classes
    class_id, reps, sizes = _class_partition(group)
    if sum(sizes) != group.order:
        raise RuntimeError("class sizes do not sum to the group order")
    work = list(zip(reps, sizes))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(
                pool.map(lambda rs: _invariants(group, *rs), work)
            )
    else:
        records = [_invariants(group, rep, size) for rep, size in work]
    order_by = sorted(
        range(len(records)), key=lambda i: (records[i].size, records[i].rep_index)
    )
    remap = {old: new for new, old in enumerate(order_by)}
    group.class_id = np.array(
        [remap[int(c)] for c in class_id], dtype=np.int32
    )
    group.classes = [records[i] for i in order_by]
    return group.classes


# --- cache -----------------------------------------------------------------


def cache_store(group, path):
    """Versioned little-endian binary snapshot of a generated group."""
    system_json = system_to_json(group.system).encode("utf-8")
    has_classes = group.classes is not None

    body = bytearray()
    body += struct.pack("<I", len(system_json))
    body += system_json
    body += group.keys.tobytes()
    body += group.parent_gen.tobytes()
    if has_classes:
        for record in group.classes:
            body += struct.pack("<QQ", record.rep_index, record.size)
        body += group.class_id.astype("<i4").tobytes()

    header = struct.pack(
        "<4sHHHHHQI",
        CACHE_MAGIC,
        CACHE_VERSION,
        1 if has_classes else 0,
        group.system.rank,
        group.system.ambient_dim,
        len(group.system.roots),
        group.order,
        len(group.classes) if has_classes else 0,
    )
    digest = hashlib.sha256(bytes(body)).digest()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(bytes(body))
        fh.write(digest)


def cache_load(path):
    """Load a cached group; verifies version, checksum, sample closure."""
    with open(path, "rb") as fh:
        blob = fh.read()
    head_size = struct.calcsize("<4sHHHHHQI")
    if len(blob) < head_size + 32:
        raise CacheError("file too short")
    magic, version, flags, rank, ambient, nroots, order, nclasses = (
        struct.unpack("<4sHHHHHQI", blob[:head_size])
    )
    if magic != CACHE_MAGIC:
        raise CacheError("bad magic")
    if version != CACHE_VERSION:
        raise CacheVersionError(
            "cache format version %d, expected %d" % (version, CACHE_VERSION)
        )
    body = blob[head_size:-32]
    digest = blob[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise CacheChecksumError("cache body checksum mismatch")

    offset = 0
    (json_len,) = struct.unpack_from("<I", body, offset)
    offset += 4
    system = system_from_json(body[offset : offset + json_len].decode("utf-8"))
    offset += json_len
    if len(system.roots) != nroots or system.rank != rank:
        raise CacheError("header disagrees with stored system")
    keys = np.frombuffer(
        body, dtype=np.uint8, count=order * nroots, offset=offset
    ).reshape(order, nroots).copy()
    offset += order * nroots
    parents = np.frombuffer(
        body, dtype=np.uint8, count=order, offset=offset
    ).copy()
    offset += order

    group = FiniteGroup(system, keys, _generator_perms(system), parents)

    # spot-check closure: products of random elements with generators
    rng = np.random.default_rng(12345)
    sample = rng.integers(0, order, size=min(64, order))
    for i in sample:
        for p in group.gen_perms:
            row = keys[int(i)][p]
            try:
                group.index_of_row(row)
            except KeyError:
                raise CacheClosureError(
                    "sampled product fell outside the stored element set"
                ) from None

    if flags & 1:
        reps = []
        sizes = []
        for _ in range(nclasses):
            rep, size = struct.unpack_from("<QQ", body, offset)
            offset += 16
            reps.append(rep)
            sizes.append(size)
        class_id = np.frombuffer(
            body, dtype="<i4", count=order, offset=offset
        ).astype(np.int32)
        offset += 4 * order
        group.class_id = class_id
        group.classes = [
            _invariants(group, rep, size) for rep, size in zip(reps, sizes)
        ]
    return group
