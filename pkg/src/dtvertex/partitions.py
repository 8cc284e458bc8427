"""Higher-dimensional partitions: representation, enumeration, symmetry.

An n-partition is a finitely supported array of positive integers
pi[i_1,...,i_n] (indices 1-based) that is non-increasing along every
axis.  1-partitions are ordinary partitions, 2-partitions plane
partitions, 3-partitions solid partitions.  An (d-1)-partition labels a
monomial ideal in d variables: the box stack of height pi[i] sitting
over the base cell i, stacked along the d-th coordinate axis.
"""

from __future__ import annotations

import json
from itertools import combinations, permutations

from .errors import ArityMismatch


class MultiPartition:
    """An n-partition stored as a sparse map from index tuples to heights."""

    __slots__ = ("arity", "heights", "_key")

    def __init__(self, arity, heights=None, validate=True):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        self.heights = {tuple(k): int(v) for k, v in (heights or {}).items() if v}
        self._key = tuple(sorted(idx + (h,) for idx, h in self.heights.items()))
        if validate:
            self._validate()

    @classmethod
    def from_entries(cls, arity, entries, validate=True):
        """Build from [i_1,...,i_n,height] rows."""
        return cls(arity, {tuple(row[:-1]): row[-1] for row in entries}, validate)

    def _validate(self):
        n = self.arity
        for idx, h in self.heights.items():
            if len(idx) != n:
                raise ValueError("index %r does not have arity %d" % (idx, n))
            if any(i < 1 for i in idx):
                raise ValueError("indices must be positive: %r" % (idx,))
            if h < 1:
                raise ValueError("stored heights must be positive: %r -> %d" % (idx, h))
            for j in range(n):
                succ = idx[:j] + (idx[j] + 1,) + idx[j + 1 :]
                if self.heights.get(succ, 0) > h:
                    raise ValueError("not monotone at %r along axis %d" % (idx, j + 1))
                if idx[j] > 1:
                    pred = idx[:j] + (idx[j] - 1,) + idx[j + 1 :]
                    if self.heights.get(pred, 0) < h:
                        raise ValueError("not monotone at %r along axis %d" % (idx, j + 1))

    # -- basic queries ----------------------------------------------------

    @property
    def size(self):
        return sum(self.heights.values())

    def is_empty(self):
        return not self.heights

    def height_at(self, idx):
        return self.heights.get(tuple(idx), 0)

    def corner_height(self):
        """Height over the base corner cell (0 for the empty partition)."""
        return self.heights.get((1,) * self.arity, 0)

    def entries(self):
        """Rows (i_1,...,i_n,height), sorted lexicographically."""
        return self._key

    def key(self):
        """Hashable canonical flattening; the deterministic total order."""
        return self._key

    def serialize(self):
        """Compact string form of entries(); used as cache and report key."""
        return json.dumps([list(e) for e in self._key], separators=(",", ":"))

    def to_json_obj(self):
        return {"arity": self.arity, "entries": [list(e) for e in self._key]}

    @classmethod
    def from_json_obj(cls, obj):
        return cls.from_entries(obj["arity"], obj["entries"])

    def cells(self):
        """0-based boxes (b_1,...,b_{n+1}) of the associated staircase."""
        for idx, h in sorted(self.heights.items()):
            base = tuple(i - 1 for i in idx)
            for m in range(h):
                yield base + (m,)

    def contains_cell(self, cell):
        """Whether the 0-based box lies in the staircase."""
        if len(cell) != self.arity + 1:
            raise ArityMismatch("cell %r does not match arity %d" % (cell, self.arity))
        return cell[-1] + 1 <= self.height_at(tuple(b + 1 for b in cell[:-1]))

    def __eq__(self, other):
        return (
            isinstance(other, MultiPartition)
            and self.arity == other.arity
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.arity, self._key))

    def __repr__(self):
        return "MultiPartition(%d, %s)" % (self.arity, self.serialize())


def binary_rep_contains(xi, cell):
    """0/1 entry of the binary array of xi at a 1-based (arity+1)-tuple.

    The binary array of an n-partition xi is the indicator of its
    staircase: 1 exactly when the last index does not exceed the height
    of xi over the first n indices.
    """
    cell = tuple(cell)
    if len(cell) != xi.arity + 1:
        raise ArityMismatch("cell %r does not match arity %d" % (cell, xi.arity))
    if any(i < 1 for i in cell):
        raise ValueError("binary representation uses 1-based indices: %r" % (cell,))
    return 1 if cell[-1] <= xi.height_at(cell[:-1]) else 0


# -- enumeration -----------------------------------------------------------


def _slice_bound(bound, first):
    if bound is None:
        return None
    return {idx[1:]: h for idx, h in bound.items() if idx[0] == first}


def _meet(a, b):
    if a is None:
        return b
    if b is None:
        return a
    out = {}
    for idx, h in a.items():
        m = min(h, b.get(idx, 0))
        if m:
            out[idx] = m
    return out


def _gen_linear(size, cap, bound, pos):
    if size == 0:
        yield {}
        return
    top = min(size, cap)
    if bound is not None:
        top = min(top, bound.get((pos,), 0))
    for v in range(top, 0, -1):
        for rest in _gen_linear(size - v, v, bound, pos + 1):
            out = {(pos,): v}
            out.update(rest)
            yield out


def _gen_slices(arity, size, bound, prev, pos):
    if size == 0:
        yield {}
        return
    eff = _meet(prev, _slice_bound(bound, pos))
    for s in range(size, 0, -1):
        for top in _gen_heights(arity - 1, s, eff):
            for rest in _gen_slices(arity, size - s, bound, top, pos + 1):
                out = {(pos,) + idx: h for idx, h in top.items()}
                out.update(rest)
                yield out


def _gen_heights(arity, size, bound=None):
    """All height maps of arity-partitions of the exact size, under bound.

    bound None means unbounded; otherwise the result is dominated
    entrywise by the bound map.  Slicing along the first axis reduces to
    chains of dominated (arity-1)-partitions.
    """
    if arity == 1:
        yield from _gen_linear(size, size, bound, 1)
    else:
        yield from _gen_slices(arity, size, bound, None, 1)


def enumerate_partitions(arity, size, bound=None):
    """All arity-partitions of the given size, sorted by key().

    The optional bound (a height map) restricts to partitions dominated
    by it entrywise.
    """
    if arity < 1:
        raise ValueError("arity must be >= 1")
    if size < 0:
        raise ValueError("size must be >= 0")
    found = [MultiPartition(arity, h) for h in _gen_heights(arity, size, bound)]
    found.sort(key=lambda p: p.key())
    return found


def count_partitions(arity, max_size):
    """Counts of arity-partitions of sizes 0..max_size."""
    return [len(enumerate_partitions(arity, s)) for s in range(max_size + 1)]


# Number of n-partitions of size s for s <= 6, as a closed binomial form.
_SMALL_COUNT_ROWS = {
    0: (1,),
    1: (1,),
    2: (1, 1),
    3: (1, 2, 1),
    4: (1, 4, 4, 1),
    5: (1, 6, 11, 7, 1),
    6: (1, 10, 27, 28, 11, 1),
}


def count_by_binomial_formula(n, size):
    """Closed-form count of n-partitions of a size up to 6."""
    if size not in _SMALL_COUNT_ROWS:
        raise ValueError("closed form only known here for sizes <= 6")
    total = 0
    for k, c in enumerate(_SMALL_COUNT_ROWS[size]):
        binom = 1
        for j in range(k):
            binom = binom * (n - j) // (j + 1)
        total += c * binom
    return total


# -- axis permutation symmetry ---------------------------------------------


def _active_axes(pi):
    n = pi.arity
    return [j for j in range(n) if any(idx[j] > 1 for idx in pi.heights)]


def _relabel_entries(pi, placement):
    """Entries after sending active axis a to position placement[a] (0-based).

    Inactive axes carry index 1 in every entry, so the result does not
    depend on where they land.
    """
    n = pi.arity
    rows = []
    for idx, h in pi.heights.items():
        t = [1] * n
        for a, p in placement.items():
            t[p] = idx[a]
        rows.append(tuple(t) + (h,))
    rows.sort()
    return tuple(rows)


def _all_placements(pi):
    active = _active_axes(pi)
    for targets in permutations(range(pi.arity), len(active)):
        yield dict(zip(active, targets))


def _prefix_placements(pi):
    """Placements of the active axes onto the first positions only.

    Moving an active axis earlier past an inactive one never decreases
    any entry row, so the canonical (greatest) relabeling is always
    attained with the active axes packed into a prefix; this cuts the
    search from n-permutations of k down to k!.
    """
    active = _active_axes(pi)
    for order in permutations(range(len(active))):
        yield dict(zip(active, order))


def canonicalize_axes(pi):
    """Canonical representative of the axis-permutation orbit.

    Only the first n coordinate axes are permuted; the stacking
    direction is fixed.  Canonical means the greatest entries()
    sequence, which concentrates boxes on the earliest axes (the orbit
    of a single off-axis box canonicalizes to the first axis).  Returns
    (canonical partition, permutation) with perm[j] = the position axis
    j of the input occupies in the output; idempotent, with the
    identity permutation on canonical input.
    """
    n = pi.arity
    best = None
    best_placements = []
    for placement in _prefix_placements(pi):
        rows = _relabel_entries(pi, placement)
        if best is None or rows > best:
            best = rows
            best_placements = [placement]
        elif rows == best:
            best_placements.append(placement)
    full_perms = []
    for placement in best_placements:
        used = set(placement.values())
        free = [p for p in range(n) if p not in used]
        perm = [None] * n
        for a, p in placement.items():
            perm[a] = p
        it = iter(free)
        for j in range(n):
            if perm[j] is None:
                perm[j] = next(it)
        full_perms.append(tuple(perm))
    perm = min(full_perms)
    canon = MultiPartition.from_entries(n, [list(r) for r in best], validate=False)
    return canon, perm


def orbit_size(pi):
    """Number of distinct partitions in the axis-permutation orbit.

    The relabeled entries depend only on where the k active axes go and
    in which order, and distinct position sets give distinct entries, so
    the orbit has size n!/(n-k)! divided by the number of prefix
    placements realizing the canonical form.
    """
    n = pi.arity
    active = _active_axes(pi)
    k = len(active)
    canon, _ = canonicalize_axes(pi)
    target = canon.key()
    stab = sum(1 for pl in _prefix_placements(pi) if _relabel_entries(pi, pl) == target)
    total = 1
    for j in range(k):
        total *= n - j
    return total // stab


def orbit(pi):
    """All partitions in the axis-permutation orbit, sorted."""
    keys = {_relabel_entries(pi, placement) for placement in _all_placements(pi)}
    members = [
        MultiPartition.from_entries(pi.arity, [list(r) for r in rows], validate=False)
        for rows in keys
    ]
    members.sort(key=lambda p: p.key())
    return members


_REPRESENTATIVE_MEMO = {}


def canonical_representatives(arity, size):
    """(representative, orbit size) pairs covering all partitions of the size.

    Grouping the full enumeration guarantees that orbit sizes add up to
    the total count.  Memoized; the result list must not be mutated.
    """
    memo_key = (arity, size)
    cached = _REPRESENTATIVE_MEMO.get(memo_key)
    if cached is not None:
        return cached
    groups = {}
    for pi in enumerate_partitions(arity, size):
        canon, _ = canonicalize_axes(pi)
        k = canon.key()
        if k in groups:
            groups[k][1] += 1
        else:
            groups[k] = [canon, 1]
    result = [(rep, cnt) for rep, cnt in (groups[k] for k in sorted(groups))]
    _REPRESENTATIVE_MEMO[memo_key] = result
    return result


def brute_force_downsets(arity, size):
    """Independent partition count: downward-closed box sets of the size.

    Enumerates subsets of the simplex of boxes with coordinate sum below
    the size and filters for closure under coordinate decrease.  Meant as
    a slow cross-check oracle for small inputs only.
    """
    dim = arity + 1
    if size == 0:
        return 1

    def boxes(prefix, remaining, axes):
        if axes == 0:
            yield prefix
            return
        for v in range(remaining + 1):
            yield from boxes(prefix + (v,), remaining - v, axes - 1)

    cells = list(boxes((), size - 1, dim))
    count = 0
    for subset in combinations(cells, size):
        chosen = set(subset)
        ok = True
        for c in subset:
            for j in range(dim):
                if c[j] and tuple(c[:j] + (c[j] - 1,) + c[j + 1 :]) not in chosen:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count
