"""Combinatorial partition weights via multiset decompositions.

An (n+1)-partition's height array can be written as a non-negative
integer combination of binary arrays of n-partitions.  The weight
omega_c sums 1/prod(multiplicities!) over all such decompositions; it
satisfies an exponential generating identity and conjecturally matches
the geometric weight extracted by the Euler-class pipeline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial

from .forms import compute_weight
from .partitions import MultiPartition, enumerate_partitions
from .ratpoly import QPoly
from .series import TruncatedSeries, m_series


class OmegaDecomposition:
    """Multiset of component partitions: serialized key -> multiplicity."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = dict(parts)

    def weight_term(self):
        term = Fraction(1)
        for m in self.parts.values():
            term /= factorial(m)
        return term

    def verify(self, pi):
        """Re-check the cell-sum equation against the decomposed partition."""
        total = {}
        for key, m in self.parts.items():
            xi = MultiPartition.from_json_obj(
                {"arity": pi.arity - 1, "entries": _entries_from_key(key)}
            )
            for base, h in xi.heights.items():
                for level in range(1, h + 1):
                    idx = base + (level,)
                    total[idx] = total.get(idx, 0) + m
        return total == pi.heights

    def __eq__(self, other):
        return isinstance(other, OmegaDecomposition) and self.parts == other.parts

    def __repr__(self):
        return "OmegaDecomposition(%r)" % (self.parts,)


def _entries_from_key(key):
    return json.loads(key)


def _column_runs(heights):
    """Top occupied level per column base; columns are contiguous prefixes."""
    runs = {}
    for idx in heights:
        base, level = idx[:-1], idx[-1]
        if level > runs.get(base, 0):
            runs[base] = level
    return runs


def _candidate_parts(pi):
    """All component partitions that could enter some decomposition.

    A candidate's staircase must fit under the column profile of the
    height array; monotonicity of candidates is enforced by the bounded
    enumeration.  Ordered descending by (size, key): largest first so
    dead branches die early, and the fixed order makes the multiset
    search duplicate-free.
    """
    bound = _column_runs(pi.heights)
    cap = sum(bound.values())
    out = []
    for s in range(1, cap + 1):
        out.extend(enumerate_partitions(pi.arity - 1, s, bound=bound))
    out.sort(key=lambda xi: (xi.size, xi.key()), reverse=True)
    return out


def _fits(xi, remainder):
    """Whether subtracting the binary array keeps the remainder admissible.

    Needs every column of the candidate to stay within the remainder's
    run and to end at a strict descent, so that columns remain
    non-negative and non-increasing.
    """
    for base, h in xi.heights.items():
        if remainder.get(base + (h,), 0) < 1:
            return False
        if remainder.get(base + (h,), 0) <= remainder.get(base + (h + 1,), 0):
            return False
    return True


def _subtract(xi, remainder):
    out = dict(remainder)
    for base, h in xi.heights.items():
        for level in range(1, h + 1):
            idx = base + (level,)
            v = out[idx] - 1
            if v:
                out[idx] = v
            else:
                del out[idx]
    return out


def decompositions(pi):
    """All decompositions of the height array into binary arrays.

    Backtracking over candidates in a fixed descending order; each
    result is re-verified against the cell-sum equation before being
    returned.
    """
    if pi.arity < 2:
        raise ValueError("decompositions need arity >= 2")
    if pi.is_empty():
        return [OmegaDecomposition({})]
    cands = _candidate_parts(pi)
    results = []

    def search(remainder, start, stack):
        if not remainder:
            parts = {}
            for i in stack:
                key = cands[i].serialize()
                parts[key] = parts.get(key, 0) + 1
            results.append(OmegaDecomposition(parts))
            return
        left = sum(remainder.values())
        for i in range(start, len(cands)):
            xi = cands[i]
            if xi.size > left:
                continue
            if _fits(xi, remainder):
                stack.append(i)
                search(_subtract(xi, remainder), i, stack)
                stack.pop()

    search(dict(pi.heights), 0, [])
    for dec in results:
        if not dec.verify(pi):
            raise AssertionError("decomposition failed re-verification: %r" % (dec,))
    return results


def omega_c(pi):
    """Combinatorial weight: sum of 1/prod(m!) over decompositions.

    For arity 1 the decomposition into height prefixes is unique and
    forced by the successive differences, so the weight is the product
    of their inverse factorials.
    """
    if pi.is_empty():
        return Fraction(1)
    if pi.arity == 1:
        total = Fraction(1)
        for (i,), h in pi.heights.items():
            diff = h - pi.height_at((i + 1,))
            total /= factorial(diff)
        return total
    return sum((dec.weight_term() for dec in decompositions(pi)), Fraction(0))


def check_exp_identity(n, order, t_order=None):
    """Compare the weighted enumeration against exp(t (M_{n-1} - 1)).

    Left side: sum over n-partitions of omega_c * t^corner * q^size.
    Returns (equal, lhs, rhs) with both series truncated to the t-order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if t_order is None:
        t_order = order
    lhs_coeffs = [QPoly.one()]
    for s in range(1, order + 1):
        c = QPoly.zero()
        for pi in enumerate_partitions(n, s):
            c = c + QPoly.const(omega_c(pi)).shift(pi.corner_height())
        lhs_coeffs.append(c)
    lhs = TruncatedSeries(order, lhs_coeffs).truncate_ell(t_order)
    m = m_series(n - 1, order)
    rhs = (m - TruncatedSeries.one(order)).scale_by_ell().exp().truncate_ell(t_order)
    return lhs == rhs, lhs, rhs


def compare_omegas(pi, d):
    """Compare the geometric and combinatorial weights of one partition.

    Returns (verdict, |omega|, omega_c) with verdict "match" when the
    absolute geometric weight equals the combinatorial one; pipeline
    errors propagate.
    """
    if d % 4 or pi.arity != d - 1:
        raise ValueError("dimension 0 mod 4 with matching arity required")
    w = compute_weight(pi, d)
    wc = omega_c(pi)
    verdict = "match" if w.omega == wc else "mismatch"
    return verdict, w.omega, wc
