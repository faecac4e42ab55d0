"""Congruence diagonalization of A(G) + xI driven entirely by the cotree.

Given the cotree of a cograph G on n vertices and a shift x, ``diagonalize``
produces a diagonal matrix congruent to A(G) + xI in O(n) time and space,
never materializing the matrix.  Every diagonal entry starts at x; while the
tree has at least two leaves, a maximum-depth sibling pair (v_k, v_l) with
parent w is eliminated by one of six update rules, with temporaries
``alpha = d_k`` and ``beta = d_l`` captured before any assignment:

    Join parent:
      1a  alpha + beta != 2:  d_k <- alpha+beta-2,  d_l <- (alpha*beta-1)/(alpha+beta-2)
      1b  beta == 1:          d_k <- 0,             d_l <- 1
      1c  otherwise:          d_k <- -(1-beta)**2,  d_l <- 1,  both leaves removed
    Union parent:
      2a  alpha + beta != 0:  d_k <- alpha+beta,    d_l <- alpha*beta/(alpha+beta)
      2b  beta == 0:          d_k <- 0,             d_l <- 0
      2c  otherwise:          d_k <- -beta,         d_l <- beta,  both leaves removed

v_k leaves the tree each iteration (v_l too in 1c/2c) and its entry is final
from then on.  By Sylvester's law of inertia the sign counts of the result
equal those of A + xI, which is what every consumer here relies on.

Scalar modes
------------
Exact-rational mode (``fractions.Fraction``) is the default: the branch
tests above are exact equality tests that floating point cannot decide
reliably.  Float mode (pass a ``float`` shift) exists for large-scale timing
runs and demos; its branch tests are exact comparisons on computed floats, a
documented hazard, and overflow to infinity or NaN raises
``NumericFailureError`` telling the caller to rerun in exact mode.

Tie-breaking among equally deep sibling pairs is deterministic: the interior
node earliest in pre-order wins and its two leftmost children form the pair
(k is the leftmost).  Sign counts do not depend on this choice; the value
multiset does not depend on which of the two chosen leaves plays k or l, nor
on the interleaving between different parents, so the reported multiset is
stable under any maximum-depth strategy that consumes children left to
right.  A seeded random strategy (``selection_rng``) exercises fully random
pair and role choices to let tests confirm the sign-count invariance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isfinite, isnan
from typing import Optional, Union

from .cotree import _FREE, JOIN, KIND_CHAR, Cotree, CotreeInvariantError

Scalar = Union[Fraction, int, float]


class NumericFailureError(ArithmeticError):
    """Float-mode arithmetic left the representable range (or hit NaN)."""


def parse_rational(text: str) -> Fraction:
    """Exact rational from 'p/q', integer, decimal or scientific notation.

    Decimal strings convert exactly by powers of ten; binary floats are
    never consulted.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_scalar(v: Scalar) -> str:
    """'p/q' with the denominator omitted when it is 1; floats as repr."""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    return str(v)


@dataclass(frozen=True, slots=True)
class IterationRecord:
    k: int
    l: int
    parent_kind: str  # "U" or "J"
    subcase: str      # one of 1a 1b 1c 2a 2b 2c
    alpha: Scalar
    beta: Scalar
    new_dk: Scalar
    new_dl: Scalar
    l_finalized: bool


@dataclass(frozen=True, slots=True)
class DiagonalReport:
    """Final diagonal (indexed by vertex id) plus its sign counts."""

    values: list
    positives: int
    zeros: int
    negatives: int
    shift: Scalar
    trace: Optional[list]
    iterations: int

    @property
    def n(self) -> int:
        return len(self.values)

    def counts(self) -> tuple[int, int, int]:
        return (self.positives, self.zeros, self.negatives)


def sign_counts(values, zero_tolerance: Scalar = 0) -> tuple[int, int, int]:
    """Classify values into (positive, zero, negative) counts.

    ``zero_tolerance`` widens the zero class to |v| <= tolerance, which only
    makes sense for float inputs; the default 0 is an exact test.  NaN
    raises NumericFailureError.
    """
    pos = zero = neg = 0
    tol = zero_tolerance
    for v in values:
        if isinstance(v, float) and isnan(v):
            raise NumericFailureError("NaN in diagonal values")
        if -tol <= v <= tol:
            zero += 1
        elif v > 0:
            pos += 1
        else:
            neg += 1
    return pos, zero, neg


def format_trace(records) -> str:
    """One tab-separated line per iteration:
    iter k l parent subcase alpha beta dk dl"""
    lines = []
    for i, r in enumerate(records, start=1):
        lines.append("\t".join((
            str(i), str(r.k), str(r.l), r.parent_kind, r.subcase,
            format_scalar(r.alpha), format_scalar(r.beta),
            format_scalar(r.new_dk), format_scalar(r.new_dl),
        )))
    return "\n".join(lines)


def _pair_update(join: bool, alpha, beta, zero, one):
    """Apply one elimination rule; returns (dk, dl, subcase, both_removed).

    ``zero`` and ``one`` are mode-typed constants so exact runs never leak
    machine floats and float runs never leak rationals.
    """
    s = alpha + beta
    if join:
        if s != 2:
            dk = s - 2
            return dk, (alpha * beta - 1) / dk, "1a", False
        if beta == 1:
            return zero, one, "1b", False
        t = 1 - beta
        return -(t * t), one, "1c", True
    if s != 0:
        return s, (alpha * beta) / s, "2a", False
    if beta == 0:
        return zero, zero, "2b", False
    return -beta, beta, "2c", True


def diagonalize(tree: Cotree, x: Scalar, *, trace: bool = False,
                debug: bool = False,
                selection_rng: Optional[random.Random] = None) -> DiagonalReport:
    """Diagonal of a matrix congruent to A(G) + xI, G realized by ``tree``.

    Pure in its inputs: works on an internal copy of the tree.  ``trace``
    records one IterationRecord per elimination.  ``debug`` revalidates the
    tree after every removal and, for an exact run at x = 0, asserts the
    invariant that every entry still on the tree lies in [0, 1).
    ``selection_rng`` switches to seeded random maximum-depth pair selection
    (test hook; sign counts must not change).
    """
    float_mode = isinstance(x, float)
    if float_mode:
        if not isfinite(x):
            raise ValueError("shift must be finite")
        zero, one = 0.0, 1.0
    else:
        x = Fraction(x)
        zero, one = Fraction(0), Fraction(1)

    n = tree.n_leaves
    work = tree.copy()
    d: list = [x] * n
    records: Optional[list] = [] if trace else None
    finalized = bytearray(n)
    iterations = 0

    kind_arr = work.kind
    depth_arr = work.depth
    rank_arr = work.rank
    first_child = work.first_child
    next_sib = work.next_sib
    n_children = work.n_children
    n_leaf_children = work.n_leaf_children
    join_tag = JOIN

    if selection_rng is None:
        # ready node = interior node whose children are all leaves; the
        # deepest ready nodes own all maximum-depth sibling pairs
        buckets: dict[int, list[tuple[int, int]]] = {}
        for i in range(len(kind_arr)):
            k = kind_arr[i]
            if k < 0 and k != _FREE and n_children[i] == n_leaf_children[i]:
                buckets.setdefault(depth_arr[i], []).append((rank_arr[i], i))
        phase: list[tuple[int, int]] = []
        phase_i = 0
        phase_depth = -1
        active = -1

    while work.n_leaves >= 2:
        if selection_rng is None:
            if active == -1:
                while True:
                    if phase_i < len(phase):
                        _, w = phase[phase_i]
                        phase_i += 1
                        # stale entries: freed by a splice, or re-rooted
                        if kind_arr[w] != _FREE and depth_arr[w] == phase_depth:
                            active = w
                            break
                        continue
                    if not buckets:
                        raise CotreeInvariantError(
                            "no sibling pair available on a tree with >= 2 leaves")
                    phase_depth = max(buckets)
                    phase = buckets.pop(phase_depth)
                    phase.sort()
                    phase_i = 0
            w = active
            c1 = first_child[w]
            c2 = next_sib[c1]
        else:
            w, c1, c2 = _random_max_depth_pair(work, selection_rng)

        vk = kind_arr[c1]
        vl = kind_arr[c2]
        alpha = d[vk]
        beta = d[vl]
        dk, dl, sub, double = _pair_update(
            kind_arr[w] == join_tag, alpha, beta, zero, one)
        if float_mode and not (isfinite(dk) and isfinite(dl)):
            raise NumericFailureError(
                f"float overflow at iteration {iterations + 1}; "
                "rerun in exact mode")
        d[vk] = dk
        d[vl] = dl
        iterations += 1
        finalized[vk] = 1
        if double:
            finalized[vl] = 1
        if records is not None:
            records.append(IterationRecord(
                vk, vl, KIND_CHAR[kind_arr[w]], sub, alpha, beta, dk, dl,
                double))

        gained, new_root = work._remove_leaf_ev(c1)
        if selection_rng is None:
            if gained != -1 and n_children[gained] == n_leaf_children[gained]:
                buckets.setdefault(depth_arr[gained], []).append(
                    (rank_arr[gained], gained))
            if new_root != -1 and n_children[new_root] == n_leaf_children[new_root]:
                buckets.setdefault(0, []).append((rank_arr[new_root], new_root))
        if double:
            gained, new_root = work._remove_leaf_ev(c2)
            if selection_rng is None:
                if gained != -1 and n_children[gained] == n_leaf_children[gained]:
                    buckets.setdefault(depth_arr[gained], []).append(
                        (rank_arr[gained], gained))
                if new_root != -1 and n_children[new_root] == n_leaf_children[new_root]:
                    buckets.setdefault(0, []).append(
                        (rank_arr[new_root], new_root))
        if selection_rng is None and kind_arr[w] == _FREE:
            active = -1

        if debug:
            _debug_checks(work, d, finalized, x, float_mode)

    pos, zer, neg = sign_counts(d)
    return DiagonalReport(values=d, positives=pos, zeros=zer, negatives=neg,
                          shift=x, trace=records, iterations=iterations)


def _random_max_depth_pair(work: Cotree, rng: random.Random):
    """A uniformly random maximum-depth sibling pair with random k/l roles.

    O(n) rescans per depth phase; meant for property tests at small n.
    """
    kind_arr = work.kind
    best_depth = -1
    cand: list[int] = []
    for i in range(len(kind_arr)):
        k = kind_arr[i]
        if k < 0 and k != _FREE and work.n_children[i] == work.n_leaf_children[i]:
            dep = work.depth[i]
            if dep > best_depth:
                best_depth = dep
                cand = [i]
            elif dep == best_depth:
                cand.append(i)
    if not cand:
        raise CotreeInvariantError("no sibling pair available")
    w = rng.choice(cand)
    kids = work.children(w)
    i1, i2 = rng.sample(range(len(kids)), 2)
    return w, kids[i1], kids[i2]


def _debug_checks(work: Cotree, d, finalized, x, float_mode) -> None:
    if work.n_leaves:
        work.validate(full=False)
    on_tree = set()
    for i in work.preorder():
        v = work.kind[i]
        if v >= 0:
            on_tree.add(v)
    open_entries = {i for i in range(len(d)) if not finalized[i]}
    if on_tree != open_entries:
        raise AssertionError("non-finalized entries do not match tree leaves")
    if not float_mode and x == 0:
        for v in on_tree:
            if not (0 <= d[v] < 1):
                raise AssertionError(
                    f"entry d[{v}]={d[v]} outside [0,1) during a zero-shift run")
