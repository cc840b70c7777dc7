"""Confusable pairs, clique covers of the confusability graph, and redundancy bounds.

Two words are confusable when their (ell, 1)-read vectors sit at Hamming
distance 2, i.e. one substitution in each read vector makes them collide.
For ell >= 3 that happens exactly when the words differ by p swapped pairs
``10 <-> 01`` starting at positions i, i+ell, ..., i+(p-1)ell, all swapped in
the same direction; the read vectors then differ at i and i + p*ell.

A clique cover of the graph joining confusable words upper-bounds every
single-substitution read code. The cover used here is the alternating-block
cover of strings of length 2pm, pulled back to length-n words through the
coordinate permutation ``pi_p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .channel import Word, as_word, format_word, int_to_word, read_matrix, read_vector, word_to_int
from .errors import ParameterError, ScaleGuardError
from .independent import (
    adjacency_masks,
    greedy_independent_set,
    is_independent,
    mask_to_list,
    maximum_independent_set,
    maximum_independent_set_milp,
)

MAX_PAIR_SCAN_N = 12
MAX_COVER_BITS = 24
MAX_PULLBACK_N = 20
MAX_EXACT_MIS_VERTICES = 1024


# -- confusability -----------------------------------------------------------------


@dataclass(frozen=True)
class Confusability:
    """Read distance of a word pair, and the swap pattern behind it when it is 2.

    ``i < j`` are the 1-based read indices where the read vectors differ,
    ``x_high`` tells whether x is the word with the larger reading at i, and
    ``p`` counts the swapped pairs found in the words (0 when the words do
    not differ by a uniform swap pattern starting at i).
    """

    distance: int
    i: int = 0
    j: int = 0
    p: int = 0
    x_high: bool = False
    read_condition: bool = False
    pattern_condition: bool = False

    def __bool__(self) -> bool:
        return self.distance == 2

    def to_dict(self) -> dict:
        return {
            "confusable": bool(self),
            "distance": self.distance,
            "i": self.i,
            "j": self.j,
            "p": self.p,
            "x_high": self.x_high,
            "read_condition": self.read_condition,
            "pattern_condition": self.pattern_condition,
        }


def swap_pattern(x: Sequence[int], y: Sequence[int], ell: int) -> tuple[int, int, bool] | None:
    """Match ``x``/``y`` against p uniform ``10``/``01`` swaps spaced by ell.

    Returns ``(i, p, x_has_10)`` with 1-based start i, or None.
    """
    diff = [t for t in range(len(x)) if x[t] != y[t]]
    if not diff or len(diff) % 2:
        return None
    i0 = diff[0]
    p = len(diff) // 2
    expected = []
    for m in range(p):
        expected += [i0 + m * ell, i0 + m * ell + 1]
    if diff != expected:
        return None
    x_has_10 = (x[i0], x[i0 + 1]) == (1, 0)
    want = (1, 0) if x_has_10 else (0, 1)
    for m in range(p):
        t = i0 + m * ell
        if (x[t], x[t + 1]) != want or (y[t], y[t + 1]) != want[::-1]:
            return None
    return i0 + 1, p, x_has_10


def confusable(x: str | Sequence[int], y: str | Sequence[int], ell: int) -> Confusability:
    x, y = as_word(x), as_word(y)
    if len(x) != len(y):
        raise ParameterError("words must have equal length")
    if ell < 3:
        raise ParameterError("the confusability characterization needs ell >= 3")
    rx, ry = read_vector(x, ell).values, read_vector(y, ell).values
    idx = [q + 1 for q in range(len(rx)) if rx[q] != ry[q]]
    if len(idx) != 2:
        return Confusability(len(idx))
    i, j = idx
    x_high = rx[i - 1] > ry[i - 1]
    hi, lo = (rx, ry) if x_high else (ry, rx)
    read_condition = (j - i) % ell == 0 and hi[i - 1] - lo[i - 1] == 1 and lo[j - 1] - hi[j - 1] == 1
    pat = swap_pattern(x, y, ell)
    p = 0
    pattern_condition = False
    if pat is not None:
        start, p, x_has_10 = pat
        pattern_condition = start == i and x_has_10 == x_high and j == i + p * ell
    return Confusability(2, i, j, p, x_high, read_condition, pattern_condition)


def pattern_pairs(n: int, ell: int) -> Iterator[tuple[int, int]]:
    """Every unordered pair (as word integers, smaller first) built from p uniform swaps.

    Blocks sit at 1-based positions i + m*ell, m < p, with the last block
    inside the word: ``1 <= i <= n - (p-1)*ell - 1``.
    """
    p = 1
    while n - (p - 1) * ell - 1 >= 1:
        for i in range(1, n - (p - 1) * ell):
            fixed = set()
            for m in range(p):
                fixed |= {i - 1 + m * ell, i + m * ell}
            free = [t for t in range(n) if t not in fixed]
            hi_bits = sum(1 << (n - 1 - (i - 1 + m * ell)) for m in range(p))
            lo_bits = sum(1 << (n - 1 - (i + m * ell)) for m in range(p))
            for z in range(1 << len(free)):
                base = 0
                for b, t in enumerate(free):
                    if (z >> b) & 1:
                        base |= 1 << (n - 1 - t)
                u, v = base | hi_bits, base | lo_bits
                yield (u, v) if u < v else (v, u)
        p += 1


def read_distance_pairs(n: int, ell: int, distance: int = 2, chunk: int = 256) -> list[tuple[int, int]]:
    """All word pairs (u < v) whose read vectors are exactly ``distance`` apart, by exhaustive scan."""
    reads = read_matrix(n, ell)
    total = len(reads)
    out = []
    for start in range(0, total, chunk):
        block = reads[start:start + chunk]
        d = (block[:, None, :] != reads[None, :, :]).sum(axis=2)
        rows, cols = np.nonzero(d == distance)
        for r_, c in zip(rows.tolist(), cols.tolist()):
            u = start + r_
            if u < c:
                out.append((u, c))
    return out


@dataclass
class CharacterizationReport:
    n: int
    ell: int
    brute_pairs: int
    pattern_pairs: int
    only_brute: list[tuple[str, str]]
    only_pattern: list[tuple[str, str]]
    bad_witnesses: list[tuple[str, str]]
    distance_one_pairs: int

    @property
    def passed(self) -> bool:
        return not (self.only_brute or self.only_pattern or self.bad_witnesses or self.distance_one_pairs)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "passed": self.passed,
            "brute_pairs": self.brute_pairs,
            "pattern_pairs": self.pattern_pairs,
            "only_brute": self.only_brute[:5],
            "only_pattern": self.only_pattern[:5],
            "bad_witnesses": self.bad_witnesses[:5],
            "distance_one_pairs": self.distance_one_pairs,
        }


def verify_characterization(n: int, ell: int, allow_large: bool = False) -> CharacterizationReport:
    """Compare read-distance-2 pairs found by brute force with the swap-pattern generator.

    Every brute-force pair must also carry a witness whose read indices differ
    by exactly ``p * ell``, p being the number of swapped pairs.
    """
    if ell < 3:
        raise ParameterError("the characterization needs ell >= 3")
    if n > MAX_PAIR_SCAN_N and not allow_large:
        raise ScaleGuardError(f"pair scan guarded to n <= {MAX_PAIR_SCAN_N}, got n={n}")
    brute = set(read_distance_pairs(n, ell, 2))
    ones = len(read_distance_pairs(n, ell, 1))
    generated = set(pattern_pairs(n, ell))
    fmt = lambda pr: (format_word(int_to_word(pr[0], n)), format_word(int_to_word(pr[1], n)))  # noqa: E731
    bad = []
    for u, v in sorted(brute):
        w = confusable(int_to_word(u, n), int_to_word(v, n), ell)
        if not (w.read_condition and w.pattern_condition):
            bad.append(fmt((u, v)))
    return CharacterizationReport(
        n=n,
        ell=ell,
        brute_pairs=len(brute),
        pattern_pairs=len(generated),
        only_brute=[fmt(pr) for pr in sorted(brute - generated)],
        only_pattern=[fmt(pr) for pr in sorted(generated - brute)],
        bad_witnesses=bad,
        distance_one_pairs=ones,
    )


# -- the coordinate permutation pi_p --------------------------------------------------


def pi_p_permutation(n: int, p: int, ell: int) -> tuple[int, ...]:
    """0-based source coordinates: ``pi_p(x)[t] == x[perm[t]]``.

    The first ``p*ell*floor(n/(p*ell))`` coordinates form a row-major matrix
    with ell columns; the last column is dropped for odd ell, and the p x 2
    sub-matrices are read left to right, top to bottom, each row by row.
    Leftover coordinates follow in increasing order.
    """
    if p < 1 or ell < 2:
        raise ParameterError(f"pi_p needs p >= 1 and ell >= 2, got p={p}, ell={ell}")
    if n < 1:
        raise ParameterError("n must be >= 1")
    perm = []
    for i in range(n // (p * ell)):
        for j in range(ell // 2):
            for k in range(p):
                base = (i * p + k) * ell + 2 * j
                perm += [base, base + 1]
    used = set(perm)
    perm += [t for t in range(n) if t not in used]
    return tuple(perm)


def pi_p(x: str | Sequence[int], p: int, ell: int) -> Word:
    x = as_word(x)
    return tuple(x[t] for t in pi_p_permutation(len(x), p, ell))


def pi_p_inverse(y: str | Sequence[int], p: int, ell: int) -> Word:
    y = as_word(y)
    out = [0] * len(y)
    for t, src in enumerate(pi_p_permutation(len(y), p, ell)):
        out[src] = y[t]
    return tuple(out)


# -- alternating-block clique cover -----------------------------------------------------


def lambda_p(p: int) -> set[Word]:
    """Blocks ``a^j b^(p-j)``, 1 <= j <= p, with {a, b} = {01, 10}."""
    if p < 1:
        raise ParameterError("p must be >= 1")
    out = set()
    for a, b in (((0, 1), (1, 0)), ((1, 0), (0, 1))):
        for j in range(1, p + 1):
            out.add(a * j + b * (p - j))
    return out


def lambda_p_membership(block: str | Sequence[int], p: int) -> bool:
    block = as_word(block)
    if len(block) != 2 * p:
        raise ParameterError(f"block length {len(block)} != 2p = {2 * p}")
    return block in lambda_p(p)


def _complement_lambda(p: int) -> list[Word]:
    lam = lambda_p(p)
    return [w for w in product((0, 1), repeat=2 * p) if w not in lam]


@dataclass(frozen=True)
class CliqueCoverSpec:
    """Cliques (tuples of words) covering all words of length ``n``."""

    m: int
    p: int
    n: int
    cliques: tuple[tuple[Word, ...], ...]
    ell: int | None = None

    def __len__(self) -> int:
        return len(self.cliques)

    def to_json(self) -> list[list[str]]:
        return [[format_word(w) for w in c] for c in self.cliques]


def iter_clique_cover(m: int, p: int) -> Iterator[tuple[Word, ...]]:
    """Singletons over non-alternating blocks, then the two alternating families per prefix."""
    if m < 0 or p < 1:
        raise ParameterError(f"need m >= 0 and p >= 1, got m={m}, p={p}")
    comp = _complement_lambda(p)
    for blocks in product(comp, repeat=m):
        yield (sum(blocks, ()),)
    for i in range(1, m + 1):
        for u_blocks in product(comp, repeat=i - 1):
            u = sum(u_blocks, ())
            for w in product((0, 1), repeat=2 * p * (m - i)):
                for first, second in (((0, 1), (1, 0)), ((1, 0), (0, 1))):
                    yield tuple(u + first * h + second * (p - h) + w for h in range(1, p + 1))


def build_clique_cover(m: int, p: int) -> CliqueCoverSpec:
    if 2 * p * m > MAX_COVER_BITS:
        raise ScaleGuardError(f"cover construction guarded to 2pm <= {MAX_COVER_BITS}, got {2 * p * m}")
    return CliqueCoverSpec(m, p, 2 * p * m, tuple(iter_clique_cover(m, p)))


def cover_block_count(n: int, ell: int, p: int) -> int:
    """m = floor(ell/2) * floor(n/(p*ell))."""
    return (ell // 2) * (n // (p * ell))


def pullback_cover(n: int, ell: int, p: int) -> CliqueCoverSpec:
    """Pull the length-2pm cover back to length-n words through pi_p, padding with every suffix."""
    if n > MAX_PULLBACK_N:
        raise ScaleGuardError(f"pullback guarded to n <= {MAX_PULLBACK_N}, got n={n}")
    m = cover_block_count(n, ell, p)
    rest = n - 2 * p * m
    cliques = []
    for q in iter_clique_cover(m, p):
        for z in product((0, 1), repeat=rest):
            cliques.append(tuple(pi_p_inverse(w + z, p, ell) for w in q))
    return CliqueCoverSpec(m, p, n, tuple(cliques), ell)


def clique_cover_size(m: int, p: int) -> int:
    """``2^(2pm) [c^m + (1 - c^m)/p]`` with ``c = 1 - 2p / 2^(2p)``, in exact arithmetic."""
    if m < 0 or p < 1:
        raise ParameterError(f"need m >= 0 and p >= 1, got m={m}, p={p}")
    c = 1 - Fraction(2 * p, 4 ** p)
    size = 4 ** (p * m) * (c ** m + (1 - c ** m) / p)
    if size.denominator != 1:
        raise ArithmeticError(f"cover size {size} is not an integer")
    return int(size)


def pullback_cover_size(n: int, ell: int, p: int) -> int:
    m = cover_block_count(n, ell, p)
    return clique_cover_size(m, p) * 2 ** (n - 2 * p * m)


def log2_pullback_size(n: int, ell: int, p: int) -> float:
    """Closed form ``n - log2 p + log2(1 + (p-1)(1 - 2p/2^(2p))^m)``."""
    m = cover_block_count(n, ell, p)
    c = 1 - 2 * p / 4 ** p
    return n - math.log2(p) + math.log2(1 + (p - 1) * c ** m)


def best_pullback(n: int, ell: int) -> tuple[int, int]:
    """(p, |Q_p|) minimizing the pulled-back cover size over all p that give m >= 1."""
    best = (1, pullback_cover_size(n, ell, 1))
    p = 2
    while cover_block_count(n, ell, p) >= 1:
        size = pullback_cover_size(n, ell, p)
        if size < best[1]:
            best = (p, size)
        p += 1
    return best


# -- redundancy lower bound ---------------------------------------------------------


def redundancy_lower_bound(n: int, eps: float) -> float:
    """``log2 log2 n - log2(2 / (1 - eps))``, the leading terms of the bound."""
    if not 0 < eps < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")
    if n < 2:
        raise ParameterError("n must be >= 2")
    return math.log2(math.log2(n)) - math.log2(2 / (1 - eps))


def bound_p(n: int, eps: float) -> int:
    if not 0 < eps < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")
    return max(1, math.ceil((1 - eps) / 2 * math.log2(n)))


@dataclass(frozen=True)
class LowerBoundDetails:
    n: int
    ell: int
    eps: float
    p: int
    m: int
    log2_cover: float
    cover_redundancy: float
    asymptotic: float


def lower_bound_details(n: int, ell: int, eps: float) -> LowerBoundDetails:
    """Exact cover size at ``p = ceil((1-eps)/2 log2 n)`` next to the asymptotic bound."""
    p = bound_p(n, eps)
    log2_q = log2_pullback_size(n, ell, p)
    return LowerBoundDetails(
        n=n,
        ell=ell,
        eps=eps,
        p=p,
        m=cover_block_count(n, ell, p),
        log2_cover=log2_q,
        cover_redundancy=n - log2_q,
        asymptotic=redundancy_lower_bound(n, eps),
    )


# -- confusability graph and independent sets ---------------------------------------------


@dataclass
class ConfusabilityGraph:
    n: int
    ell: int
    edges: list[tuple[int, int]]

    @property
    def num_vertices(self) -> int:
        return 1 << self.n

    def adjacency(self) -> list[int]:
        return adjacency_masks(self.num_vertices, self.edges)

    def edge_list(self) -> list[tuple[str, str]]:
        return [(format_word(int_to_word(u, self.n)), format_word(int_to_word(v, self.n))) for u, v in self.edges]


def confusability_graph(n: int, ell: int, allow_large: bool = False) -> ConfusabilityGraph:
    """Words joined when their read vectors are within Hamming distance 2."""
    if n > MAX_PAIR_SCAN_N and not allow_large:
        raise ScaleGuardError(f"pair scan guarded to n <= {MAX_PAIR_SCAN_N}, got n={n}")
    edges = sorted(read_distance_pairs(n, ell, 1) + read_distance_pairs(n, ell, 2))
    return ConfusabilityGraph(n, ell, edges)


@dataclass(frozen=True)
class MISResult:
    size: int
    witness: tuple[int, ...]
    exact: bool


MIS_METHODS = ("milp", "bnb")


def max_independent_set(g: ConfusabilityGraph, exact: bool | None = None, method: str = "milp") -> MISResult:
    """Largest set of pairwise non-confusable words (an optimal read code).

    Exact search runs up to ``MAX_EXACT_MIS_VERTICES`` vertices; beyond that,
    or with ``exact=False``, a greedy witness is returned flagged inexact.
    ``method`` picks the exact solver: "milp" (integer program, tightened with
    the best pulled-back clique cover when ell >= 3) or "bnb" (pure-Python
    branch and bound, practical up to about 2^9 vertices).
    """
    if method not in MIS_METHODS:
        raise ParameterError(f"unknown MIS method {method!r}; choose from {MIS_METHODS}")
    feasible = g.num_vertices <= MAX_EXACT_MIS_VERTICES
    if exact and not feasible:
        raise ScaleGuardError(f"exact MIS guarded to {MAX_EXACT_MIS_VERTICES} vertices, got {g.num_vertices}")
    if exact is None:
        exact = feasible
    adj = g.adjacency()
    if not exact:
        mask = greedy_independent_set(adj)
    elif method == "bnb":
        mask = maximum_independent_set(adj)
    else:
        cliques = []
        if g.ell >= 3 and g.n <= MAX_PULLBACK_N:
            cover = pullback_cover(g.n, g.ell, best_pullback(g.n, g.ell)[0])
            cliques = [[word_to_int(w) for w in q] for q in cover.cliques]
        mask = maximum_independent_set_milp(adj, cliques)
    assert is_independent(adj, mask)
    members = tuple(mask_to_list(mask))
    return MISResult(len(members), members, exact)
