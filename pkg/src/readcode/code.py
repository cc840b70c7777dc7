"""Single-substitution (ell, 1)-read code: membership, enumeration, decoding.

A word belongs to the code when

* the concatenated sub-derivative ``Delta(x) mod 2`` has no run of 0s longer
  than ``L``, and
* the interleaved read vector ``R~(x) mod 2`` has zero syndrome under a tiled
  Hamming parity-check matrix of order ``a``.

The run-length constraint bounds how far a magnitude-1 substitution can hide
inside one residue class of the read vector; the tiled Hamming code then
pins it down inside that window.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from ._workers import ordered_map
from .channel import (
    ReadVector,
    Word,
    as_word,
    int_to_word,
    interleave,
    read_matrix,
    read_vector,
    read_vector_mod2,
    sub_derivative,
    sub_derivative_concat,
)
from .errors import DecodingError, ParameterError, ReconstructionError, ScaleGuardError
from .reconstruction import (
    LTR,
    RTL,
    HaltIndices,
    PartialReconstruction,
    halt_indices,
    reconstruct,
    subderiv_reconstruct,
)

MAX_ENUM_N = 26


@dataclass(frozen=True)
class CodeParams:
    n: int
    ell: int
    L: int
    a: int
    W: int

    @property
    def length(self) -> int:
        """Read vector length n + ell - 1."""
        return self.n + self.ell - 1

    def to_dict(self) -> dict:
        return {"n": self.n, "ell": self.ell, "L": self.L, "a": self.a, "W": self.W}


def code_params(n: int, ell: int) -> CodeParams:
    """L = ceil(log2(2(n+ell))), W = 2L + 4, a = ceil(log2(W + 1))."""
    if ell < 3:
        raise ParameterError(f"the code needs ell >= 3, got {ell}")
    if n < ell:
        raise ParameterError(f"the code needs n >= ell, got n={n}, ell={ell}")
    L = (2 * (n + ell) - 1).bit_length()
    W = 2 * L + 4
    a = W.bit_length()
    return CodeParams(n, ell, L, a, W)


@dataclass(frozen=True)
class ParityCheckLayout:
    """Order-``a`` Hamming parity-check matrix repeated across ``length`` columns.

    Column i (1-based) is the binary expansion of ``((i-1) mod (2^a - 1)) + 1``;
    columns are handled as integers. The final repetition is truncated when
    ``2^a - 1`` does not divide ``length``.
    """

    a: int
    length: int

    @property
    def period(self) -> int:
        return (1 << self.a) - 1

    def column(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise ParameterError(f"column {i} outside [1, {self.length}]")
        return (i - 1) % self.period + 1

    def matrix(self) -> np.ndarray:
        """``length x a`` 0/1 matrix, most significant bit first."""
        cols = np.array([self.column(i) for i in range(1, self.length + 1)], dtype=np.int64)
        shifts = np.arange(self.a - 1, -1, -1)
        return ((cols[:, None] >> shifts) & 1).astype(np.int32)


def layout_for(params: CodeParams) -> ParityCheckLayout:
    return ParityCheckLayout(params.a, params.length)


def rll_check(bits: Iterable[int], L: int) -> bool:
    run = 0
    for b in bits:
        run = run + 1 if b == 0 else 0
        if run > L:
            return False
    return True


def syndrome(bits: Sequence[int], layout: ParityCheckLayout) -> int:
    if len(bits) != layout.length:
        raise ParameterError(f"expected {layout.length} bits, got {len(bits)}")
    s = 0
    for i, b in enumerate(bits, start=1):
        if b:
            s ^= layout.column(i)
    return s


def is_codeword(x: str | Iterable[int], params: CodeParams) -> bool:
    x = as_word(x)
    if len(x) != params.n:
        raise ParameterError(f"word length {len(x)} != n = {params.n}")
    r = read_vector(x, params.ell)
    if not rll_check((d % 2 for d in sub_derivative_concat(r)), params.L):
        return False
    return syndrome(read_vector_mod2(interleave(r).values), layout_for(params)) == 0


# -- enumeration -------------------------------------------------------------------

_CHUNK = 1 << 15


def _delta_index_pairs(n: int, ell: int) -> tuple[np.ndarray, np.ndarray]:
    """Columns (into a read vector padded with zeros at 0 and n+ell) forming Delta."""
    hi, lo = [], []
    for alpha in range(ell):
        k = (n + ell - (alpha + 1)) // ell
        for m in range(k + 1):
            hi.append(alpha + m * ell + 1)
            lo.append(alpha + m * ell)
    return np.array(hi), np.array(lo)


def _codeword_mask(start: int, stop: int, params: CodeParams) -> np.ndarray:
    n, ell = params.n, params.ell
    reads = read_matrix(n, ell, start, stop)
    rows = len(reads)

    # the syndrome test keeps about 2^-a of the words; run-lengths only for those
    order = np.array(interleave(list(range(params.length)), ell).values)
    syn = ((reads[:, order] & 1) @ layout_for(params).matrix().astype(np.int16)) & 1
    keep = np.flatnonzero(~syn.any(axis=1))

    padded = np.zeros((len(keep), params.length + 2), dtype=np.int16)
    padded[:, 1:-1] = reads[keep]
    hi, lo = _delta_index_pairs(n, ell)
    delta_par = (padded[:, hi] - padded[:, lo]) & 1
    good = np.ones(len(keep), dtype=bool)
    run = np.zeros(len(keep), dtype=np.int32)
    for c in range(delta_par.shape[1]):
        run = np.where(delta_par[:, c] == 0, run + 1, 0)
        good &= run <= params.L

    ok = np.zeros(rows, dtype=bool)
    ok[keep[good]] = True
    return ok


@lru_cache(maxsize=64)
def _codeword_ints(params: CodeParams) -> tuple[int, ...]:
    total = 1 << params.n
    starts = list(range(0, total, _CHUNK))

    def scan(start: int) -> list[int]:
        mask = _codeword_mask(start, min(start + _CHUNK, total), params)
        return (np.nonzero(mask)[0] + start).tolist()

    out: list[int] = []
    for part in ordered_map(scan, starts):
        out.extend(part)
    return tuple(out)


def enumerate_code(params: CodeParams, allow_large: bool = False) -> list[Word]:
    """All codewords, in lexicographic order of their bit-strings."""
    if params.n > MAX_ENUM_N and not allow_large:
        raise ScaleGuardError(f"exhaustive enumeration guarded to n <= {MAX_ENUM_N}, got n={params.n}")
    return [int_to_word(v, params.n) for v in _codeword_ints(params)]


def code_size(params: CodeParams, allow_large: bool = False) -> int:
    if params.n > MAX_ENUM_N and not allow_large:
        raise ScaleGuardError(f"exhaustive enumeration guarded to n <= {MAX_ENUM_N}, got n={params.n}")
    return len(_codeword_ints(params))


def measured_redundancy(params: CodeParams) -> float:
    size = code_size(params)
    return math.inf if size == 0 else params.n - math.log2(size)


def redundancy_upper_bound(n: int, ell: int) -> float:
    """``log log n + log(1 + (3 + log(1 + ell/n)) / log n) + 2``, all logs base 2."""
    ln = math.log2(n)
    return math.log2(ln) + math.log2(1 + (3 + math.log2(1 + ell / n)) / ln) + 2


def encode(message_index: int, params: CodeParams) -> Word:
    words = _codeword_ints(params)
    if not 0 <= message_index < len(words):
        raise ParameterError(f"message index {message_index} outside [0, {len(words)})")
    return int_to_word(words[message_index], params.n)


def decode_index(x: str | Iterable[int], params: CodeParams) -> int:
    x = as_word(x)
    words = _codeword_ints(params)
    v = int("".join(map(str, x)), 2)
    pos = bisect.bisect_left(words, v)
    if len(x) != params.n or pos == len(words) or words[pos] != v:
        raise ParameterError(f"{''.join(map(str, x))} is not a codeword")
    return pos


# -- decoding ----------------------------------------------------------------------


@dataclass(frozen=True)
class Localization:
    """Where a single substitution can sit, read off the sub-derivative weights.

    ``e`` is the substitution value (received minus clean). ``candidates`` are
    1-based read indices; for a clean vector ``e`` is 0 and there are none.
    """

    weights: tuple[int, ...]
    e: int = 0
    beta: int = -1
    alpha: int = -1
    halt: HaltIndices | None = None
    hat: PartialReconstruction | None = None
    tilde: PartialReconstruction | None = None
    candidates: tuple[int, ...] = ()

    @property
    def no_error(self) -> bool:
        return self.e == 0

    def to_dict(self) -> dict:
        if self.no_error:
            return {"no_error": True, "weights": list(self.weights)}
        return {
            "no_error": False,
            "weights": list(self.weights),
            "e": self.e,
            "beta": self.beta,
            "alpha": self.alpha,
            "i": self.halt.i,
            "j": self.halt.j,
            "hat": self.hat.to_dict(),
            "tilde": self.tilde.to_dict(),
            "candidates": list(self.candidates),
        }


def locate_error(r: ReadVector) -> Localization:
    """Error value, residue class, and candidate positions of one substitution.

    Raises ``DecodingError`` when the sub-derivative weights cannot come from a
    single substitution.
    """
    ell = r.ell
    if r.delta != 1 or ell < 3:
        raise ParameterError("error location needs delta = 1 and ell >= 3")
    weights = tuple(sub_derivative(r, g).weight for g in range(ell))
    nonzero = [g for g, w in enumerate(weights) if w]
    if not nonzero:
        return Localization(weights)
    if len(nonzero) != 2:
        raise DecodingError(f"{len(nonzero)} sub-derivatives have nonzero weight: {weights}")
    g1, g2 = nonzero
    if (g1 + 1) % ell == g2:
        beta = g1
    elif (g2 + 1) % ell == g1:
        beta = g2
    else:
        raise DecodingError(f"nonzero weights at non-adjacent residues {g1}, {g2}")
    alpha = (beta + 1) % ell
    if weights[beta] != -weights[alpha]:
        raise DecodingError(f"weights {weights[beta]} and {weights[alpha]} are not negatives")
    d = sub_derivative(r, beta)
    hat = subderiv_reconstruct(d, r.n, ell, LTR)
    tilde = subderiv_reconstruct(d, r.n, ell, RTL)
    halt = halt_indices(hat, tilde, ell)
    return Localization(
        weights=weights,
        e=weights[beta],
        beta=beta,
        alpha=alpha,
        halt=halt,
        hat=hat,
        tilde=tilde,
        candidates=halt.read_indices(len(r)),
    )


@dataclass(frozen=True)
class NoError:
    word: Word
    status = "no_error"

    def to_dict(self) -> dict:
        return {"status": self.status, "word": "".join(map(str, self.word))}


@dataclass(frozen=True)
class Corrected:
    word: Word
    k: int
    e: int
    status = "corrected"

    def to_dict(self) -> dict:
        return {"status": self.status, "word": "".join(map(str, self.word)), "k": self.k, "e": self.e}


@dataclass(frozen=True)
class Failure:
    """``kind`` is a stable tag for scripts; ``reason`` is for people."""

    reason: str
    kind: str = "invalid"
    status = "failure"

    def to_dict(self) -> dict:
        return {"status": self.status, "kind": self.kind, "reason": self.reason}


DecodeOutcome = Union[NoError, Corrected, Failure]


def _undo(r: ReadVector, k: int, e: int) -> ReadVector:
    values = list(r.values)
    values[k - 1] -= e
    return ReadVector(tuple(values), r.ell, r.delta, r.n)


def _finish(r: ReadVector, k: int, e: int, params: CodeParams) -> DecodeOutcome:
    try:
        word = reconstruct(_undo(r, k, e))
    except ParameterError:
        return Failure(f"correcting index {k} by {e} leaves the read alphabet", "not_read_vector")
    except ReconstructionError as err:
        return Failure(f"corrected vector is not a read vector ({err})", "not_read_vector")
    if not is_codeword(word, params):
        return Failure(f"corrected word {''.join(map(str, word))} is not a codeword", "not_codeword")
    return Corrected(word, k, e)


def decode(r: ReadVector, params: CodeParams) -> DecodeOutcome:
    """Recover the codeword behind a read vector hit by at most one substitution."""
    if (r.n, r.ell, r.delta) != (params.n, params.ell, 1):
        raise ParameterError("read vector parameters do not match the code")
    try:
        loc = locate_error(r)
    except DecodingError as err:
        return Failure(str(err), "weights")

    if loc.no_error:
        try:
            word = reconstruct(r)
        except ReconstructionError as err:
            return Failure(f"balanced sub-derivatives but not a read vector ({err})", "not_read_vector")
        if not is_codeword(word, params):
            return Failure(f"{''.join(map(str, word))} is not a codeword", "not_codeword")
        return NoError(word)

    e = loc.e
    if abs(e) >= 2:
        # the first index where left-to-right reconstruction breaks is the error
        try:
            reconstruct(r)
        except ReconstructionError as err:
            k = err.index
        else:
            return Failure("unbalanced sub-derivatives but reconstruction succeeded", "no_halt")
        if (k - 1) % r.ell != loc.beta:
            return Failure(f"halt index {k} is not in residue class {loc.beta}", "halt_residue")
        return _finish(r, k, e, params)

    cands = loc.candidates
    if not cands:
        return Failure("empty candidate window", "window")
    if len(cands) > params.W:
        return Failure(f"candidate window of {len(cands)} exceeds W = {params.W}", "window")
    inter = interleave(r)
    layout = layout_for(params)
    s = syndrome(read_vector_mod2(inter.values), layout)
    matches = [k for k in cands if layout.column(inter.forward[k]) == s]
    if len(matches) != 1:
        return Failure(f"{len(matches)} candidates match syndrome {s}", "syndrome")
    return _finish(r, matches[0], e, params)


def candidate_words(r: ReadVector, loc: Localization) -> dict[int, Word]:
    """Words obtained by undoing the substitution at each candidate that yields a read vector."""
    out = {}
    for k in loc.candidates:
        try:
            out[k] = reconstruct(_undo(r, k, loc.e))
        except (ParameterError, ReconstructionError):
            continue
    return out
