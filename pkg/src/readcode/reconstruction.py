"""Recovering words from (possibly noisy) read vectors for delta = 1.

Reconstruction never clamps: a value outside {0, 1} is either raised as a
``ReconstructionError`` carrying its read index (full reconstruction) or
returned as data (sub-derivative reconstruction), since the decoder locates
errors from exactly those values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .channel import ReadVector, SubDerivative, Word
from .errors import ParameterError, ReconstructionError

LTR = "ltr"
RTL = "rtl"


def _unpack(r: ReadVector | Sequence[int], ell: int | None, n: int | None) -> tuple[tuple[int, ...], int, int]:
    if isinstance(r, ReadVector):
        if r.delta != 1:
            raise ParameterError("reconstruction is defined for delta = 1 only")
        return r.values, r.ell, r.n
    values = tuple(r)
    if ell is None:
        raise ParameterError("ell is required when reconstructing from a raw sequence")
    if n is None:
        n = len(values) - ell + 1
    if n < 1 or len(values) != n + ell - 1:
        raise ParameterError(f"expected {n + ell - 1} read values for n={n}, ell={ell}, got {len(values)}")
    return values, ell, n


def reconstruct(
    r: ReadVector | Sequence[int],
    ell: int | None = None,
    n: int | None = None,
    *,
    direction: str = LTR,
    mod2: bool = False,
) -> Word:
    """Return the unique word whose read vector (or its parity image) is ``r``.

    Every entry is used: bits are solved one window at a time and the windows
    hanging past the word must then explain a zero bit. The first read index
    at which that fails is reported through ``ReconstructionError.index``.
    """
    values, ell, n = _unpack(r, ell, n)
    total = n + ell - 1
    x = [0] * (n + 2 * ell)  # word positions 1..n live at offset ell

    def bit(p: int) -> int:
        return x[p + ell - 1] if 1 <= p <= n else 0

    def solve(q: int, p: int, others: int) -> None:
        val = values[q - 1] - others
        if mod2:
            val %= 2
        if 1 <= p <= n:
            if val not in (0, 1):
                raise ReconstructionError(f"non-binary value {val} at read index {q}", q)
            x[p + ell - 1] = val
        elif val != 0:
            raise ReconstructionError(f"read index {q} is inconsistent with zero padding", q)

    if direction == LTR:
        for q in range(1, total + 1):
            solve(q, q, sum(bit(t) for t in range(q - ell + 1, q)))
    elif direction == RTL:
        for q in range(total, 0, -1):
            p = q - ell + 1
            solve(q, p, sum(bit(t) for t in range(p + 1, q + 1)))
    else:
        raise ParameterError(f"direction must be {LTR!r} or {RTL!r}")
    return tuple(x[ell:ell + n])


def reconstruct_substring(context: Sequence[int], window: Sequence[int], side: str = "prefix") -> Word:
    """Solve a run of bits from ell-1 known neighbours and the reads covering it.

    ``prefix``: ``context`` holds the ell-1 bits before the run and ``window``
    the reads ending at each bit of the run. ``suffix``: ``context`` holds the
    ell-1 bits after the run and ``window`` the reads starting at each bit.
    Out-of-range neighbours are passed as 0.
    """
    ctx = list(context)
    ell = len(ctx) + 1
    out: list[int] = []
    if side == "prefix":
        known = ctx
        for t, w in enumerate(window, start=1):
            val = w - sum(known[len(known) - (ell - 1):])
            if val not in (0, 1):
                raise ReconstructionError(f"non-binary value {val} at window entry {t}", t)
            known.append(val)
            out.append(val)
        return tuple(out)
    if side == "suffix":
        known = ctx
        for t in range(len(window), 0, -1):
            val = window[t - 1] - sum(known[:ell - 1])
            if val not in (0, 1):
                raise ReconstructionError(f"non-binary value {val} at window entry {t}", t)
            known.insert(0, val)
            out.insert(0, val)
        return tuple(out)
    raise ParameterError("side must be 'prefix' or 'suffix'")


@dataclass(frozen=True)
class PartialReconstruction:
    """Candidate bits at word indices beta+1, beta+1+ell, ... from one sub-derivative."""

    beta: int
    indices: tuple[int, ...]
    values: tuple[int, ...]
    direction: str
    n: int

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "indices": list(self.indices),
            "values": list(self.values),
            "direction": self.direction,
        }


def subderiv_reconstruct(
    d: SubDerivative, n: int, ell: int, direction: str = LTR, *, truncate: bool = True
) -> PartialReconstruction:
    """Cumulative sums of a sub-derivative, from the left or anchored at the right.

    Left-to-right, block m holds ``d_0 + ... + d_m``; right-to-left it holds
    ``-(d_{m+1} + ... + d_K)``. On clean input both equal the bit at word
    index ``beta + m*ell + 1``. With ``truncate`` only blocks inside the word
    are returned; otherwise every block 0..K is, the ones past n standing for
    zero padding.
    """
    entries = d.entries
    blocks = len(entries)
    if truncate:
        blocks = min(blocks, max(0, (n - d.alpha - 1) // ell + 1))
    if direction == LTR:
        vals, acc = [], 0
        for m in range(blocks):
            acc += entries[m]
            vals.append(acc)
    elif direction == RTL:
        total = sum(entries)
        vals, acc = [], 0
        for m in range(blocks):
            acc += entries[m]
            vals.append(acc - total)
    else:
        raise ParameterError(f"direction must be {LTR!r} or {RTL!r}")
    idx = tuple(d.alpha + m * ell + 1 for m in range(blocks))
    return PartialReconstruction(d.alpha, idx, tuple(vals), direction, n)


@dataclass(frozen=True)
class HaltIndices:
    i: int
    j: int
    beta: int
    ell: int

    def blocks(self) -> range:
        return range(self.j + 1, self.i + 1)

    def read_indices(self, length: int) -> tuple[int, ...]:
        """Read indices ``beta + h*ell + 1`` for h in ``[j+1, i]`` that exist in a vector of ``length``."""
        return tuple(k for h in self.blocks() if 1 <= (k := self.beta + h * self.ell + 1) <= length)


def _in_word(p: PartialReconstruction) -> list[int]:
    return [v for v, idx in zip(p.values, p.indices) if idx <= p.n]


def halt_indices(hat: PartialReconstruction, tilde: PartialReconstruction, ell: int) -> HaltIndices:
    """First left-to-right and last right-to-left block leaving {0, 1}.

    Only blocks inside the word take part. Without a left halt ``i`` is the
    number of such blocks; without a right halt ``j`` is -1.
    """
    if hat.beta != tilde.beta:
        raise ParameterError("hat and tilde reconstructions must share beta")
    hv, tv = _in_word(hat), _in_word(tilde)
    i = next((m for m, v in enumerate(hv) if v not in (0, 1)), len(hv))
    j = next((m for m in range(len(tv) - 1, -1, -1) if tv[m] not in (0, 1)), -1)
    return HaltIndices(i, j, hat.beta, ell)
