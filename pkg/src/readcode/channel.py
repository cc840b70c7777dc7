"""Read vectors of binary words under the (ell, delta) sliding-window channel.

A window of length ``ell`` slides over the word in steps of ``delta`` and each
step reports the number of 1s inside the window. Positions outside the word
read as 0, so the first and last readings see the word only partially.

Read indices in this module are 1-based wherever they appear in a public
signature (``corrupt``, ``ReadVector.at``, interleaving maps); the stored
``values`` tuples are ordinary 0-based Python sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError

Word = tuple[int, ...]


def as_word(x: str | Iterable[int]) -> Word:
    """Coerce a bit-string or an iterable of 0/1 into a word tuple."""
    if isinstance(x, str):
        if not x or any(c not in "01" for c in x):
            raise ParameterError(f"not a bit-string: {x!r}")
        return tuple(int(c) for c in x)
    bits = tuple(int(b) for b in x)
    if not bits:
        raise ParameterError("word must have length >= 1")
    if any(b not in (0, 1) for b in bits):
        raise ParameterError(f"word symbols must be 0 or 1: {bits}")
    return bits


def format_word(x: Sequence[int]) -> str:
    return "".join(str(b) for b in x)


def int_to_word(value: int, n: int) -> Word:
    """Word whose leftmost bit is the most significant bit of ``value``."""
    return tuple((value >> (n - 1 - i)) & 1 for i in range(n))


def word_to_int(x: Sequence[int]) -> int:
    v = 0
    for b in x:
        v = (v << 1) | b
    return v


def check_params(n: int, ell: int, delta: int = 1) -> None:
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if ell < 1:
        raise ParameterError(f"ell must be >= 1, got {ell}")
    if not 1 <= delta <= ell:
        raise ParameterError(f"need 1 <= delta <= ell, got delta={delta}, ell={ell}")
    if (n + ell) % delta:
        raise ParameterError(f"(n + ell) mod delta must be 0, got n={n}, ell={ell}, delta={delta}")


def read_length(n: int, ell: int, delta: int = 1) -> int:
    return (n + ell) // delta - 1


@dataclass(frozen=True)
class ReadVector:
    values: tuple[int, ...]
    ell: int
    delta: int
    n: int
    noisy: bool = False

    def __post_init__(self):
        check_params(self.n, self.ell, self.delta)
        if len(self.values) != read_length(self.n, self.ell, self.delta):
            raise ParameterError(
                f"read vector length {len(self.values)} != (n+ell)/delta-1 = "
                f"{read_length(self.n, self.ell, self.delta)}"
            )
        if any(v < 0 or v > self.ell for v in self.values):
            raise ParameterError(f"read values must lie in [0, {self.ell}]: {self.values}")

    def __len__(self) -> int:
        return len(self.values)

    def at(self, i: int) -> int:
        """Value at 1-based read index ``i``; 0 outside ``[1, len]``."""
        if 1 <= i <= len(self.values):
            return self.values[i - 1]
        return 0

    def to_list(self) -> list[int]:
        return list(self.values)


def read_vector(x: str | Iterable[int], ell: int, delta: int = 1) -> ReadVector:
    """Window weights ``wt(x[i*delta-ell+1 .. i*delta])`` for every read index i."""
    x = as_word(x)
    n = len(x)
    check_params(n, ell, delta)
    # prefix[p] = wt(x_1 .. x_p), clipped to [0, n]
    prefix = [0]
    for b in x:
        prefix.append(prefix[-1] + b)

    def pref(p: int) -> int:
        return prefix[min(max(p, 0), n)]

    values = tuple(pref(i * delta) - pref(i * delta - ell) for i in range(1, read_length(n, ell, delta) + 1))
    return ReadVector(values, ell, delta, n)


def read_matrix(n: int, ell: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """(delta = 1) read vectors of the words ``start .. stop-1``, one row per word.

    Word ``v`` is the n-bit expansion of ``v``, leftmost bit most significant,
    so rows come in lexicographic order of the bit-strings.
    """
    check_params(n, ell)
    if stop is None:
        stop = 1 << n
    ints = np.arange(start, stop, dtype=np.int64)
    bits = ((ints[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.int16)
    prefix = np.zeros((len(ints), n + 1), dtype=np.int16)
    np.cumsum(bits, axis=1, out=prefix[:, 1:])
    q = np.arange(1, n + ell)
    return prefix[:, np.clip(q, 0, n)] - prefix[:, np.clip(q - ell, 0, n)]


def read_vector_mod2(r: ReadVector | Sequence[int]) -> tuple[int, ...]:
    values = r.values if isinstance(r, ReadVector) else r
    return tuple(v % 2 for v in values)


def corrupt(r: ReadVector, k: int, v: int) -> ReadVector:
    """Substitute the value at 1-based read index ``k`` with ``v``."""
    if not 1 <= k <= len(r):
        raise ParameterError(f"read index {k} outside [1, {len(r)}]")
    if not 0 <= v <= r.ell:
        raise ParameterError(f"substituted value {v} outside [0, {r.ell}]")
    if r.values[k - 1] == v:
        raise ParameterError(f"value at index {k} is already {v}; not a substitution")
    values = list(r.values)
    values[k - 1] = v
    return ReadVector(tuple(values), r.ell, r.delta, r.n, noisy=True)


# -- sub-derivatives -------------------------------------------------------------


@dataclass(frozen=True)
class SubDerivative:
    alpha: int
    entries: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.entries)


def sub_derivative_count(ell: int, delta: int = 1) -> int:
    return ell // delta


def sub_derivative(r: ReadVector, alpha: int) -> SubDerivative:
    """Differences of the read vector sampled every ``ell // delta`` steps from ``alpha``.

    Entry ``m`` is ``R[alpha + m*s + 1] - R[alpha + m*s]`` with ``s = ell // delta``
    for ``m = 0..k``, ``k = (n + ell - (alpha+1)*delta) // (delta*s)``. Reads
    outside the vector count as 0, so the final entry may reach one index past
    the end. Works on noisy vectors too.
    """
    s = sub_derivative_count(r.ell, r.delta)
    if not 0 <= alpha < s:
        raise ParameterError(f"alpha must lie in [0, {s}), got {alpha}")
    k = (r.n + r.ell - (alpha + 1) * r.delta) // (r.delta * s)
    entries = tuple(r.at(alpha + m * s + 1) - r.at(alpha + m * s) for m in range(k + 1))
    return SubDerivative(alpha, entries)


def sub_derivatives(r: ReadVector) -> list[SubDerivative]:
    return [sub_derivative(r, a) for a in range(sub_derivative_count(r.ell, r.delta))]


def sub_derivative_concat(r: ReadVector) -> tuple[int, ...]:
    if r.delta != 1:
        raise ParameterError("the concatenated sub-derivative is defined for delta = 1 only")
    out: list[int] = []
    for d in sub_derivatives(r):
        out.extend(d.entries)
    return tuple(out)


# -- interleaving ----------------------------------------------------------------


@dataclass(frozen=True)
class InterleavedRead:
    """Read vector regrouped by read index residue modulo ell.

    ``forward[k]`` gives the 1-based interleaved position of 1-based read index k
    (entry 0 unused); ``inverse`` is the reverse map.
    """

    values: tuple[int, ...]
    boundaries: tuple[int, ...]
    forward: tuple[int, ...] = field(repr=False)
    inverse: tuple[int, ...] = field(repr=False)

    def blocks(self) -> list[tuple[int, ...]]:
        out, start = [], 0
        for size in self.boundaries:
            out.append(self.values[start:start + size])
            start += size
        return out


def interleave_order(length: int, ell: int) -> list[int]:
    """1-based read indices in interleaved order."""
    order: list[int] = []
    for i in range(1, ell + 1):
        order.extend(range(i, length + 1, ell))
    return order


def interleave(r: ReadVector | Sequence[int], ell: int | None = None) -> InterleavedRead:
    if isinstance(r, ReadVector):
        if r.delta != 1:
            raise ParameterError("interleaving is defined for delta = 1 only")
        values, ell = r.values, r.ell
    else:
        values = tuple(r)
        if ell is None:
            raise ParameterError("ell is required for a raw sequence")
    length = len(values)
    order = interleave_order(length, ell)
    forward = [0] * (length + 1)
    for pos, k in enumerate(order, start=1):
        forward[k] = pos
    boundaries = tuple(len(range(i, length + 1, ell)) for i in range(1, ell + 1))
    return InterleavedRead(
        values=tuple(values[k - 1] for k in order),
        boundaries=boundaries,
        forward=tuple(forward),
        inverse=(0, *order),
    )


# -- structural validation -------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    prop: str
    detail: str


def validate_read_vector(r: ReadVector) -> list[Violation]:
    """Structural properties a noiseless read vector must satisfy.

    Returns the violations found; an empty list means no property is broken.
    The adjacent-step bound (reads differ by at most delta) and the per-index
    value range are checked for every delta; the sub-derivative checks (zero
    weight, nonzero entries alternating from +1) only for delta = 1.
    """
    out: list[Violation] = []
    v = r.values
    for i in range(len(v) - 1):
        if abs(v[i + 1] - v[i]) > r.delta:
            out.append(Violation("adjacent-step", f"|R[{i + 2}] - R[{i + 1}]| = {abs(v[i + 1] - v[i])} > {r.delta}"))
            break
    for i, val in enumerate(v, start=1):
        hi = min(r.ell, i * r.delta, r.n + r.ell - i * r.delta)
        if not 0 <= val <= hi:
            out.append(Violation("range", f"R[{i}] = {val} outside [0, {hi}]"))
            break
    if r.delta != 1:
        return out
    for d in sub_derivatives(r):
        if d.weight != 0:
            out.append(Violation("zero-weight", f"wt(Delta^{d.alpha}) = {d.weight}"))
    for d in sub_derivatives(r):
        nonzero = [e for e in d.entries if e]
        ok = all(e == (1 if t % 2 == 0 else -1) for t, e in enumerate(nonzero))
        if not ok:
            out.append(Violation("alternating-signs", f"Delta^{d.alpha} nonzero entries {nonzero} do not alternate from +1"))
    return out
