"""Exhaustive and seeded-random verification suites.

Each suite returns a ``SuiteReport`` holding one ``Check`` per property:
how many cases were examined and, on failure, the first witness. Reports
contain no timings, so equal inputs and seed give byte-identical JSON.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations

from . import bounds
from .channel import (
    corrupt,
    format_word,
    int_to_word,
    interleave,
    read_vector,
    read_vector_mod2,
    sub_derivative,
    sub_derivatives,
    validate_read_vector,
)
from .code import (
    Corrected,
    NoError,
    code_params,
    decode,
    enumerate_code,
    locate_error,
    measured_redundancy,
    redundancy_upper_bound,
)
from .errors import ParameterError, ReconstructionError
from .reconstruction import LTR, RTL, reconstruct, subderiv_reconstruct

DEFAULT_SEED = 20230417
EXHAUSTIVE_N = 16
REDUNDANCY_SLACK = 2.0


@dataclass
class Check:
    name: str
    count: int = 0
    failures: int = 0
    witness: object = None

    def record(self, ok: bool, witness=None) -> None:
        self.count += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "count": self.count, "failures": self.failures}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    def check(self, name: str) -> Check:
        c = Check(name)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _words(n: int, samples: int, seed: int):
    if n <= EXHAUSTIVE_N:
        return [int_to_word(v, n) for v in range(1 << n)], True
    rng = random.Random(seed)
    return [int_to_word(rng.getrandbits(n), n) for _ in range(samples)], False


def _recovers(values, ell, x, direction, mod2) -> bool:
    try:
        return reconstruct(values, ell, len(x), direction=direction, mod2=mod2) == x
    except ReconstructionError:
        return False


# -- channel properties ------------------------------------------------------------------


def properties_suite(n: int, ell: int, delta: int = 1, seed: int = DEFAULT_SEED, samples: int = 2000) -> SuiteReport:
    """Structural read-vector properties over every word (or a seeded sample past n = 16)."""
    words, exhaustive = _words(n, samples, seed)
    rep = SuiteReport("properties", {"n": n, "ell": ell, "delta": delta, "exhaustive": exhaustive, "seed": seed})
    divisible = ell % delta == 0
    length = rep.check("length")
    step = rep.check("adjacent-step")
    flip = rep.check("bit-flip-distance") if divisible else None
    total = rep.check("total-weight") if divisible else None
    zero = rep.check("zero-weight") if divisible else None
    cumul = rep.check("cumulative-bit") if divisible else None
    if delta == 1:
        recon = rep.check("reconstruction")
        signs = rep.check("alternating-signs")
        perm = rep.check("interleave-inverse")
    reads = {}
    for x in words:
        r = read_vector(x, ell, delta)
        reads[x] = r.values
        w = format_word(x)
        length.record(len(r) == (n + ell) // delta - 1, w)
        step.record(all(abs(r.values[i + 1] - r.values[i]) <= delta for i in range(len(r) - 1)), w)
        if divisible:
            total.record(sum(r.values) == ell // delta * sum(x), w)
            for t in range(n):
                y = x[:t] + (1 - x[t],) + x[t + 1:]
                ry = reads.get(y) or read_vector(y, ell, delta).values
                dist = sum(a != b for a, b in zip(r.values, ry))
                flip.record(dist == ell // delta, [w, format_word(y)])
            for d in sub_derivatives(r):
                zero.record(d.weight == 0, [w, d.alpha])
                acc = 0
                for m, e in enumerate(d.entries):
                    acc += e
                    lo = m * ell + d.alpha * delta
                    cumul.record(acc == sum(x[lo:lo + delta]), [w, d.alpha, m])
        if delta == 1:
            mod2 = read_vector_mod2(r)
            ok = all(
                _recovers(src, ell, x, dr, m2) for src, m2 in ((r.values, False), (mod2, True)) for dr in (LTR, RTL)
            )
            recon.record(ok, w)
            signs.record(not any(v.prop == "alternating-signs" for v in validate_read_vector(r)), w)
            inter = interleave(r)
            perm.record(all(inter.inverse[inter.forward[k]] == k for k in range(1, len(r) + 1)), w)
    if delta == 1 and ell > 1 and exhaustive:
        no_dist1 = rep.check("no-distance-one-reads")
        seen = set(reads.values())
        for x, rv in reads.items():
            hit = None
            for q in range(len(rv)):
                for v in range(ell + 1):
                    if v != rv[q] and rv[:q] + (v,) + rv[q + 1:] in seen:
                        hit = [format_word(x), q + 1, v]
            no_dist1.record(hit is None, hit)
    return rep


# -- error localization ----------------------------------------------------------------------


def localization_suite(n: int, ell: int) -> SuiteReport:
    """Halt-index localization for every word and every magnitude-1 substitution.

    * the true error block lies in ``[j+1, i]`` and blocks strictly inside
      ``[j+2, i-1]`` see equal adjacent noisy reads;
    * left side: for the first later block with unequal adjacent reads, the
      left-to-right values at the error block and that block are not both binary;
    * right side: for the nearest earlier such block, the right-to-left values
      one block before the error and one block before that block are not both binary.
    """
    rep = SuiteReport("localization", {"n": n, "ell": ell})
    window = rep.check("halt-window")
    left = rep.check("left-halt")
    right = rep.check("right-halt")
    for v in range(1 << n):
        x = int_to_word(v, n)
        r = read_vector(x, ell)
        for k in range(1, len(r) + 1):
            for e in (-1, 1):
                val = r.values[k - 1] + e
                if not 0 <= val <= ell:
                    continue
                rp = corrupt(r, k, val)
                w = [format_word(x), k, val]
                loc = locate_error(rp)
                beta = (k - 1) % ell
                h0 = (k - beta - 1) // ell
                h = loc.halt
                ok = (
                    loc.beta == beta
                    and loc.e == e
                    and h.j < h.i
                    and h.j + 1 <= h0 <= h.i
                    and all(rp.at(beta + b * ell + 1) == rp.at(beta + b * ell) for b in range(h.j + 2, h.i))
                )
                window.record(ok, w)
                d = sub_derivative(rp, beta).entries
                hat = subderiv_reconstruct(sub_derivative(rp, beta), n, ell, LTR, truncate=False).values
                for b in range(h0 + 1, len(d)):
                    if rp.at(beta + b * ell + 1) != rp.at(beta + b * ell):
                        left.record(not {hat[h0], hat[b]} <= {0, 1}, w)
                        break
                tail = lambda m: -sum(d[m + 1:])  # noqa: E731
                for b in range(h0 - 1, -1, -1):
                    if rp.at(beta + b * ell + 1) != rp.at(beta + b * ell):
                        right.record(not {tail(h0 - 1), tail(b - 1)} <= {0, 1}, w)
                        break
    return rep


# -- code ------------------------------------------------------------------------------


def distance_suite(n: int, ell: int) -> SuiteReport:
    params = code_params(n, ell)
    code = enumerate_code(params)
    rep = SuiteReport("distance", {"n": n, "ell": ell, "codewords": len(code)})
    c = rep.check("read-distance>=3")
    reads = [read_vector(x, ell).values for x in code]
    for (a, ra), (b, rb) in combinations(zip(code, reads), 2):
        d = sum(u != v for u, v in zip(ra, rb))
        c.record(d >= 3, [format_word(a), format_word(b), d])
    return rep


def decoder_suite(n: int, ell: int, seed: int = DEFAULT_SEED, max_codewords: int | None = None) -> SuiteReport:
    """Every single substitution of every codeword (or of a seeded codeword sample) must decode."""
    params = code_params(n, ell)
    code = enumerate_code(params)
    exhaustive = max_codewords is None or len(code) <= max_codewords
    if not exhaustive:
        code = sorted(random.Random(seed).sample(code, max_codewords))
    rep = SuiteReport(
        "decoder", {"n": n, "ell": ell, "codewords": len(code), "exhaustive": exhaustive, "seed": seed}
    )
    clean = rep.check("clean-no-error")
    total = rep.check("single-substitution")
    window = rep.check("window<=W")
    parity = rep.check("parity-flip")
    for x in code:
        r = read_vector(x, ell)
        out = decode(r, params)
        clean.record(isinstance(out, NoError) and out.word == x, format_word(x))
        base_par = read_vector_mod2(interleave(r).values)
        for k in range(1, len(r) + 1):
            for v in range(ell + 1):
                if v == r.values[k - 1]:
                    continue
                e = v - r.values[k - 1]
                rp = corrupt(r, k, v)
                w = [format_word(x), k, v]
                out = decode(rp, params)
                total.record(isinstance(out, Corrected) and (out.word, out.k, out.e) == (x, k, e), w)
                if abs(e) == 1:
                    loc = locate_error(rp)
                    window.record(k in loc.candidates and len(loc.candidates) <= params.W, w)
                    inter = interleave(rp)
                    par = read_vector_mod2(inter.values)
                    flipped = [t + 1 for t in range(len(par)) if par[t] != base_par[t]]
                    parity.record(flipped == [inter.forward[k]], w)
    return rep


def redundancy_suite(pairs) -> SuiteReport:
    rep = SuiteReport("redundancy", {"slack": REDUNDANCY_SLACK})
    c = rep.check("measured<=bound+slack")
    for n, ell in pairs:
        red = measured_redundancy(code_params(n, ell))
        bound = redundancy_upper_bound(n, ell) + REDUNDANCY_SLACK
        c.record(red <= bound, [n, ell, round(red, 6), round(bound, 6)])
    return rep


# -- clique covers ------------------------------------------------------------------------


def cover_suite(n: int, ell: int, p: int) -> SuiteReport:
    rep = SuiteReport("cover", {"n": n, "ell": ell, "p": p})
    m = bounds.cover_block_count(n, ell, p)
    base = bounds.build_clique_cover(m, p)
    rep.check("formula-Q(m,p)").record(len(base) == bounds.clique_cover_size(m, p), [m, p, len(base)])
    cover = bounds.pullback_cover(n, ell, p)
    rep.check("formula-Q_p").record(len(cover) == bounds.pullback_cover_size(n, ell, p), len(cover))
    covered = {w for q in cover.cliques for w in q}
    rep.check("covers-all-words").record(len(covered) == 1 << n, len(covered))
    clique = rep.check("cliques")
    for q in cover.cliques:
        for a, b in combinations(q, 2):
            clique.record(bool(bounds.confusable(a, b, ell)), [format_word(a), format_word(b)])
    perm = rep.check("pi_p-bijection")
    for v in range(1 << n):
        x = int_to_word(v, n)
        perm.record(bounds.pi_p_inverse(bounds.pi_p(x, p, ell), p, ell) == x, format_word(x))
    return rep


def sandwich_suite(n: int, ell: int) -> SuiteReport:
    """Exact optimum code size against the best clique cover and the constructed code."""
    g = bounds.confusability_graph(n, ell)
    mis = bounds.max_independent_set(g, exact=True)
    p_best, q_best = bounds.best_pullback(n, ell)
    code = enumerate_code(code_params(n, ell))
    rep = SuiteReport(
        "sandwich",
        {"n": n, "ell": ell, "mis": mis.size, "best_p": p_best, "cover": q_best, "code": len(code)},
    )
    rep.check("mis<=cover").record(mis.size <= q_best, [mis.size, q_best])
    rep.check("mis>=code").record(mis.size >= len(code), [mis.size, len(code)])
    reads = [read_vector(int_to_word(v, n), ell).values for v in mis.witness]
    ok = all(sum(a != b for a, b in zip(ra, rb)) >= 3 for ra, rb in combinations(reads, 2))
    rep.check("witness-is-code").record(ok)
    return rep


def characterization_suite(n: int, ell: int) -> SuiteReport:
    res = bounds.verify_characterization(n, ell)
    rep = SuiteReport("characterization", {"n": n, "ell": ell})
    rep.check("brute==pattern").record(
        not (res.only_brute or res.only_pattern), {"only_brute": res.only_brute[:3], "only_pattern": res.only_pattern[:3]}
    )
    rep.check("witness j=i+p*ell").record(not res.bad_witnesses, res.bad_witnesses[:3])
    rep.check("no-distance-one").record(res.distance_one_pairs == 0, res.distance_one_pairs)
    rep.checks[0].count = res.brute_pairs
    return rep


SUITES = ("properties", "localization", "characterization", "distance", "decoder", "cover", "sandwich")


def run_suite(name: str, n: int, ell: int, delta: int = 1, p: int = 2, seed: int = DEFAULT_SEED) -> SuiteReport:
    if name == "properties":
        return properties_suite(n, ell, delta, seed)
    if name == "localization":
        return localization_suite(n, ell)
    if name == "characterization":
        return characterization_suite(n, ell)
    if name == "distance":
        return distance_suite(n, ell)
    if name == "decoder":
        return decoder_suite(n, ell, seed, max_codewords=None if n <= 12 else 200)
    if name == "cover":
        return cover_suite(n, ell, p)
    if name == "sandwich":
        return sandwich_suite(n, ell)
    raise ParameterError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


__all__ = [
    "Check",
    "SuiteReport",
    "SUITES",
    "run_suite",
    "properties_suite",
    "localization_suite",
    "characterization_suite",
    "distance_suite",
    "decoder_suite",
    "redundancy_suite",
    "cover_suite",
    "sandwich_suite",
]
