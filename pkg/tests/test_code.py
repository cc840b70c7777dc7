import itertools
import math
import re

import pytest
from hypothesis import given, strategies as st

from readcode.channel import ReadVector, corrupt, int_to_word, interleave, read_vector, sub_derivative
from readcode.code import (
    Corrected,
    Failure,
    NoError,
    ParityCheckLayout,
    candidate_words,
    code_params,
    code_size,
    decode,
    decode_index,
    encode,
    enumerate_code,
    is_codeword,
    layout_for,
    locate_error,
    measured_redundancy,
    redundancy_upper_bound,
    rll_check,
    syndrome,
)
from readcode.errors import DecodingError, ParameterError, ScaleGuardError


def codeword_oracle(x, params):
    """Membership straight from the definition, using plain lists only."""
    n, ell = params.n, params.ell
    pad = [0] * ell + list(x) + [0] * ell
    reads = [sum(pad[q:q + ell]) for q in range(1, n + ell)]
    at = lambda i: reads[i - 1] if 1 <= i <= len(reads) else 0  # noqa: E731
    delta = []
    for alpha in range(ell):
        k = (n + ell - (alpha + 1)) // ell
        delta += [at(alpha + m * ell + 1) - at(alpha + m * ell) for m in range(k + 1)]
    bits = "".join(str(d % 2) for d in delta)
    if re.search("0" * (params.L + 1), bits):
        return False
    inter = [reads[i - 1] for a in range(1, ell + 1) for i in range(a, len(reads) + 1, ell)]
    s = 0
    for pos, v in enumerate(inter, start=1):
        if v % 2:
            s ^= (pos - 1) % (2 ** params.a - 1) + 1
    return s == 0


def test_params_use_ceilings():
    for n in range(3, 200):
        for ell in (3, 4, 7):
            if n < ell:
                continue
            p = code_params(n, ell)
            assert p.L == math.ceil(math.log2(2 * (n + ell)))
            assert p.W == 2 * p.L + 4
            assert p.a == math.ceil(math.log2(p.W + 1))
    p = code_params(10, 3)
    assert (p.L, p.W, p.a, p.length) == (5, 14, 4, 12)


def test_params_reject():
    with pytest.raises(ParameterError):
        code_params(10, 2)
    with pytest.raises(ParameterError):
        code_params(3, 4)


def test_rll_examples():
    assert rll_check((1, 0, 0, 1), 2)
    assert not rll_check((1, 0, 0, 0, 1), 2)
    assert not rll_check((0,) * 9, 5)
    assert rll_check((), 0)


@given(st.lists(st.integers(0, 1), max_size=30), st.integers(0, 8))
def test_rll_matches_regex(bits, L):
    s = "".join(map(str, bits))
    assert rll_check(bits, L) == (re.search("0" * (L + 1), s) is None)


def test_syndrome_examples():
    lay = ParityCheckLayout(3, 10)
    assert syndrome([0] * 10, lay) == 0
    assert syndrome([0, 0, 0, 0, 1, 0, 0, 0, 0, 0], lay) == 5
    assert syndrome([0] * 7 + [1, 0, 0], lay) == 1
    assert list(lay.matrix()[4]) == [1, 0, 1]
    with pytest.raises(ParameterError):
        syndrome([0] * 9, lay)


@given(st.integers(1, 6), st.integers(1, 100))
def test_layout_columns(a, length):
    lay = ParityCheckLayout(a, length)
    cols = [lay.column(i) for i in range(1, length + 1)]
    assert all(0 < c < 2 ** a for c in cols)
    w = lay.period
    for s in range(max(1, length - w + 1)):
        window = cols[s:s + w]
        assert len(set(window)) == len(window)


def test_zero_word_is_not_a_codeword():
    assert not is_codeword("0" * 10, code_params(10, 3))


@pytest.mark.parametrize("n,ell", [(6, 3), (8, 3), (10, 3), (9, 4), (11, 5)])
def test_enumeration_matches_definition(n, ell):
    params = code_params(n, ell)
    listed = set(enumerate_code(params))
    for v in range(1 << n):
        x = int_to_word(v, n)
        expect = codeword_oracle(x, params)
        assert is_codeword(x, params) == expect
        assert (x in listed) == expect


def test_code_sizes():
    assert code_size(code_params(10, 3)) == 56
    assert code_size(code_params(12, 4)) == 214
    assert code_size(code_params(8, 3)) == 13
    assert code_size(code_params(6, 3)) == 6


def test_enumeration_is_sorted_and_guarded():
    code = enumerate_code(code_params(10, 3))
    assert code == sorted(code)
    with pytest.raises(ScaleGuardError):
        enumerate_code(code_params(27, 3))


def test_redundancy_example():
    params = code_params(10, 3)
    bound = math.log2(math.log2(10)) + math.log2(1 + (3 + math.log2(1.3)) / math.log2(10)) + 2
    assert redundancy_upper_bound(10, 3) == pytest.approx(bound)
    assert measured_redundancy(params) == pytest.approx(10 - math.log2(56))
    assert measured_redundancy(params) <= bound + 2


def test_encode_roundtrip():
    params = code_params(10, 3)
    code = enumerate_code(params)
    assert encode(0, params) == code[0]
    for m in range(len(code)):
        assert decode_index(encode(m, params), params) == m
    with pytest.raises(ParameterError):
        encode(len(code), params)
    with pytest.raises(ParameterError):
        decode_index("0" * 10, params)


def test_example_six_membership():
    params = code_params(6, 3)
    # neither word satisfies both constraints at n = 6
    for w in ("101100", "011100"):
        assert is_codeword(w, params) == codeword_oracle(tuple(map(int, w)), params)
    assert not is_codeword("101100", params)


def test_localization_example():
    rp = ReadVector((1, 1, 2, 3, 2, 1, 0, 0), 3, 1, 6)
    loc = locate_error(rp)
    assert (loc.e, loc.beta, loc.alpha) == (1, 0, 1)
    assert loc.candidates == (1, 4)
    assert loc.hat.values == (1, 2) and loc.tilde.values == (0, 1)
    assert (loc.halt.i, loc.halt.j) == (1, -1)
    cands = candidate_words(rp, loc)
    assert cands == {1: (0, 1, 1, 1, 0, 0), 4: (1, 0, 1, 1, 0, 0)}


def test_decode_example_follows_membership():
    params = code_params(6, 3)
    rp = ReadVector((1, 1, 2, 3, 2, 1, 0, 0), 3, 1, 6)
    out = decode(rp, params)
    members = [k for k, w in candidate_words(rp, locate_error(rp)).items() if is_codeword(w, params)]
    if members:
        assert isinstance(out, Corrected) and out.k in members
    else:
        assert isinstance(out, Failure)


def test_clean_vector_has_no_error():
    loc = locate_error(read_vector("101100", 3))
    assert loc.no_error and loc.candidates == ()


def test_double_substitution_is_rejected():
    params = code_params(10, 5)
    c = enumerate_code(params)[0]
    r = read_vector(c, 5)
    k1, k2 = 1, 3  # residues 0 and 2: four nonzero sub-derivative weights
    rp = corrupt(corrupt(r, k1, (r.values[k1 - 1] + 1) % 6), k2, (r.values[k2 - 1] + 1) % 6)
    weights = [sub_derivative(rp, a).weight for a in range(5)]
    assert sum(1 for w in weights if w) >= 3
    with pytest.raises(DecodingError):
        locate_error(rp)
    out = decode(rp, params)
    assert isinstance(out, Failure) and out.kind == "weights"


@pytest.mark.parametrize("n,ell", [(8, 3), (10, 3), (9, 4), (12, 4), (10, 5)])
def test_decoder_exhaustive(n, ell):
    params = code_params(n, ell)
    for c in enumerate_code(params):
        r = read_vector(c, ell)
        assert decode(r, params) == NoError(c)
        for k in range(1, len(r) + 1):
            for v in range(ell + 1):
                if v == r.values[k - 1]:
                    continue
                out = decode(corrupt(r, k, v), params)
                assert out == Corrected(c, k, v - r.values[k - 1])


@pytest.mark.parametrize("n,ell", [(10, 3), (12, 4)])
def test_error_changes_one_interleaved_parity(n, ell):
    params = code_params(n, ell)
    lay = layout_for(params)
    for c in enumerate_code(params)[:10]:
        r = read_vector(c, ell)
        for k in range(1, len(r) + 1):
            v = r.values[k - 1] + (1 if r.values[k - 1] < ell else -1)
            rp = corrupt(r, k, v)
            s = syndrome([t % 2 for t in interleave(rp).values], lay)
            assert s == lay.column(interleave(rp).forward[k])


def test_distance_at_least_three():
    params = code_params(10, 3)
    reads = [read_vector(c, 3).values for c in enumerate_code(params)]
    for a, b in itertools.combinations(reads, 2):
        assert sum(x != y for x, y in zip(a, b)) >= 3


def test_outcome_dicts():
    assert NoError((1, 0)).to_dict() == {"status": "no_error", "word": "10"}
    assert Corrected((1, 0), 2, -1).to_dict()["e"] == -1
    assert Failure("x", "window").to_dict() == {"status": "failure", "kind": "window", "reason": "x"}
