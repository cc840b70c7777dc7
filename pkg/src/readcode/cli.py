"""Command-line front end: ``readcode <subcommand> ...``.

Every subcommand prints one report in the chosen format (json by default,
csv for ``bounds``) and exits 0 only when the requested checks pass.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import bounds, verify
from .channel import (
    as_word,
    corrupt,
    format_word,
    interleave,
    read_vector,
    sub_derivatives,
    validate_read_vector,
    ReadVector,
)
from .code import (
    MAX_ENUM_N,
    NoError,
    Corrected,
    candidate_words,
    code_params,
    code_size,
    decode,
    decode_index,
    encode,
    enumerate_code,
    is_codeword,
    locate_error,
    measured_redundancy,
    redundancy_upper_bound,
)
from .errors import DecodingError, ParameterError

BOUNDS_COLUMNS = ["n", "ell", "p", "Q_p", "log2_Q_p", "MIS", "C", "redundancy", "upper_bound", "lower_bound"]
REDUNDANCY_SLACK = verify.REDUNDANCY_SLACK


class Report:
    """What a subcommand produced: a JSON payload, optional CSV rows and text, and a verdict."""

    def __init__(self, payload: dict, ok: bool = True, rows=None, header=None, text=None, problems=()):
        self.payload = payload
        self.ok = ok
        self.rows = rows
        self.header = header
        self.text = text
        self.problems = list(problems)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, sort_keys=True)
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            if self.rows is None:
                w.writerow(["key", "value"])
                for k in sorted(self.payload):
                    w.writerow([k, _cell(self.payload[k])])
            else:
                w.writerow(self.header)
                w.writerows(self.rows)
            return buf.getvalue().rstrip("\n")
        if self.text is not None:
            return self.text
        return "\n".join(f"{k}: {_cell(self.payload[k])}" for k in sorted(self.payload))


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def parse_vector(text: str) -> tuple[int, ...]:
    """A read vector given as a JSON array or comma-separated integers."""
    text = text.strip()
    try:
        vals = json.loads(text) if text.startswith("[") else [int(t) for t in text.split(",") if t.strip()]
    except ValueError as err:
        raise ParameterError(f"cannot parse read vector {text!r}") from err
    if not vals or not all(isinstance(v, int) for v in vals):
        raise ParameterError(f"read vector must be a non-empty list of integers: {text!r}")
    return tuple(vals)


def parse_range(text: str) -> list[int]:
    """``"6-12"`` or ``"8"`` or ``"6,8,10"``."""
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        try:
            out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError as err:
            raise ParameterError(f"bad range {text!r}") from err
    if not out:
        raise ParameterError(f"empty range {text!r}")
    return out


def _read_payload(r: ReadVector) -> dict:
    out = {
        "n": r.n,
        "ell": r.ell,
        "delta": r.delta,
        "read_vector": list(r.values),
        "sub_derivatives": [list(d.entries) for d in sub_derivatives(r)],
        "violations": [{"property": v.prop, "detail": v.detail} for v in validate_read_vector(r)],
    }
    if r.delta == 1:
        inter = interleave(r)
        out["interleaved"] = list(inter.values)
    return out


def _guard_n(n: int, allow_large: bool) -> None:
    if n > MAX_ENUM_N and not allow_large:
        raise ParameterError(f"n={n} exceeds the enumeration guard {MAX_ENUM_N}; pass --allow-large")


# -- subcommands ------------------------------------------------------------------


def cmd_read(args) -> Report:
    r = read_vector(as_word(args.word), args.ell, args.delta)
    payload = _read_payload(r)
    payload["word"] = args.word
    text = "\n".join(
        [f"R = {list(r.values)}"]
        + [f"Delta^{d.alpha} = {list(d.entries)}" for d in sub_derivatives(r)]
        + ([f"interleaved = {payload['interleaved']}"] if "interleaved" in payload else [])
    )
    return Report(payload, text=text)


def cmd_corrupt(args) -> Report:
    if args.word is not None:
        r = read_vector(as_word(args.word), args.ell)
    else:
        if args.n is None:
            raise ParameterError("--read needs --n")
        r = ReadVector(parse_vector(args.read), args.ell, 1, args.n)
    noisy = corrupt(r, args.k, args.v)
    payload = {"n": r.n, "ell": r.ell, "k": args.k, "v": args.v, "e": args.v - r.values[args.k - 1]}
    payload["clean"] = list(r.values)
    payload["read_vector"] = list(noisy.values)
    return Report(payload, text=f"R' = {list(noisy.values)}")


def cmd_decode(args) -> Report:
    params = code_params(args.n, args.ell)
    r = ReadVector(parse_vector(args.read), args.ell, 1, args.n)
    out = decode(r, params)
    payload = {"n": args.n, "ell": args.ell, "params": params.to_dict(), "outcome": out.to_dict()}
    try:
        loc = locate_error(r)
    except DecodingError as err:
        payload["localization"] = {"error": str(err)}
    else:
        payload["localization"] = loc.to_dict()
        if not loc.no_error:
            cands = candidate_words(r, loc)
            payload["candidate_words"] = {
                str(k): {"word": format_word(w), "codeword": is_codeword(w, params)} for k, w in sorted(cands.items())
            }
    ok = isinstance(out, (NoError, Corrected))
    problems = [] if ok else [f"decode: {out.kind}: {out.reason}"]
    lines = [f"outcome: {out.status}"]
    for k in ("word", "k", "e", "kind", "reason"):
        if k in payload["outcome"]:
            lines.append(f"{k}: {payload['outcome'][k]}")
    loc_d = payload["localization"]
    if "candidates" in loc_d:
        lines.append(f"candidates: {loc_d['candidates']}")
    return Report(payload, ok=ok, text="\n".join(lines), problems=problems)


def cmd_encode(args) -> Report:
    params = code_params(args.n, args.ell)
    _guard_n(args.n, args.allow_large)
    if args.word is not None:
        idx = decode_index(args.word, params)
        word = as_word(args.word)
    else:
        idx = args.index
        word = encode(idx, params)
    payload = {
        "n": args.n,
        "ell": args.ell,
        "index": idx,
        "word": format_word(word),
        "read_vector": list(read_vector(word, args.ell).values),
    }
    return Report(payload, text=f"{idx} -> {format_word(word)}")


def cmd_enumerate(args) -> Report:
    params = code_params(args.n, args.ell)
    code = enumerate_code(params, allow_large=args.allow_large)
    red = measured_redundancy(params)
    bound = redundancy_upper_bound(args.n, args.ell)
    words = [format_word(w) for w in code]
    payload = {
        "params": params.to_dict(),
        "size": len(code),
        "redundancy": _num(red),
        "upper_bound": _num(bound),
    }
    if not args.count_only:
        payload["codewords"] = words
    rows = [[i, w] for i, w in enumerate(words)]
    text = f"|C({args.n},{args.ell})| = {len(code)}, redundancy {red:.6f}, bound {bound:.6f}"
    return Report(payload, rows=rows, header=["index", "word"], text=text)


def cmd_verify(args) -> Report:
    if args.suite == "redundancy":
        pairs = [(n, args.ell) for n in parse_range(args.n_range or str(args.n))]
        rep = verify.redundancy_suite(pairs)
    else:
        if args.n is None:
            raise ParameterError("--n is required")
        rep = verify.run_suite(args.suite, args.n, args.ell, args.delta, args.p, args.seed)
    payload = rep.to_dict()
    problems = [f"{rep.suite}: {c.name} failed ({c.failures} of {c.count}); witness {json.dumps(c.witness)}" for c in rep.checks if not c.passed]
    rows = [[c.name, "pass" if c.passed else "FAIL", c.count, c.failures, json.dumps(c.witness)] for c in rep.checks]
    text = "\n".join(
        f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.count} cases)"
        + ("" if c.passed else f" witness {json.dumps(c.witness)}")
        for c in rep.checks
    )
    return Report(
        payload, ok=rep.passed, rows=rows, header=["check", "result", "count", "failures", "witness"],
        text=text, problems=problems,
    )


def _num(x: float):
    return None if math.isinf(x) else round(x, 6)


def bounds_row(n: int, ell: int, eps: float, allow_large: bool = False) -> dict:
    """One row of the bounds table; MIS is None unless it can be computed exactly."""
    p, q = bounds.best_pullback(n, ell)
    row = {
        "n": n,
        "ell": ell,
        "p": p,
        "Q_p": q,
        "log2_Q_p": round(math.log2(q), 6),
        "MIS": None,
        "C": None,
        "redundancy": None,
        "upper_bound": round(redundancy_upper_bound(n, ell), 6),
        "lower_bound": round(bounds.redundancy_lower_bound(n, eps), 6),
    }
    if 1 << n <= bounds.MAX_EXACT_MIS_VERTICES:
        row["MIS"] = bounds.max_independent_set(bounds.confusability_graph(n, ell), exact=True).size
    if ell >= 3 and n >= ell and (n <= MAX_ENUM_N or allow_large):
        params = code_params(n, ell)
        row["C"] = code_size(params, allow_large=allow_large)
        row["redundancy"] = _num(measured_redundancy(params))
    return row


def row_problems(row: dict) -> list[str]:
    out = []
    tag = f"n={row['n']} ell={row['ell']}"
    if row["MIS"] is not None and row["MIS"] > row["Q_p"]:
        out.append(f"bounds: MIS <= Q_p violated at {tag}: {row['MIS']} > {row['Q_p']}")
    if row["MIS"] is not None and row["C"] is not None and row["MIS"] < row["C"]:
        out.append(f"bounds: MIS >= |C| violated at {tag}: {row['MIS']} < {row['C']}")
    if row["C"] is not None and (row["redundancy"] is None or row["redundancy"] > row["upper_bound"] + REDUNDANCY_SLACK):
        out.append(f"bounds: redundancy <= upper_bound + {REDUNDANCY_SLACK:g} violated at {tag}: {row['redundancy']}")
    return out


def cmd_bounds(args) -> Report:
    if not 0 < args.eps < 1:
        raise ParameterError(f"--eps must lie in (0, 1), got {args.eps}")
    ns = parse_range(args.n_range)
    if max(ns) > MAX_ENUM_N and not args.allow_large:
        raise ParameterError(f"n up to {max(ns)} exceeds the enumeration guard {MAX_ENUM_N}; pass --allow-large")
    if min(ns) < 2:
        raise ParameterError("n must be >= 2")
    table = [bounds_row(n, args.ell, args.eps, args.allow_large) for n in ns]
    problems = [p for row in table for p in row_problems(row)]
    rows = [["" if row[c] is None else row[c] for c in BOUNDS_COLUMNS] for row in table]
    text = "\n".join(" ".join(f"{c}={'-' if row[c] is None else row[c]}" for c in BOUNDS_COLUMNS) for row in table)
    return Report({"eps": args.eps, "rows": table}, ok=not problems, rows=rows, header=BOUNDS_COLUMNS,
                  text=text, problems=problems)


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    common.add_argument("--allow-large", action="store_true", help="lift the exhaustive-enumeration guards")

    parser = argparse.ArgumentParser(prog="readcode", description="Single-substitution codes for the sliding-window read channel.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("read", parents=[common], help="read vector, sub-derivatives and interleaving of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--delta", type=int, default=1)
    p.set_defaults(func=cmd_read)

    p = sub.add_parser("corrupt", parents=[common], help="substitute one read value")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--word")
    src.add_argument("--read", help="read vector as JSON array or comma-separated integers")
    p.add_argument("--n", type=int)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--k", type=int, required=True, help="1-based read index")
    p.add_argument("--v", type=int, required=True, help="new value")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", parents=[common], help="decode a possibly corrupted read vector")
    p.add_argument("--read", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("encode", parents=[common], help="map a message index to a codeword (or back with --word)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--index", type=int)
    what.add_argument("--word")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("enumerate", parents=[common], help="list every codeword")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=verify.SUITES + ("redundancy",))
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", help="for --suite redundancy, e.g. 6-20")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[common], help="table of code size, cover size, exact optimum and redundancy bounds")
    p.add_argument("--n-range", required=True, help="e.g. 6-12")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.5)
    p.set_defaults(func=cmd_bounds, default_format="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or getattr(args, "default_format", "json")
    try:
        report = args.func(args)
    except (ParameterError, DecodingError) as err:
        print(json.dumps({"error": type(err).__name__, "message": str(err)}, sort_keys=True), file=sys.stderr)
        return 2
    print(report.render(fmt))
    for line in report.problems:
        print(line, file=sys.stderr)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
