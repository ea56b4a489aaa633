"""Command-line front end: build, simulate, verify and stats.

Exit codes: 0 on success or a passing verification, 1 when verification
finds a counterexample, 2 on usage errors or an infeasible build request.

Sampling uses numpy's default PCG64 generator so a (seed, samples) pair
reproduces the exact same verification run.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

import numpy as np

from . import block_builder as bb
from . import compress as cmp
from . import ir
from . import resources
from . import sim
from .ir import Circuit
from .qubit_adders import AdderSpec, BuiltAdder, ancilla_required, ancilla_required_plus_k, build_cla_adder, build_plus_k, build_ripple_adder

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2

EXHAUSTIVE_LIMIT = 1 << 20

COMPRESS_KINDS = ("compress231", "compress241")
ADDER_KINDS = ("cla-adder", "plus-k", "ripple-adder")
BLOCK_KINDS = ("block-adder", "block-plus-k")
KINDS = COMPRESS_KINDS + ADDER_KINDS + BLOCK_KINDS

# Reference truth tables for the compression verifiers, keyed by input bits.
TABLE_231 = {
    (0, 0, 0): (0, 0, 0),
    (0, 0, 1): (2, 2, 0),
    (0, 1, 0): (0, 1, 0),
    (0, 1, 1): (0, 2, 0),
    (1, 0, 0): (1, 0, 0),
    (1, 0, 1): (2, 1, 0),
    (1, 1, 0): (1, 1, 0),
    (1, 1, 1): (1, 2, 0),
}
TABLE_241 = {(a, b): (a + 2 * b, 0) for a in (0, 1) for b in (0, 1)}


class UsageError(Exception):
    pass


# --- construction ----------------------------------------------------------

def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


def _block_plan(args) -> bb.BlockPlan:
    mode = bb.MODE_AB if args.kind == "block-adder" else bb.MODE_PLUS_K
    scheme = cmp.scheme_by_name(args.scheme)
    plan = bb.plan_blocks(mode, scheme, args.n)
    if plan is None:
        regs = 2 if mode == bb.MODE_AB else 1
        raise UsageError(
            f"infeasible: no block count c >= 2 dividing n={args.n} satisfies "
            f"floor((c-1)*{regs}n/({scheme.m}c)) >= 2n/c + c - 1 "
            f"(mode {mode}, scheme {scheme.label})"
        )
    return plan


def build_kind(args) -> tuple[Circuit, bb.BlockPlan | None]:
    """Construct the circuit named by ``args.kind``; block kinds carry a plan."""
    kind = args.kind
    if kind == "compress231":
        return cmp.build_compress_231(), None
    if kind == "compress241":
        return cmp.build_compress_241(), None
    _require(args.n is not None, f"--n is required for kind {kind}")
    _require(args.n >= 1, "--n must be >= 1")
    if kind in ADDER_KINDS:
        spec = AdderSpec(args.n, carry_in=args.carry_in, carry_out=args.carry_out)
        if kind == "cla-adder":
            return build_cla_adder(spec).circuit, None
        if kind == "ripple-adder":
            return build_ripple_adder(spec).circuit, None
        _require(args.k is not None, "--k is required for kind plus-k")
        return build_plus_k(spec, args.k).circuit, None
    plan = _block_plan(args)
    if kind == "block-adder":
        return bb.build_block_adder(plan, args.carry_in, args.carry_out), plan
    _require(args.k is not None, "--k is required for kind block-plus-k")
    return bb.build_block_plus_k(plan, args.k, args.carry_in, args.carry_out), plan


# --- oracles ---------------------------------------------------------------

def _binary_inputs(free: int, zeros: int, exhaustive: bool, samples: int, seed: int) -> np.ndarray:
    """Input matrix with ``free`` leading binary positions and trailing zeros."""
    if exhaustive:
        _require(free <= 20, f"exhaustive sweep over 2^{free} inputs exceeds {EXHAUSTIVE_LIMIT}")
        rows = np.array(list(itertools.product((0, 1), repeat=free)), dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        rows = rng.integers(0, 2, size=(samples, free), dtype=np.int64)
    return np.hstack([rows, np.zeros((rows.shape[0], zeros), dtype=np.int64)])


def _bits_to_int(mat: np.ndarray, cols: list[int]) -> np.ndarray:
    out = np.zeros(mat.shape[0], dtype=object)
    for i, col in enumerate(cols):
        out += mat[:, col].astype(object) << i
    return out


def _int_to_bits(vals: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((len(vals), n), dtype=np.int64)
    for i in range(n):
        out[:, i] = [(int(v) >> i) & 1 for v in vals]
    return out


def expected_outputs(kind: str, args, plan: bb.BlockPlan | None, ins: np.ndarray) -> np.ndarray:
    """Independent big-integer / truth-table oracle for each circuit kind."""
    if kind in COMPRESS_KINDS:
        table = TABLE_231 if kind == "compress231" else TABLE_241
        return np.array([table[tuple(int(d) for d in row)] for row in ins], dtype=np.int64)

    exp = ins.copy()
    n = args.n
    if kind in ADDER_KINDS:
        has_a = kind != "plus-k"
        a_cols = list(range(n)) if has_a else []
        b_cols = list(range(len(a_cols), len(a_cols) + n))
        pos = len(a_cols) + n
        cin_col = pos if args.carry_in else None
        pos += int(args.carry_in)
        cout_col = pos if args.carry_out else None
    else:
        assert plan is not None
        if plan.mode == bb.MODE_AB:
            a_cols = [2 * i for i in range(n)]
            b_cols = [2 * i + 1 for i in range(n)]
        else:
            a_cols, b_cols = [], list(range(n))
        pos = plan.registers * n
        cin_col = pos if args.carry_in else None
        pos += int(args.carry_in)
        cout_col = pos if args.carry_out else None

    a_val = _bits_to_int(ins, a_cols) if a_cols else int(args.k)
    b_val = _bits_to_int(ins, b_cols)
    cin = ins[:, cin_col] if cin_col is not None else 0
    tot = a_val + b_val + cin
    exp[:, b_cols] = _int_to_bits(tot % (1 << n), n)
    if cout_col is not None:
        exp[:, cout_col] = [int(t) >> n for t in tot]
    return exp


def run_verify(args) -> int:
    kind = args.kind
    built_circ, plan = build_kind(args)
    circ = built_circ
    if args.circuit:
        circ = ir.loads(Path(args.circuit).read_text())
        _require(circ.width == built_circ.width, "circuit file width does not match kind flags")

    if kind in COMPRESS_KINDS:
        free, zeros = circ.width, 0
    elif kind in ADDER_KINDS:
        has_a = kind != "plus-k"
        free = (2 if has_a else 1) * args.n + int(args.carry_in)
        zeros = circ.width - free
    else:
        free = plan.registers * args.n + int(args.carry_in)
        zeros = circ.width - free

    ins = _binary_inputs(free, zeros, args.exhaustive, args.samples, args.seed)
    exp = expected_outputs(kind, args, plan, ins)
    out, _ = sim.run_batch(circ, ins)
    bad = np.nonzero((out != exp).any(axis=1))[0]
    if bad.size:
        i = int(bad[0])
        print(
            f"FAIL {kind}: input={','.join(map(str, ins[i]))} "
            f"expected={','.join(map(str, exp[i]))} got={','.join(map(str, out[i]))}"
        )
        return EXIT_COUNTEREXAMPLE

    if kind in COMPRESS_KINDS:
        # Round trip: decompression must restore every binary input.
        scheme = cmp.SCHEME_231 if kind == "compress231" else cmp.SCHEME_241
        back, _ = sim.run_batch(ir.inverse(built_circ) if args.circuit is None else ir.inverse(circ), out)
        bad = np.nonzero((back != ins).any(axis=1))[0]
        if bad.size:
            i = int(bad[0])
            print(f"FAIL {kind}: decompress(compress(x)) != x at x={','.join(map(str, ins[i]))}")
            return EXIT_COUNTEREXAMPLE
        del scheme
    print(f"PASS {kind}: {ins.shape[0]} cases")
    return EXIT_PASS


# --- commands --------------------------------------------------------------

def _plan_path(out: Path) -> Path:
    return out.with_suffix(".plan.json") if out.suffix == ".json" else Path(str(out) + ".plan.json")


def cmd_build(args) -> int:
    circ, plan = build_kind(args)
    text = ir.dumps(circ, indent=2)
    if args.out:
        out = Path(args.out)
        out.write_text(text + "\n")
        if plan is not None:
            _plan_path(out).write_text(json.dumps(plan.to_dict(), indent=2) + "\n")
    else:
        print(text)
    summary = f"kind={args.kind} width={circ.width} depth={ir.depth(circ)} gates={len(circ.gates)}"
    if plan is not None:
        summary += f" c={plan.c}"
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return EXIT_PASS


def cmd_simulate(args) -> int:
    circ = ir.loads(Path(args.circuit).read_text())
    try:
        digits = [int(t) for t in args.input.split(",")]
        state = sim.basis_state(circ, digits)
    except ValueError as e:
        raise UsageError(f"bad --input: {e}") from None
    out = sim.run(circ, state)
    print(",".join(map(str, out.digits)))
    return EXIT_PASS


def cmd_stats(args) -> int:
    circ = ir.loads(Path(args.circuit).read_text())
    ancilla = None
    plan_file = Path(args.plan) if args.plan else _plan_path(Path(args.circuit))
    if plan_file.exists():
        p = json.loads(plan_file.read_text())
        scheme = cmp.scheme_by_name(p["scheme"])
        # Pool available while one block is decompressed.
        ancilla = (p["c"] - 1) * (len(p["blocks"][0]) // scheme.m)
    r = resources.report(circ, ancilla_generated=ancilla)
    if args.expand_cost_model:
        r = resources.expand_cost_model(r)
    if args.csv:
        print(resources.csv_header())
        print(resources.to_csv_row(r))
    else:
        print(resources.to_json(r))
    return EXIT_PASS


def cmd_verify(args) -> int:
    return run_verify(args)


# --- argument parsing ------------------------------------------------------

def _add_build_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--n", type=int, help="register size in bits")
    p.add_argument("--scheme", default="231", help="compression scheme (231 or 241)")
    p.add_argument("--carry-in", action="store_true")
    p.add_argument("--carry-out", action="store_true")
    p.add_argument("--k", type=int, help="the constant for +k kinds")


def make_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="radixcirc", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a circuit and write it as JSON")
    _add_build_flags(p)
    p.add_argument("--out", help="output path; the plan sidecar goes next to it")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("simulate", help="run a circuit file on one basis state")
    p.add_argument("circuit", help="circuit JSON path")
    p.add_argument("--input", required=True, help="comma-separated digits, wire 0 first")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check a circuit kind against its oracle")
    _add_build_flags(p)
    p.add_argument("--circuit", help="verify this circuit file instead of a fresh build")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="print a resource report for a circuit file")
    p.add_argument("circuit", help="circuit JSON path")
    p.add_argument("--plan", help="plan sidecar path (default: <circuit>.plan.json)")
    p.add_argument("--expand-cost-model", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_stats)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    if getattr(args, "samples", None) is not None and args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ir.CircuitError, ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
