"""Batch front end for code construction, channel simulation, and decoding.

Subcommands: code new, encode, corrupt, decode, radius-table, experiment,
oracle-check, benchmark.  All randomness is Philox keyed on
(seed, cell, trial) so every run is reproducible from the command line
alone.  Exit codes: 0 success, 2 configuration error, 3 decoding failure
(--unique only).
"""

import argparse
import csv
import sys
import time
from math import floor

import numpy as np

from . import codec, curve as cv, modform, oracle
from .errors import AglistError, WeightTooLarge
from .radius import GSParams, check_feasible, choose_A_degree, tau_best, tau_classic


# ---------------------------------------------------------------- file formats

def write_descriptor(f, code):
    f.write(f"kind: {code.curve.kind}\n")
    f.write(f"base: {code.curve.base}\n")
    f.write(f"m: {code.m}\n")
    f.write(f"modulus: {code.curve.field.modulus}\n")
    f.write(f"excluded: {' '.join(P.text() for P in code.excluded)}\n")


def read_descriptor(path):
    fields = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition(":")
            fields[key.strip()] = val.strip()
    try:
        kind = fields["kind"]
        base = int(fields["base"])
        m = int(fields["m"])
    except KeyError as exc:
        raise AglistError(f"descriptor missing field {exc}") from exc
    curve = cv.curve_create(kind, base)
    if "modulus" in fields and int(fields["modulus"]) != curve.field.modulus:
        raise AglistError(
            f"descriptor modulus {fields['modulus']} does not match the "
            f"field's canonical modulus {curve.field.modulus}"
        )
    excluded = None
    if fields.get("excluded"):
        excluded = [cv.place_from_text(t) for t in fields["excluded"].split()]
    return codec.code_create(curve, m, excluded)


def read_word(path):
    with open(path) as f:
        return [int(tok) for tok in f.read().split()]


def write_word(f, word):
    f.write(" ".join(str(v) for v in word) + "\n")


def _open_out(args):
    return open(args.out, "w") if args.out else sys.stdout


def rng_for(seed, cell, trial):
    """Philox generator keyed on (seed, cell, trial): splittable, stable."""
    return np.random.default_rng(
        np.random.Philox(np.random.SeedSequence([seed, cell, trial]))
    )


def _corrupt_word(rng, word, weight, q):
    out = list(word)
    for i in rng.choice(len(word), size=weight, replace=False):
        out[i] = (out[i] + 1 + int(rng.integers(0, q - 1))) % q
    return out


def _int_list(text):
    return [int(tok) for tok in text.split(",") if tok != ""]


def _weight_range(text):
    lo, sep, hi = text.partition(":")
    if sep:
        return list(range(int(lo), int(hi) + 1))
    return [int(lo)]


# ---------------------------------------------------------------- subcommands

def cmd_code_new(args):
    curve = cv.curve_create(args.kind, args.base)
    excluded = [cv.place_from_text(t) for t in args.exclude] or None
    code = codec.code_create(curve, args.m, excluded)
    out = _open_out(args)
    write_descriptor(out, code)
    if out is not sys.stdout:
        out.close()
        print(code.text())
    return 0


def cmd_encode(args):
    code = read_descriptor(args.descriptor)
    msg = read_word(args.message)
    word = codec.encode(code, msg)
    out = _open_out(args)
    write_word(out, word)
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_corrupt(args):
    code = read_descriptor(args.descriptor)
    word = read_word(args.word)
    if args.weight > code.n:
        raise WeightTooLarge(f"weight {args.weight} > n = {code.n}")
    if len(word) != code.n:
        raise AglistError(f"word length {len(word)} != n = {code.n}")
    rng = rng_for(args.seed, 0, 0)
    out = _open_out(args)
    write_word(out, _corrupt_word(rng, word, args.weight, code.curve.field.q))
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_decode(args):
    code = read_descriptor(args.descriptor)
    word = read_word(args.word)
    if args.dump_module:
        _dump_module_matrix(code, word, args)
    if args.unique:
        entry = codec.unique_decode(code, word, backend=args.backend)
        if entry is None:
            print("decoding failure: no codeword within the unique radius",
                  file=sys.stderr)
            return 3
        out = _open_out(args)
        write_word(out, entry.message)
        if out is not sys.stdout:
            out.close()
            print(f"distance {entry.distance}")
        return 0
    params = codec.DecodeParams(args.s, args.ell, args.e, args.backend, args.tau)
    res = codec.decode(code, word, params)
    print(f"tau={res.tau} e={res.e_used} backend={res.backend} "
          f"q_found={res.q_found} list={len(res.entries)}")
    for en in res.entries:
        print(f"  distance {en.distance}  message {' '.join(map(str, en.message))}")
    if args.out:
        with open(args.out, "w") as f:
            for en in res.entries:
                write_word(f, en.codeword)
    return 0


def _dump_module_matrix(code, word, args):
    """Debug dump: the built and the reduced module matrix, as text."""
    s, ell, e = args.s, args.ell, args.e
    shape = code.shape
    tau = args.tau
    if tau is None:
        tau = floor(tau_best(shape, s, ell, e)[0])
    R = modform.build_R(code, word)
    mx = modform.build_module_matrix(
        code, R, GSParams(s, ell, e), choose_A_degree(shape, s, e, tau)
    )
    with open(args.dump_module, "w") as f:
        f.write("# built\n")
        f.write(mx.text())
        f.write("\n# reduced\n")
        f.write(modform.shifted_reduce(mx).text())


def cmd_radius_table(args):
    code = read_descriptor(args.descriptor)
    shape = code.shape
    out = _open_out(args)
    w = csv.writer(out)
    w.writerow(["n", "degG", "g", "p", "s", "ell", "e", "t_star", "tau",
                "tau_classic", "penalty_reduction"])
    for s in args.s_list:
        for ell in args.ell_list:
            for e in args.e_list:
                if s > ell or check_feasible(code.shape, s, ell, e):
                    continue
                tau, t_star = tau_best(code.shape, s, ell, e)
                classic = tau_classic(code.shape, s, ell)
                w.writerow([shape.n, shape.degG, shape.g, shape.p, s, ell, e,
                            t_star, tau, classic, tau - classic])
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_experiment(args):
    code = read_descriptor(args.descriptor)
    weights = args.weights
    if max(weights) > code.n:
        raise WeightTooLarge(f"weight {max(weights)} > n = {code.n}")
    q, k = code.curve.field.q, code.k
    out = _open_out(args)
    w = csv.writer(out)
    w.writerow(["s", "ell", "e", "weight", "trials", "successes",
                "mean_list_size", "mean_wall_time_s", "backend"])
    cell = 0
    for s in args.s_list:
        for ell in args.ell_list:
            for e in args.e_list:
                for weight in weights:
                    successes = 0
                    sizes = 0
                    elapsed = 0.0
                    for trial in range(args.trials):
                        rng = rng_for(args.seed, cell, trial)
                        msg = [int(v) for v in rng.integers(0, q, k)]
                        sent = codec.encode(code, msg)
                        rec = _corrupt_word(rng, sent, weight, q)
                        t0 = time.perf_counter()
                        res = codec.decode(
                            code, rec,
                            codec.DecodeParams(s, ell, e, args.backend),
                        )
                        elapsed += time.perf_counter() - t0
                        sizes += len(res.entries)
                        successes += sent in res.codewords()
                    w.writerow([s, ell, e, weight, args.trials, successes,
                                f"{sizes / args.trials:.3f}",
                                f"{elapsed / args.trials:.6f}",
                                args.backend])
                    cell += 1
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_oracle_check(args):
    code = read_descriptor(args.descriptor)
    word = read_word(args.word)
    params = codec.DecodeParams(args.s, args.ell, args.e, args.backend, args.tau)
    res = codec.decode(code, word, params)
    want = oracle.exhaustive_list(code, word, res.tau, budget=args.budget)
    got = res.codewords()
    print(f"decoder: {len(got)} codeword(s) within tau={res.tau}")
    print(f"oracle:  {len(want)} codeword(s)")
    if got == want:
        print("ok: decoder list matches exhaustive enumeration")
        return 0
    print("MISMATCH", file=sys.stderr)
    for label, lst in (("decoder", got), ("oracle", want)):
        for w_ in lst:
            print(f"  {label}: {' '.join(map(str, w_))}", file=sys.stderr)
    return 1


BENCH_DEGREES = {2: 4, 3: 14, 4: 37}  # rate ~ 1/2 at each size


def cmd_benchmark(args):
    out = _open_out(args)
    w = csv.writer(out)
    w.writerow(["q0", "n", "k", "m", "e", "weight", "trials",
                "mean_decode_s", "backend"])
    for cell, q0 in enumerate(args.q0_list):
        code = codec.code_create(cv.curve_create("hermitian", q0),
                                 BENCH_DEGREES[q0])
        q = code.curve.field.q
        weight = (code.dstar - 1) // 2
        g, p = code.curve.genus, code.curve.field.p
        e = 0
        while p**e < 1 + g:
            e += 1
        elapsed = 0.0
        for trial in range(args.trials):
            rng = rng_for(args.seed, cell, trial)
            msg = [int(v) for v in rng.integers(0, q, code.k)]
            rec = _corrupt_word(rng, codec.encode(code, msg), weight, q)
            t0 = time.perf_counter()
            codec.decode(code, rec, codec.DecodeParams(1, 1, e, args.backend))
            elapsed += time.perf_counter() - t0
        w.writerow([q0, code.n, code.k, code.m, e, weight, args.trials,
                    f"{elapsed / args.trials:.4f}", args.backend])
        out.flush()
    if out is not sys.stdout:
        out.close()
    return 0


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["dense", "module"],
                        default="dense")
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed; required wherever randomness is used")
    common.add_argument("--out", metavar="FILE", default=None,
                        help="output file (default: stdout)")

    ap = argparse.ArgumentParser(
        prog="aglist",
        description="List decoding of one-point AG codes "
                    "(Reed-Solomon and Hermitian).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_code = sub.add_parser("code", help="code management")
    code_sub = p_code.add_subparsers(dest="code_command", required=True)
    p_new = code_sub.add_parser("new", parents=[common],
                                help="build a code, write its descriptor")
    p_new.add_argument("kind", choices=["rational", "hermitian"])
    p_new.add_argument("base", type=int)
    p_new.add_argument("m", type=int)
    p_new.add_argument("--exclude", action="append", default=[],
                       metavar="(x,y)",
                       help="evaluation place to reserve (repeatable)")
    p_new.set_defaults(func=cmd_code_new)

    p_enc = sub.add_parser("encode", parents=[common],
                           help="message file -> codeword file")
    p_enc.add_argument("descriptor")
    p_enc.add_argument("message")
    p_enc.set_defaults(func=cmd_encode)

    p_cor = sub.add_parser("corrupt", parents=[common],
                           help="flip `weight` random positions")
    p_cor.add_argument("descriptor")
    p_cor.add_argument("word")
    p_cor.add_argument("--weight", type=int, required=True)
    p_cor.set_defaults(func=cmd_corrupt, needs_seed=True)

    p_dec = sub.add_parser("decode", parents=[common],
                           help="list-decode a received word")
    p_dec.add_argument("descriptor")
    p_dec.add_argument("word")
    p_dec.add_argument("--s", type=int, default=1)
    p_dec.add_argument("--ell", type=int, default=1)
    p_dec.add_argument("--e", type=int, default=0)
    p_dec.add_argument("--tau", type=int, default=None)
    p_dec.add_argument("--unique", action="store_true",
                       help="bounded-distance mode: exit 3 on failure")
    p_dec.add_argument("--dump-module", metavar="FILE", default=None,
                       help="write the module matrix (built and reduced)")
    p_dec.set_defaults(func=cmd_decode)

    p_rad = sub.add_parser("radius-table", parents=[common],
                           help="CSV of decoding radii over a params grid")
    p_rad.add_argument("descriptor")
    p_rad.add_argument("--s-list", type=_int_list, default=[1])
    p_rad.add_argument("--ell-list", type=_int_list, default=[1])
    p_rad.add_argument("--e-list", type=_int_list, default=[0, 1, 2])
    p_rad.set_defaults(func=cmd_radius_table)

    p_exp = sub.add_parser("experiment", parents=[common],
                           help="seeded Monte-Carlo success-rate sweep, CSV")
    p_exp.add_argument("descriptor")
    p_exp.add_argument("--s-list", type=_int_list, default=[1])
    p_exp.add_argument("--ell-list", type=_int_list, default=[1])
    p_exp.add_argument("--e-list", type=_int_list, default=[0])
    p_exp.add_argument("--weights", type=_weight_range, required=True,
                       metavar="LO:HI")
    p_exp.add_argument("--trials", type=int, required=True)
    p_exp.set_defaults(func=cmd_experiment, needs_seed=True)

    p_ora = sub.add_parser("oracle-check", parents=[common],
                           help="compare the decoder against brute force")
    p_ora.add_argument("descriptor")
    p_ora.add_argument("word")
    p_ora.add_argument("--s", type=int, default=1)
    p_ora.add_argument("--ell", type=int, default=1)
    p_ora.add_argument("--e", type=int, default=0)
    p_ora.add_argument("--tau", type=int, default=None)
    p_ora.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    p_ora.set_defaults(func=cmd_oracle_check)

    p_ben = sub.add_parser("benchmark", parents=[common],
                           help="wall time vs n over Hermitian codes, CSV")
    p_ben.add_argument("--q0-list", type=_int_list, default=[2, 3, 4])
    p_ben.add_argument("--trials", type=int, default=3)
    p_ben.set_defaults(func=cmd_benchmark, needs_seed=True)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "needs_seed", False) and args.seed is None:
        print("error: --seed is required (no ambient entropy)", file=sys.stderr)
        return 2
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (AglistError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
