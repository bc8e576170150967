"""Command-line interface.

Subcommands: build, mutate, verify, export, info.  JSON results go to
--out (atomic write) or stdout; human summaries go to stderr.  Exit codes:
0 all good, 1 a verified identity or mutation invariant failed, 2 bad
input / parse / IO / unknown names.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .cartan import CartanDatum, WeylWord, pair_weight_root
from .checks import ALL_CHECKS, default_sequences, run_suite
from .errors import (
    EngineInvariantError,
    IncompatibleError,
    NotDivisibleError,
    NotReducedError,
)
from .gls import analyze_word, build_initial_seed, build_quiver
from .seeds import check_compatible, mutate_seq
from .serialize import (
    atomic_write_text,
    canonical_dumps,
    gls_block,
    pretty_dumps,
    report_to_json,
    seed_from_json,
    seed_to_json,
    torus_to_json,
)
from .torus import KERNEL_BACKEND

CACHE_ENV = "QCA_CACHE_DIR"


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        atomic_write_text(out_path, text)
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _parse_csv_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise ValueError("%s must be a comma-separated integer list" % what)


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_cartan_word(args) -> tuple[CartanDatum, WeylWord]:
    obj = _load_json(args.cartan)
    if "cartan" not in obj:
        raise ValueError("input file has no \"cartan\" key")
    cartan = CartanDatum.from_rows(obj["cartan"])
    if getattr(args, "word", None):
        letters = _parse_csv_ints(args.word, "--word")
    elif "word" in obj:
        letters = tuple(int(x) for x in obj["word"])
    else:
        raise ValueError("no word given (pass --word or a \"word\" key)")
    word = WeylWord.from_one_based(letters)
    word.validate(cartan)
    return cartan, word


def _load_seed(args):
    if getattr(args, "seed", None):
        return seed_from_json(_load_json(args.seed))
    if getattr(args, "cartan", None):
        cartan, word = _load_cartan_word(args)
        return build_initial_seed(cartan, word)
    raise ValueError("pass --seed PATH, or --cartan PATH (with --word)")


def _seed_summary(seed) -> None:
    try:
        d_val = check_compatible(seed.lmat, seed.bmat)
        d_txt = str(d_val) if d_val is not None else "none (no exchangeable indices)"
    except IncompatibleError as e:
        d_txt = "INCOMPATIBLE (%s)" % e
    _say("indices %d, exchangeable %d, frozen %d, history %s"
         % (seed.k, len(seed.ex), seed.k - len(seed.ex),
            [k + 1 for k in seed.history]))
    _say("compatibility d = %s" % d_txt)


def cmd_build(args) -> int:
    cartan, word = _load_cartan_word(args)
    seed = build_initial_seed(cartan, word)
    g = analyze_word(cartan, word)
    quiver = build_quiver(cartan, g)
    obj = seed_to_json(seed)
    obj["gls"] = gls_block(word, g, quiver)
    _emit(pretty_dumps(obj), args.out)
    _say("rank %d, word length %d" % (cartan.n, word.r))
    _seed_summary(seed)
    _say("parity ok, weight balance ok, q-commutation ok, homogeneity ok")
    return 0


def _cache_dir() -> str:
    return os.environ.get(CACHE_ENV) or os.path.join(
        os.path.expanduser("~"), ".cache", "qca"
    )


def _cache_key(payload: dict) -> str:
    payload = dict(payload)
    payload["engine"] = __version__
    return hashlib.sha256(canonical_dumps(payload).encode()).hexdigest()


def cmd_mutate(args) -> int:
    seq = _parse_csv_ints(args.seq, "--seq")
    if getattr(args, "seed", None):
        start = seed_from_json(_load_json(args.seed))
        key_payload = {"seed": seed_to_json(start), "seq": list(seq)}
    else:
        cartan, word = _load_cartan_word(args)
        start = build_initial_seed(cartan, word)
        key_payload = {
            "cartan": [list(r) for r in cartan.a],
            "word": list(word.to_one_based()),
            "seq": list(seq),
        }
    for k in seq:
        if not 1 <= k <= start.k:
            raise ValueError("direction %d outside 1..%d" % (k, start.k))

    key = _cache_key(key_payload)
    cache_path = os.path.join(_cache_dir(), key + ".json")
    if not args.no_cache and os.path.exists(cache_path):
        with open(cache_path) as fh:
            text = fh.read()
        seed_from_json(json.loads(text))  # corrupt cache must not be served
        _emit(text, args.out)
        _say("cache hit %s" % key[:16])
        return 0

    result = mutate_seq(start, tuple(k - 1 for k in seq))
    text = pretty_dumps(seed_to_json(result))
    if not args.no_cache:
        os.makedirs(_cache_dir(), exist_ok=True)
        atomic_write_text(cache_path, text)
        _say("cache store %s" % key[:16])
    _emit(text, args.out)
    _seed_summary(result)
    return 0


def cmd_verify(args) -> int:
    seed = _load_seed(args)
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    sequences = default_sequences(seed, depth=args.depth, rng_seed=args.rng_seed)
    report = run_suite(
        seed,
        sequences,
        checks=checks,
        meta={"depth": args.depth, "rng_seed": args.rng_seed},
    )
    _emit(pretty_dumps(report_to_json(report, __version__)), args.out)
    by_check: dict = {}
    for e in report.entries:
        by_check.setdefault(e.check, []).append(e)
    for name, ents in by_check.items():
        n_fail = sum(1 for e in ents if e.status == "fail")
        if n_fail:
            first = next(e for e in ents if e.status == "fail")
            _say("%s: FAIL (%d of %d; first witness: %s)"
                 % (name, n_fail, len(ents), first.witness))
        else:
            _say("%s: pass (%d entries)" % (name, len(ents)))
    _say("total %.2fs" % report.timings.get("total", 0.0))
    return 0 if report.passed else 1


def cmd_export(args) -> int:
    seed = seed_from_json(_load_json(args.seed))
    obj = seed_to_json(seed)
    if args.global_basis_normalization:
        if seed.cartan is None:
            raise ValueError("normalization needs a seed carrying its Cartan datum")
        rescaled = []
        for i, x in enumerate(seed.vars):
            w = seed.dvec[i]
            if not w.is_root_lattice():
                raise ValueError(
                    "normalization needs root-lattice D entries (index %d)" % (i + 1)
                )
            norm = pair_weight_root(seed.cartan, w, w.as_root())
            if norm % 2:
                raise ValueError("(d_i, d_i) is odd at index %d" % (i + 1))
            rescaled.append(torus_to_json(x.v_shift(-norm // 2)))
        obj["vars"] = rescaled
        obj["normalization"] = "global-basis"
    _emit(pretty_dumps(obj), args.out)
    _say("exported %d variables%s" % (
        seed.k, " (global-basis normalized)" if args.global_basis_normalization else ""))
    return 0


def cmd_info(args) -> int:
    _say("qca %s" % __version__)
    _say("kernel backend: %s" % KERNEL_BACKEND)
    _say("cache dir: %s" % _cache_dir())
    if getattr(args, "seed", None):
        seed = seed_from_json(_load_json(args.seed))
        _seed_summary(seed)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qca",
        description="Exact quantum cluster algebra engine "
                    "(GLS initial seeds, torus mutation, identity checks)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="initial seed from a Cartan matrix and reduced word")
    b.add_argument("--cartan", required=True, help="JSON file with a \"cartan\" key")
    b.add_argument("--word", help="reduced word, 1-based CSV (else \"word\" key)")
    b.add_argument("--out", help="write JSON here instead of stdout")
    b.set_defaults(func=cmd_build)

    m = sub.add_parser("mutate", help="apply a mutation sequence")
    m.add_argument("--seed", help="seed JSON file")
    m.add_argument("--cartan", help="JSON file with a \"cartan\" key")
    m.add_argument("--word", help="reduced word, 1-based CSV")
    m.add_argument("--seq", required=True, help="mutation directions, 1-based CSV")
    m.add_argument("--out", help="write JSON here instead of stdout")
    m.add_argument("--no-cache", action="store_true", help="bypass the result cache")
    m.set_defaults(func=cmd_mutate)

    v = sub.add_parser("verify", help="run identity checks over mutation sequences")
    v.add_argument("--seed", help="seed JSON file")
    v.add_argument("--cartan", help="JSON file with a \"cartan\" key")
    v.add_argument("--word", help="reduced word, 1-based CSV")
    v.add_argument("--checks", help="CSV subset of: %s" % ", ".join(ALL_CHECKS))
    v.add_argument("--depth", type=int, default=4,
                   help="enumerate all sequences up to this length (default 4)")
    v.add_argument("--rng-seed", type=int, default=0,
                   help="seed for the random sequence sample (default 0)")
    v.add_argument("--out", help="write the JSON report here instead of stdout")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="re-emit a seed's variables as JSON")
    e.add_argument("--seed", required=True, help="seed JSON file")
    e.add_argument("--global-basis-normalization", action="store_true",
                   help="rescale each variable by v^(-(d_i, d_i)/2)")
    e.add_argument("--out", help="write JSON here instead of stdout")
    e.set_defaults(func=cmd_export)

    i = sub.add_parser("info", help="engine and environment information")
    i.add_argument("--seed", help="seed JSON file to summarize")
    i.set_defaults(func=cmd_info)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage, 0 on --help; keep its codes
        return int(e.code or 0)
    try:
        return args.func(args)
    except (EngineInvariantError, NotDivisibleError, IncompatibleError) as e:
        _say("invariant failure: %s" % e)
        return 1
    except NotReducedError as e:
        _say("error: %s" % e)
        return 2
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as e:
        _say("error: %s" % e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
