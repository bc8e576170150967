"""Canonical JSON forms and atomic file writes.

All user-facing indices are 1-based; sentinels follow the display
convention (successor r + 1 and predecessor 0 mean "none").  Serialized
objects use sorted keys and deterministic list orders so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile

from .cartan import CartanDatum, Weight, WeylWord
from .checks import CheckReport
from .gls import GLSData, QuiverArrows
from .seeds import BMatrix, QuantumSeed
from .torus import LMatrix, TorusElem

__all__ = [
    "canonical_dumps",
    "pretty_dumps",
    "atomic_write_text",
    "weight_to_json",
    "weight_from_json",
    "torus_to_json",
    "torus_from_json",
    "seed_to_json",
    "seed_from_json",
    "gls_block",
    "report_to_json",
]


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def pretty_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file in the same directory plus rename, so failed
    runs never leave partial output behind."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def weight_to_json(w: Weight) -> dict:
    return {"m": list(w.m), "c": list(w.c)}


def weight_from_json(obj) -> Weight:
    return Weight(tuple(int(x) for x in obj["m"]), tuple(int(x) for x in obj["c"]))


def torus_to_json(x: TorusElem) -> list:
    """List of {"exp": [...], "coeff": [[v_exp, int], ...]}, terms sorted
    lex by exponent, coefficient pairs sorted by v-exponent."""
    out = []
    for a in sorted(x.terms):
        cf = x.terms[a]
        out.append({
            "exp": list(a),
            "coeff": [[e, cf[e]] for e in sorted(cf)],
        })
    return out


def torus_from_json(ambient: LMatrix, data) -> TorusElem:
    terms = {}
    for item in data:
        exp = tuple(int(x) for x in item["exp"])
        cf = {}
        for e, c in item["coeff"]:
            e, c = int(e), int(c)
            if c:
                if e in cf:
                    raise ValueError("duplicate v-exponent in coefficient")
                cf[e] = c
        if not cf:
            continue
        if exp in terms:
            raise ValueError("duplicate exponent vector in torus element")
        terms[exp] = cf
    return TorusElem(ambient, terms)


def _matrix_to_json(rows) -> list:
    return [list(row) for row in rows]


def seed_to_json(seed: QuantumSeed) -> dict:
    """Current data plus the initial torus data needed to reload the seed."""
    obj = {
        "L": _matrix_to_json(seed.lmat.rows),
        "B": _matrix_to_json(seed.bmat.rows),
        "Kex": [k + 1 for k in seed.bmat.ex],
        "D": [weight_to_json(w) for w in seed.dvec],
        "vars": [torus_to_json(x) for x in seed.vars],
        "history": [k + 1 for k in seed.history],
        "Linit": _matrix_to_json(seed.l_init.rows),
        "Dinit": [weight_to_json(w) for w in seed.d_init],
    }
    if seed.cartan is not None:
        obj["cartan"] = _matrix_to_json(seed.cartan.a)
    return obj


def seed_from_json(obj) -> QuantumSeed:
    """Structural inverse of seed_to_json.  Semantic validity (compatibility
    and friends) is deliberately not enforced here; the verify checks and
    mutation re-checks own that."""
    if "normalization" in obj:
        raise ValueError(
            "normalized exports are display artifacts, not loadable seeds"
        )
    l_init = LMatrix.from_rows(obj["Linit"])
    lmat = LMatrix.from_rows(obj["L"])
    ex = tuple(int(k) - 1 for k in obj["Kex"])
    bmat = BMatrix.from_rows(obj["B"], ex)
    dvec = tuple(weight_from_json(w) for w in obj["D"])
    d_init = tuple(weight_from_json(w) for w in obj["Dinit"])
    vars_ = tuple(torus_from_json(l_init, v) for v in obj["vars"])
    history = tuple(int(k) - 1 for k in obj["history"])
    cartan = None
    if "cartan" in obj:
        cartan = CartanDatum.from_rows(obj["cartan"])
    return QuantumSeed(
        l_init=l_init,
        d_init=d_init,
        lmat=lmat,
        bmat=bmat,
        dvec=dvec,
        vars=vars_,
        history=history,
        cartan=cartan,
    )


def gls_block(word: WeylWord, g: GLSData, quiver: QuiverArrows) -> dict:
    """The reduced-word combinatorics in display (1-based) convention."""
    r = g.r
    return {
        "word": list(word.to_one_based()),
        "succ": [s + 1 if s < r else r + 1 for s in g.succ],
        "pred": [s + 1 for s in g.pred],  # -1 -> 0 sentinel via +1
        "frozen": [s + 1 for s in g.frozen],
        "quiver": [[s + 1, t + 1, m] for s, t, m in quiver.arrows],
        "lambdaWeights": [weight_to_json(w) for w in g.lambda_wts],
        "d": [weight_to_json(w) for w in g.d],
    }


def report_to_json(report: CheckReport, engine_version: str) -> dict:
    """Deterministic report serialization; timings intentionally excluded."""
    entries = []
    for e in report.entries:
        entries.append({
            "check": e.check,
            "tier": e.tier,
            "sequence": list(e.sequence),
            "status": e.status,
            "witness": e.witness,
        })
    n_fail = sum(1 for e in report.entries if e.status == "fail")
    return {
        "engine": {"name": "qca", "version": engine_version},
        "meta": report.meta,
        "summary": {
            "pass": len(report.entries) - n_fail,
            "fail": n_fail,
        },
        "entries": entries,
    }
