"""Command line front-end: ``qsym validate|hilbert|relations|gram|check <spec>``.

Human-readable tables go to stdout; ``--out PATH`` writes the JSON report.
Exit status: 0 all good, 1 a check failed, 2 bad spec or usage, 3 stopped
by the resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .cotensor import symmetrizer, wedge_fact
from .couple import validate_couple_pairing, validate_hopf_bimodule
from .hopf import validate_hopf
from .pairing import (default_reduced, format_combination, format_key, gram_matrix,
                      gram_matrix_T_vs_Cot, relations, self_dual_check, tensor_cot_check,
                      verify_induced_pairing, verify_radicals)
from .specfile import SpecError, loads
from .tensor import ResourceLimitError

EXIT_OK, EXIT_FAIL, EXIT_SPEC, EXIT_CAP = 0, 1, 2, 3


class Run:
    """Collects the machine report and the human table for one invocation."""

    def __init__(self, args, spec):
        self.args = args
        self.spec = spec
        self.lines = []
        self.timing = {}
        self.status = EXIT_OK
        self.report = {
            "command": {"name": args.command, "spec": args.spec, "max_degree": self.max_degree,
                        "degree": args.degree, "cap": self.cap},
            "validation": None, "hilbert": None, "relations": None, "gram": None,
            "checks": None, "timing": {"enabled": bool(args.timing)},
        }

    @property
    def max_degree(self):
        return self.args.max_degree if self.args.max_degree is not None else self.spec.max_degree

    @property
    def cap(self):
        return self.args.cap if self.args.cap is not None else self.spec.cap

    def say(self, line=""):
        self.lines.append(line)

    def fail(self, code=EXIT_FAIL):
        self.status = max(self.status, code)

    def timed(self, name, fn):
        t = time.perf_counter()
        out = fn()
        self.timing[name] = round(time.perf_counter() - t, 6)
        return out

    def finish(self):
        if self.args.timing:
            self.report["timing"]["seconds"] = self.timing
        self.report["exit_status"] = self.status
        return self.report


def _table(headers, rows):
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]


def _section_report(run, title, rep):
    run.say(f"== {title}: {'pass' if rep.ok else 'FAIL'}")
    for c in rep.checks:
        extra = f"  [{c.detail}]" if c.detail else ""
        wit = f"  witness={c.witness!r}" if c.witness is not None else ""
        run.say(f"   {c.status:>7}  {c.name}{extra}{wit}")
    if not rep.ok:
        run.fail()
    return rep.to_dict()


# ---------------------------------------------------------------------------
# commands

def cmd_validate(run):
    s = run.spec
    c, b = s.couple, s.validation_bound
    out = {}
    if hasattr(c.hopf, "antipode_matrix"):
        out["hopf"] = _section_report(run, "Hopf algebra axioms",
                                      run.timed("hopf", lambda: validate_hopf(c.hopf, b)))
    else:
        run.say("== Hopf algebra axioms: skipped (group algebra, valid by construction)")
        out["hopf"] = {"title": "Hopf algebra axioms", "ok": True, "skipped": True, "checks": []}
    out["bimodule"] = _section_report(run, "Hopf bimodule axioms",
                                      run.timed("bimodule", lambda: validate_hopf_bimodule(c, b)))
    if s.pairing is not None:
        out["pairing"] = _section_report(run, "couple pairing axioms",
                                         run.timed("pairing", lambda: validate_couple_pairing(s.pairing, b)))
    run.report["validation"] = out


def _hilbert_degree(text, n, cap, with_gram):
    spec = loads(text)
    c, p = spec.couple, spec.pairing
    red = default_reduced(c)
    try:
        om = symmetrizer(c, n, reduced=red, cap=cap).rank
        gr = gram_matrix(p, n, red, cap).rank if with_gram else None
    except ResourceLimitError:
        return n, None, None
    return n, om, gr


def _per_degree(run, fn, degrees, *extra):
    text = run.spec.text
    if run.args.parallel and len(degrees) > 1:
        workers = min(len(degrees), os.cpu_count() or 1)
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(fn, text, n, *extra) for n in degrees]
            return [f.result() for f in futs]
    return [fn(text, n, *extra) for n in degrees]


def cmd_hilbert(run):
    s = run.spec
    D = run.max_degree
    with_gram = s.pairing is not None
    mode = "reduced-modulo-H" if default_reduced(s.couple) else "full"
    res = run.timed("hilbert", lambda: _per_degree(run, _hilbert_degree, list(range(D + 1)),
                                                    run.cap, with_gram))
    rows, truncated = [], None
    for n, om, gr in res:
        if om is None:
            truncated = n
            break
        rows.append({"n": n, "omega": om, "gram": gr, "agree": gr is None or gr == om})
    run.say(f"Hilbert series of S_H(M) ({mode}), degrees 0..{D}")
    head = ["n", "dim via Omega"] + (["dim via Gram", "agree"] if with_gram else [])
    body = [[r["n"], r["omega"]] + ([r["gram"], "yes" if r["agree"] else "NO"] if with_gram else [])
            for r in rows]
    for line in _table(head, body):
        run.say(line)
    if truncated is not None:
        run.say(f"truncated: degree {truncated} exceeds the resource cap {run.cap}")
        run.fail(EXIT_CAP)
    agree = all(r["agree"] for r in rows)
    if not agree:
        run.fail()
    run.report["hilbert"] = {"mode": mode, "max_degree": D, "rows": rows,
                             "dims": [r["omega"] for r in rows], "agree": agree,
                             "truncated_at": truncated}


def cmd_relations(run):
    s = run.spec
    n = run.args.degree if run.args.degree is not None else run.max_degree
    c = s.couple
    rels = run.timed("relations", lambda: relations(c, n, cap=run.cap))
    items = []
    for r in rels:
        items.append({"text": format_combination(c, r, n),
                      "coefficients": [[format_key(c, k, n), s.field.to_json(v)]
                                       for k, v in sorted(r.items(), key=lambda kv: repr(kv[0]))]})
    run.say(f"relations in degree {n}: {len(items)}")
    for it in items:
        run.say(f"  {it['text']}")
    if not items:
        run.say("  none")
    run.report["relations"] = {"degree": n, "count": len(items), "relations": items,
                               "mode": "reduced-modulo-H" if default_reduced(c) else "full"}


def _gram_degree(text, n, cap):
    spec = loads(text)
    c, p = spec.couple, spec.pairing
    F = spec.field
    g = gram_matrix(p, n, cap=cap)
    tc = gram_matrix_T_vs_Cot(p, n, cap=cap)
    return {"n": n,
            "rows": [format_key(c, k, n) for k in g.rows],
            "cols": [format_key(p.right, k, n) for k in g.cols],
            "matrix": [[F.to_json(x) for x in row] for row in g.to_lists()],
            "rank": g.rank, "tensor_cot_rank": tc.rank, "cot_dim": tc.cotensor.dim}


def cmd_gram(run):
    s = run.spec
    if s.pairing is None:
        raise SpecError("$.pairing", "gram needs a pairing")
    degrees = [run.args.degree] if run.args.degree is not None else list(range(run.max_degree + 1))
    blocks = run.timed("gram", lambda: _per_degree(run, _gram_degree, degrees, run.cap))
    for b in blocks:
        run.say(f"degree {b['n']}: Gram {len(b['rows'])}x{len(b['cols'])}, rank {b['rank']}; "
                f"T x Cot rank {b['tensor_cot_rank']} of {b['cot_dim']}")
        for line in _table([""] + b["cols"], [[r] + row for r, row in zip(b["rows"], b["matrix"])]):
            run.say("  " + line)
    run.report["gram"] = {"degrees": blocks}


def cmd_check(run):
    s = run.spec
    if s.pairing is None:
        raise SpecError("$.pairing", "check needs a pairing")
    p, c, D = s.pairing, s.couple, run.max_degree
    b = s.validation_bound
    out = {}
    out["induced_pairing"] = _section_report(run, "induced S x S pairing (well-defined, non-degenerate, Hopf)",
                                       run.timed("induced_pairing", lambda: verify_induced_pairing(p, D, degree_bound=b)))
    out["radicals"] = _section_report(run, "radicals equal symmetrizer kernels",
                                       run.timed("radicals", lambda: verify_radicals(p, D, degree_bound=b)))
    if p.left is p.right:
        out["self_dual"] = _section_report(run, "self-duality",
                                           run.timed("self_dual", lambda: self_dual_check(c, p, D, degree_bound=b)))
    out["tensor_cot"] = _section_report(run, "T x Cot pairing",
                                        run.timed("tensor_cot", lambda: tensor_cot_check(p, D)))
    rows = run.timed("wedge", lambda: wedge_fact(c, D))
    ok = all(r[3] for r in rows)
    run.say(f"== wedge(H, H) = H + M: {'pass' if ok else 'FAIL'}")
    for line in _table(["n", "dim wedge", "dim H+M", "equal"],
                       [[n, a, e, "yes" if q else "NO"] for n, a, e, q in rows]):
        run.say("   " + line)
    if not ok:
        run.fail()
    out["wedge"] = {"ok": ok, "rows": [{"n": n, "dim": a, "expected": e, "equal": q} for n, a, e, q in rows]}
    run.report["checks"] = out


COMMANDS = {"validate": cmd_validate, "hilbert": cmd_hilbert, "relations": cmd_relations,
            "gram": cmd_gram, "check": cmd_check}


def build_parser():
    ap = argparse.ArgumentParser(prog="qsym", description="Quantum symmetric algebras from couple specs.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("spec", help="JSON couple-spec file")
    ap.add_argument("--max-degree", type=int, dest="max_degree")
    ap.add_argument("--degree", type=int)
    ap.add_argument("--out", help="write the JSON report here")
    ap.add_argument("--cap", type=int, help="largest raw component dimension (default 100000)")
    ap.add_argument("--parallel", action="store_true", help="spread degrees over worker processes")
    ap.add_argument("--timing", action="store_true", help="record wall-clock times in the report")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    for name in ("max_degree", "degree", "cap"):
        v = getattr(args, name)
        if v is not None and v < 0:
            print(f"qsym: --{name.replace('_', '-')} must be >= 0", file=sys.stderr)
            return EXIT_SPEC
    try:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"qsym: cannot read {args.spec}: {e.strerror}", file=sys.stderr)
        return EXIT_SPEC
    try:
        spec = loads(text)
        run = Run(args, spec)
        COMMANDS[args.command](run)
    except SpecError as e:
        print(f"qsym: {args.spec}: {e}", file=sys.stderr)
        return EXIT_SPEC
    except ResourceLimitError as e:
        print(f"qsym: {e}", file=sys.stderr)
        return EXIT_CAP
    report = run.finish()
    print("\n".join(run.lines))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
    return run.status


if __name__ == "__main__":
    sys.exit(main())
