"""Command-line front end tying the pipeline together.

Every subcommand reads a quiver file in the DSL (optionally carrying the
`n:` and `tau:` translation sections), runs one stage, and emits a
deterministic report: plain text by default, JSON with --json, DOT with
--dot where a quiver-shaped artifact is produced.  Exit codes follow the
CI contract: 0 for success or a verified property, 1 for a verification
failure (the mismatch report is still emitted), 2 for usage or parse
errors.
"""

import argparse
import json
import random
import sys

from .dsl import (
    ParseError,
    parse_source,
    quiver_to_json,
    serialize_quiver,
)
from .fields import field_from_spec
from .graded import CutoffExceeded, GradedAlgebraView, is_n_properly_graded
from .koszul import koszul_complex, koszul_type_check, verify_n_almost_split
from .qdual import dual_pair_check, quadratic_dual
from .quiver import BoundQuiver, QuiverError
from .reps import (
    closure,
    compare_with_prediction,
    iyama_check,
    n_rep_infinite_probe,
)
from .translation import (
    TranslationStructure,
    derive_translation,
    hammock,
    is_tau_mature,
    truncate,
)
from .zq import (
    extract_tau_slice,
    preprojective_presentation,
    returning_arrow_quiver,
    zq_window,
)

OK = 0
VERIFY_FAIL = 1
USAGE = 2


class SessionConfig:
    """Resolved global options: ground field, degree cutoff, output
    format, and the seed for randomized certificates."""

    def __init__(self, field_spec="rat", cutoff=None, as_json=False,
                 as_dot=False, seed=0):
        self.field = field_from_spec(field_spec)
        if cutoff is not None and cutoff <= 0:
            raise ValueError("cutoff must be positive")
        self.cutoff = cutoff
        self.as_json = as_json
        self.as_dot = as_dot
        self.seed = seed
        self.rng = random.Random(seed)


def _load(path, cfg):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    q, relations, n, tau = parse_source(text, cfg.field)
    return BoundQuiver(q, relations, cfg.field), n, tau


def _structure(bq, file_n, file_tau, arg_n, cfg):
    """TranslationStructure from the file's tau section when present,
    otherwise derived from the algebra (needs n from file or --n)."""
    n = arg_n if arg_n is not None else file_n
    if n is None:
        raise QuiverError("translation parameter unknown: add an n: section or pass --n")
    kwargs = {} if cfg.cutoff is None else {"cutoff": cfg.cutoff}
    if file_tau:
        return TranslationStructure(bq, n, file_tau, **kwargs)
    return derive_translation(bq, n, **kwargs)


def emit_json(bq, n=None, tau=None):
    return quiver_to_json(bq, n=n, tau=tau)


def emit_dot(bq, coords=None, returning=(), label=None):
    """DOT text for a bound quiver.

    coords maps vertex index -> (orbit label, slice t); when present the
    nodes are labeled with their coordinates and ranked by slice.
    Arrow indices in `returning` are styled like the paper's returning
    arrows."""
    q = bq.quiver
    lines = ["digraph %s {" % json.dumps(label or q.name or "quiver")]
    lines.append("  rankdir=LR;")
    lines.append("  node [shape=ellipse];")
    for v, name in enumerate(q.vertices):
        if coords and v in coords:
            u, t = coords[v]
            lines.append(
                '  %s [label="%s (%s,%d)"];'
                % (json.dumps(name), name, u, t)
            )
        else:
            lines.append("  %s;" % json.dumps(name))
    if coords:
        by_t = {}
        for v, (_, t) in coords.items():
            by_t.setdefault(t, []).append(v)
        for t in sorted(by_t):
            row = " ".join(
                json.dumps(q.vertices[v]) + ";" for v in sorted(by_t[t])
            )
            lines.append("  { rank=same; %s }" % row)
    returning = set(returning)
    for ai, a in enumerate(q.arrows):
        style = ' [label="%s", color=red, style=dashed]' % a.name \
            if ai in returning else ' [label="%s"]' % a.name
        lines.append(
            "  %s -> %s%s;"
            % (json.dumps(q.vertices[a.source]), json.dumps(q.vertices[a.target]), style)
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _print(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report(doc, cfg, text_lines):
    if cfg.as_json:
        _print(json.dumps(doc, sort_keys=True, indent=2, default=str))
    else:
        for line in text_lines:
            _print(line)


def _parse_slices(spec):
    a, _, b = spec.partition("..")
    return int(a), int(b)


def _parse_choice(spec):
    out = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, val = part.partition(":")
        if not val:
            raise ValueError("choice entries look like vertex:slice")
        out[key.strip()] = int(val)
    return out


# -- subcommand bodies -----------------------------------------------------


def _cmd_parse(args, cfg):
    bq, n, tau = _load(args.file, cfg)
    if cfg.as_dot:
        _print(emit_dot(bq))
    elif cfg.as_json:
        _print(emit_json(bq, n=n, tau=tau))
    else:
        _print(serialize_quiver(bq, n=n, tau=tau))
    return OK


def _cmd_dims(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    view = _view(bq, cfg)
    q = bq.quiver
    srcs = [q._vid(args.src)] if args.src else range(len(q.vertices))
    dsts = [q._vid(args.dst)] if args.dst else range(len(q.vertices))
    entries = []
    for i in srcs:
        for j in dsts:
            d = view.dim(args.deg, i, j)
            if d:
                entries.append(
                    {"from": q.vertices[i], "to": q.vertices[j], "dim": d}
                )
    doc = {"degree": args.deg, "entries": entries,
           "total": sum(e["dim"] for e in entries)}
    _report(doc, cfg, [
        "degree %d" % args.deg,
    ] + [
        "  %s -> %s: %d" % (e["from"], e["to"], e["dim"]) for e in entries
    ] + [
        "total: %d" % doc["total"],
    ])
    return OK


def _view(bq, cfg):
    if cfg.cutoff is None:
        return GradedAlgebraView(bq)
    return GradedAlgebraView(bq, cfg.cutoff)


def _cmd_qdual(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    dual = quadratic_dual(bq).bound_quiver
    if cfg.as_dot:
        _print(emit_dot(dual))
    elif cfg.as_json:
        _print(emit_json(dual))
    else:
        _print(serialize_quiver(dual))
    if args.verify:
        rep = dual_pair_check(bq)
        bad = sorted(k for k, ok in rep.items() if not ok)
        if bad:
            sys.stderr.write("dual pair check failed at %r\n" % (bad[0],))
            return VERIFY_FAIL
    return OK


def _cmd_trivext(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    view = _view(bq, cfg)
    twist = "sign" if args.twist == "sign" else None
    raq = returning_arrow_quiver(view, twist=twist)
    out = raq.bound_quiver
    if cfg.as_dot:
        q = out.quiver
        beta = {
            ai for ai, a in enumerate(q.arrows) if a.name in set(raq.beta_names)
        }
        _print(emit_dot(out, returning=beta))
    elif cfg.as_json:
        _print(emit_json(out))
    else:
        _print(serialize_quiver(out))
    if not raq.quadratic:
        sys.stderr.write("note: trivial extension is not quadratic\n")
    return OK


def _cmd_prepro(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    out = preprojective_presentation(bq, args.n)
    if cfg.as_dot:
        _print(emit_dot(out))
    elif cfg.as_json:
        _print(emit_json(out))
    else:
        _print(serialize_quiver(out))
    return OK


def _window(args, cfg, bq):
    a, b = _parse_slices(args.slices)
    return zq_window(bq, args.n, a, b)


def _cmd_zq(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    W = _window(args, cfg, bq)
    wq = W.quiver
    tau_names = {
        wq.vertices[src]: wq.vertices[dst] for src, dst in W.tau.items()
    }
    if cfg.as_dot:
        returning = {
            ai for ai in range(len(wq.arrows))
            if W.arrow_origin.get(ai, ("",))[0] == "returning"
        }
        coords = {w: (bq.quiver.vertices[u], t) for w, (u, t) in W.coord_of.items()}
        _print(emit_dot(W.bound_quiver, coords=coords, returning=returning))
    elif cfg.as_json:
        _print(emit_json(W.bound_quiver, n=W.n, tau=tau_names))
    else:
        _print(serialize_quiver(W.bound_quiver, n=W.n, tau=tau_names))
    return OK


def _cmd_slice(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    W = _window(args, cfg, bq)
    choice = _parse_choice(args.choice)
    slice_bq, report = extract_tau_slice(W, choice)
    if cfg.as_json:
        doc = {"report": report, "quiver": json.loads(emit_json(slice_bq))}
        _print(json.dumps(doc, sort_keys=True, indent=2, default=str))
    else:
        _print(serialize_quiver(slice_bq))
        for key in sorted(report):
            _print("%s: %s" % (key, report[key]))
    return OK if report.get("ok") else VERIFY_FAIL


def _cmd_hammock(args, cfg):
    bq, file_n, file_tau = _load(args.file, cfg)
    T = _structure(bq, file_n, file_tau, args.n, cfg)
    h = hammock(T, args.vertex, args.dir)
    q = T.quiver
    doc = {
        "endpoint": args.vertex,
        "direction": args.dir,
        "levels": [
            {
                "level": t,
                "vertices": [
                    {"vertex": q.vertices[j], "mu": mu}
                    for (j, lt), mu in sorted(h.vertices.items())
                    if lt == t
                ],
            }
            for t in range(T.n + 2)
        ],
        "arrow_count": len(h.arrows),
    }
    lines = ["hammock %s at %s" % (args.dir, args.vertex)]
    for lev in doc["levels"]:
        row = " ".join(
            "%s:%d" % (v["vertex"], v["mu"]) for v in lev["vertices"]
        )
        lines.append("  level %d: %s" % (lev["level"], row or "-"))
    lines.append("arrows: %d" % len(h.arrows))
    _report(doc, cfg, lines)
    return OK


def _cmd_mature(args, cfg):
    bq, file_n, file_tau = _load(args.file, cfg)
    T = _structure(bq, file_n, file_tau, args.n, cfg)
    vertices = [v.strip() for v in args.truncation.split(",") if v.strip()]
    truncate(T, vertices)  # validates convexity loudly
    qp = None if args.q == "inf" else int(args.q)
    ok, report = is_tau_mature(T, vertices, qp)
    doc = {"ok": ok}
    doc.update(report)
    _report(doc, cfg, [
        "tau-mature: %s" % ok,
        "q: %s" % report["q"],
        "witnesses: %s" % (report["witnesses"] or "-"),
    ])
    return OK if ok else VERIFY_FAIL


def _cmd_koszul(args, cfg):
    bq, file_n, file_tau = _load(args.file, cfg)
    T = _structure(bq, file_n, file_tau, args.n, cfg)
    cx = koszul_complex(T, args.vertex)
    q = T.quiver
    ok, witnesses = cx.composites_zero()
    doc = {
        "anchor": args.vertex,
        "terms": [
            [q.vertices[v] for v in step] for step in cx.steps
        ],
        "composites_zero": ok,
    }
    lines = ["complex at %s" % args.vertex]
    for t, step in enumerate(doc["terms"]):
        lines.append("  term %d: %s" % (t, " + ".join(step) or "0"))
    lines.append("composites zero: %s" % ok)
    _report(doc, cfg, lines)
    return OK if ok else VERIFY_FAIL


def _cmd_nass(args, cfg):
    bq, file_n, file_tau = _load(args.file, cfg)
    T = _structure(bq, file_n, file_tau, args.n, cfg)
    complexes = None
    if args.vertex is not None:
        complexes = [koszul_complex(T, args.vertex)]
    test_vertices = None
    if args.test_set and args.test_set != "interior":
        if args.test_set == "all":
            test_vertices = list(range(len(T.quiver.vertices)))
        else:
            test_vertices = [v.strip() for v in args.test_set.split(",") if v.strip()]
    ok, report = verify_n_almost_split(
        T, complexes=complexes, test_vertices=test_vertices
    )
    doc = {"ok": ok, "report": {str(k): v for k, v in sorted(report.items())}}
    lines = ["n-almost split: %s" % ok]
    for k, v in sorted(report.items()):
        lines.append("  %s: %s" % (k, v))
    _report(doc, cfg, lines)
    return OK if ok else VERIFY_FAIL


def _cmd_ktype(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    steps = args.steps if args.steps is not None else 6
    rep = koszul_type_check(_view(bq, cfg), steps=steps)
    doc = {
        "pure_through": rep.pure_through,
        "q_hat": rep.q_hat,
        "per_simple": {v: rep.per_simple[v] for v in sorted(rep.per_simple)},
    }
    lines = ["pure through: %s" % rep.pure_through, "q-hat: %s" % rep.q_hat]
    for name in sorted(doc["per_simple"]):
        lines.append("  %s: %s" % (name, doc["per_simple"][name]))
    _report(doc, cfg, lines)
    return OK


def _cmd_closure(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    C = closure(bq, args.n, args.dir, args.budget)
    q = bq.quiver
    doc = {
        "direction": C.direction,
        "n": C.n,
        "terminated": C.terminated,
        "members": [
            {"orbit": u, "t": t, "dims": C.reps[(u, t)].dims}
            for (u, t) in C.labels
        ],
        "ar_arrows": [
            {"from": list(x), "to": list(y), "count": d}
            for (x, y), d in sorted(C.ar_arrows.items())
        ],
        "defects": C.defects,
    }
    if cfg.as_dot:
        lines = ['digraph closure {', "  rankdir=LR;"]
        for (u, t) in C.labels:
            lines.append('  "%s@%d" [label="%s (t=%d)"];' % (u, t, u, t))
        by_t = {}
        for (u, t) in C.labels:
            by_t.setdefault(t, []).append((u, t))
        for t in sorted(by_t):
            row = " ".join('"%s@%d";' % lab for lab in sorted(by_t[t]))
            lines.append("  { rank=same; %s }" % row)
        for (x, y), d in sorted(C.ar_arrows.items()):
            lines.append(
                '  "%s@%d" -> "%s@%d" [label="%d"];' % (x + y + (d,))
            )
        lines.append("}")
        _print("\n".join(lines))
    else:
        _report(doc, cfg, [
            "closure %s, n=%d: %d members, terminated=%s"
            % (C.direction, C.n, len(C.labels), C.terminated),
        ] + [
            "  (%s, %d) dims %s" % (u, t, tuple(C.reps[(u, t)].dims))
            for (u, t) in C.labels
        ] + [
            "  arrow (%s,%d) -> (%s,%d) x%d" % (x + y + (d,))
            for (x, y), d in sorted(C.ar_arrows.items())
        ])
    return OK if not C.defects else VERIFY_FAIL


def _cmd_compare(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    C = closure(bq, args.n, "minus", args.budget)
    base = quadratic_dual(bq).bound_quiver
    rep = compare_with_prediction(C, base, args.n)
    doc = {k: rep[k] for k in ("vertices", "arrows", "translation", "mesh")}
    doc["ok"] = rep["ok"]
    _report(doc, cfg, [
        "vertices: %s" % (rep["vertices"][0],),
        "arrows: %s" % (rep["arrows"][0],),
        "translation: %s" % (rep["translation"][0],),
        "mesh: %s" % (rep["mesh"][0],),
        "ok: %s" % rep["ok"],
    ])
    return OK if rep["ok"] else VERIFY_FAIL


def _cmd_iyama(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    verdict, table = iyama_check(bq, args.l, args.lp)
    doc = {"l": args.l, "lp": args.lp, "verdict": verdict, "fd_table": table}
    _report(doc, cfg, [
        "fd I^%d = %d" % (t, fd) for t, fd in enumerate(table)
    ] + ["(%d,%d)-condition: %s" % (args.l, args.lp, verdict)])
    return OK if verdict else VERIFY_FAIL


def _cmd_probe(args, cfg):
    bq, _, _ = _load(args.file, cfg)
    out = n_rep_infinite_probe(bq, args.n, args.budget)
    doc = {
        "probe_positive": out["probe_positive"],
        "reason": out["reason"],
        "note": "module-level probe, not a proof",
    }
    _report(doc, cfg, [
        "probe positive: %s" % out["probe_positive"],
        "reason: %s" % (out["reason"] or "-"),
        "note: module-level probe, not a proof",
    ])
    return OK if out["probe_positive"] else VERIFY_FAIL


# -- argument wiring -------------------------------------------------------


def _add_globals(parser, trailing):
    """The global flags; on subparsers they default to SUPPRESS so a
    trailing flag overrides the front position but an absent one does not
    clobber it."""
    kw = {"default": argparse.SUPPRESS} if trailing else {}
    parser.add_argument("--field", help="rat or fp:<p>",
                        **(kw if trailing else {"default": "rat"}))
    parser.add_argument("--cutoff", type=int,
                        help="degree cutoff for graded scans",
                        **(kw if trailing else {"default": None}))
    parser.add_argument("--json", action="store_true", help="JSON output",
                        **(kw if trailing else {}))
    parser.add_argument("--dot", action="store_true", help="DOT output",
                        **(kw if trailing else {}))
    parser.add_argument("--seed", type=int,
                        help="seed for randomized certificates",
                        **(kw if trailing else {"default": 0}))


def _build_parser():
    top = argparse.ArgumentParser(
        prog="nquiver",
        description="bound quivers, quadratic duals, translation windows, "
        "and module-category checks",
    )
    _add_globals(top, trailing=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, trailing=True)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.add_argument("file", help="quiver file in the DSL")
        p.set_defaults(fn=fn)
        return p

    add("parse", _cmd_parse, help="validate and canonicalize a quiver file")
    p = add("dims", _cmd_dims, help="graded dimension table")
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--from", dest="src", default=None)
    p.add_argument("--to", dest="dst", default=None)
    p = add("qdual", _cmd_qdual, help="quadratic dual presentation")
    p.add_argument("--verify", action="store_true")
    p = add("trivext", _cmd_trivext, help="trivial-extension presentation")
    p.add_argument("--twist", choices=["sign", "none"], default="none")
    p = add("prepro", _cmd_prepro, help="higher preprojective presentation")
    p.add_argument("--n", type=int, required=True)
    p = add("zq", _cmd_zq, help="translation-quiver window")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--slices", required=True, help="a..b")
    p = add("slice", _cmd_slice, help="extract and verify a tau-slice")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--slices", required=True, help="a..b")
    p.add_argument("--choice", required=True, help="vertex:t,vertex:t,...")
    p = add("hammock", _cmd_hammock, help="level sets around a vertex")
    p.add_argument("--vertex", required=True)
    p.add_argument("--dir", choices=["ending", "starting"], default="ending")
    p.add_argument("--n", type=int, default=None)
    p = add("mature", _cmd_mature, help="tau-maturity of a truncation")
    p.add_argument("--truncation", required=True, help="v1,v2,...")
    p.add_argument("--q", required=True, help="int or inf")
    p.add_argument("--n", type=int, default=None)
    p = add("koszul", _cmd_koszul, help="projective complex at a vertex")
    p.add_argument("--vertex", required=True)
    p.add_argument("--n", type=int, default=None)
    p = add("nass", _cmd_nass, help="n-almost split exactness audit")
    p.add_argument("--vertex", default=None)
    p.add_argument("--test-set", dest="test_set", default="interior",
                   help="interior | all | v1,v2,...")
    p.add_argument("--n", type=int, default=None)
    p = add("ktype", _cmd_ktype, help="resolution purity scan")
    p.add_argument("--steps", type=int, default=None)
    p = add("closure", _cmd_closure, help="tau_n closure and AR quiver")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dir", choices=["plus", "minus"], default="minus")
    p.add_argument("--budget", type=int, default=24)
    p = add("compare", _cmd_compare, help="closure vs window prediction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=24)
    p = add("iyama", _cmd_iyama, help="finitistic injective-term check")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--lp", type=int, required=True)
    p = add("probe", _cmd_probe, help="n-representation-infinite probe")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=6)
    return top


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    try:
        cfg = SessionConfig(args.field, args.cutoff, args.json, args.dot,
                            args.seed)
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return USAGE
    try:
        return args.fn(args, cfg)
    except (ParseError, FileNotFoundError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return USAGE
    except (QuiverError, CutoffExceeded, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return USAGE
    except KeyError as exc:
        sys.stderr.write("error: unknown key %s\n" % exc)
        return USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
