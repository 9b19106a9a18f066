"""The quiver DSL: text parser, byte-stable serializer, JSON export.

Grammar (UTF-8 text, '#' starts a comment):

    quiver <name>              # optional header
    vertices: v1 v2 ...
    arrows:
      a: v1 -> v2
    relations:
      b.a ; 2*d.c - b.a ;     # ';' terminates each relation
    n: 1                       # optional translation data
    tau:
      v3 -> v1                 # tau(v3) = v1

'.' composes right-to-left ("b.a" is b after a), coefficients are integers
or fractions.  Sections may share a line when separated by ';'.  Names must
be identifiers (letters, digits, '_', not starting with a digit); the five
section keywords are reserved.  The serializer emits the canonical form:
sorted monic relations, one arrow per line; parse o serialize is the
identity on canonical text.
"""

import json
import re

from .quiver import (
    Arrow,
    BoundQuiver,
    LinComb,
    Path,
    Quiver,
    QuiverError,
)


class ParseError(QuiverError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


_SECTION = re.compile(r"^(vertices|arrows|relations|tau|n):\s*(.*)$", re.DOTALL)
_ARROW_DECL = re.compile(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_TAU_DECL = re.compile(r"^(\S+)\s*->\s*(\S+)$")
_NAME = re.compile(r"^[A-Za-z_]\w*$")
_VNAME = re.compile(r"^\w+$")
_KEYWORDS = frozenset(["vertices", "arrows", "relations", "tau", "n", "quiver"])


def _strip_comment(line):
    idx = line.find("#")
    return line if idx < 0 else line[:idx]


def _iter_chunks(text):
    """Yield (chunk, terminated, line_number) for each ';'-separated chunk."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        parts = _strip_comment(raw).split(";")
        for i, part in enumerate(parts):
            yield part.strip(), i < len(parts) - 1, ln


def parse_source(text, field):
    """Parse DSL text into (quiver, relations, n, tau) raw pieces.

    n and tau come back as None / {} when the optional sections are absent;
    tau maps vertex names to vertex names.
    """
    name = "quiver"
    section = None
    vertices = []
    arrow_decls = []
    relation_chunks = []
    rel_buffer = []
    rel_line = None
    n_value = None
    tau_decls = []

    def flush_relation():
        nonlocal rel_line
        textual = " ".join(rel_buffer).strip()
        rel_buffer.clear()
        if textual:
            relation_chunks.append((textual, rel_line))
        rel_line = None

    for chunk, terminated, ln in _iter_chunks(text):
        if chunk.startswith("quiver ") or chunk == "quiver":
            if vertices or arrow_decls:
                raise ParseError("header must come first", ln)
            name = chunk[len("quiver"):].strip() or "quiver"
            section = None
            continue
        m = _SECTION.match(chunk)
        if m:
            if rel_buffer:
                flush_relation()
            section = m.group(1)
            chunk = m.group(2).strip()
        if not chunk:
            if section == "relations" and terminated and rel_buffer:
                flush_relation()
            continue
        if section is None:
            raise ParseError(f"text outside any section: {chunk!r}", ln)
        if section == "vertices":
            vertices.extend(chunk.split())
        elif section == "arrows":
            m = _ARROW_DECL.match(chunk)
            if not m:
                raise ParseError(f"bad arrow declaration {chunk!r}", ln)
            arrow_decls.append((m.group(1), m.group(2), m.group(3), ln))
        elif section == "relations":
            if rel_line is None:
                rel_line = ln
            rel_buffer.append(chunk)
            if terminated:
                flush_relation()
        elif section == "n":
            if n_value is not None:
                raise ParseError("duplicate n: value", ln)
            try:
                n_value = int(chunk)
            except ValueError:
                raise ParseError(f"bad n value {chunk!r}", ln) from None
            if n_value < 1:
                raise ParseError(f"n must be >= 1, got {n_value}", ln)
        elif section == "tau":
            m = _TAU_DECL.match(chunk)
            if not m:
                raise ParseError(f"bad tau entry {chunk!r}", ln)
            tau_decls.append((m.group(1), m.group(2), ln))
    if rel_buffer:
        flush_relation()

    if not vertices:
        raise ParseError("no vertices declared")
    seen = set()
    for v in vertices:
        if not _VNAME.match(v) or v in _KEYWORDS:
            raise ParseError(f"bad vertex name {v!r}")
        if v in seen:
            raise ParseError(f"duplicate vertex name {v!r}")
        seen.add(v)

    skeleton = Quiver(vertices, [], name=name)
    arrows = []
    anames = set()
    for nm, s, t, ln in arrow_decls:
        if not _NAME.match(nm) or nm in _KEYWORDS:
            raise ParseError(f"bad arrow name {nm!r}", ln)
        if nm in anames:
            raise ParseError(f"duplicate arrow name {nm!r}", ln)
        anames.add(nm)
        for v in (s, t):
            if v not in skeleton.vertex_index:
                raise ParseError(f"unknown vertex {v!r}", ln)
        arrows.append(Arrow(nm, skeleton.vertex_index[s], skeleton.vertex_index[t]))
    q = Quiver(vertices, arrows, name=name)

    relations = [
        _parse_relation(q, field, textual, ln) for textual, ln in relation_chunks
    ]
    tau = {}
    for a, b, ln in tau_decls:
        for v in (a, b):
            if v not in q.vertex_index:
                raise ParseError(f"unknown vertex in tau entry: {v!r}", ln)
        if a in tau:
            raise ParseError(f"duplicate tau entry for {a!r}", ln)
        tau[a] = b
    return q, relations, n_value, tau


def parse_quiver(text, field):
    """Parse DSL text into a BoundQuiver (translation sections ignored)."""
    q, relations, _, _ = parse_source(text, field)
    return BoundQuiver(q, relations, field)


_WS = re.compile(r"\s*")
_SIGN = re.compile(r"[+-]")
_COEFF = re.compile(r"(\d+(?:/\d+)?)\s*\*?")
_PATHTOK = re.compile(r"[A-Za-z_]\w*(?:\.[A-Za-z_]\w*)*")


def _parse_relation(q, field, text, line):
    terms = []
    pos = _WS.match(text, 0).end()
    while pos < len(text):
        negate = False
        m = _SIGN.match(text, pos)
        if m:
            negate = m.group() == "-"
            pos = _WS.match(text, m.end()).end()
        elif terms:
            raise ParseError(
                f"expected '+' or '-' before {text[pos:pos + 12]!r}", line
            )
        coeff = field.one
        m = _COEFF.match(text, pos)
        if m:
            coeff = field.coerce(m.group(1))
            pos = _WS.match(text, m.end()).end()
        m = _PATHTOK.match(text, pos)
        if not m:
            raise ParseError(f"expected a path near {text[pos:pos + 12]!r}", line)
        path = _parse_path(q, m.group(), line)
        pos = _WS.match(text, m.end()).end()
        if negate:
            coeff = field.neg(coeff)
        terms.append((path, coeff))
    if not terms:
        raise ParseError("empty relation", line)
    try:
        return LinComb(field, terms)
    except QuiverError as e:
        raise ParseError(str(e), line) from None


def _parse_path(q, text, line):
    names = text.split(".")
    try:
        idxs = [q.arrow_index[nm] for nm in names]
    except KeyError as e:
        raise ParseError(f"unknown arrow {e.args[0]!r}", line) from None
    idxs.reverse()  # DSL writes algebra order; Path stores traversal order
    arrows = [q.arrows[i] for i in idxs]
    for a, b in zip(arrows, arrows[1:]):
        if a.target != b.source:
            raise ParseError(f"path {text!r} does not compose", line)
    return Path(arrows[0].source, tuple(idxs), arrows[-1].target)


def _format_term(q, field, path, coeff, leading):
    names = ".".join(q.arrows[ai].name for ai in reversed(path.arrows))
    if coeff == field.one:
        sgn, core = "+", names
    elif coeff == field.neg(field.one):
        sgn, core = "-", names
    else:
        s = field.format(coeff)
        sgn = "-" if s.startswith("-") else "+"
        core = f"{s.lstrip('-')}*{names}"
    if leading:
        return core if sgn == "+" else f"-{core}"
    return f"{sgn} {core}"


def serialize_quiver(bq, n=None, tau=None):
    """Canonical DSL text for a bound quiver (byte-stable)."""
    q = bq.quiver
    lines = [f"quiver {q.name}"]
    lines.append("vertices: " + " ".join(q.vertices))
    lines.append("arrows:")
    for a in q.arrows:
        lines.append(f"  {a.name}: {q.vertices[a.source]} -> {q.vertices[a.target]}")
    lines.append("relations:")
    for r in bq.relations:
        parts = [
            _format_term(q, bq.field, p, c, leading=(k == 0))
            for k, (p, c) in enumerate(r.terms)
        ]
        lines.append("  " + " ".join(parts) + " ;")
    if n is not None:
        lines.append(f"n: {n}")
    if tau:
        lines.append("tau:")
        for v in sorted(tau, key=lambda x: q.vertex_index[x]):
            lines.append(f"  {v} -> {tau[v]}")
    return "\n".join(lines) + "\n"


def quiver_to_json(bq, n=None, tau=None):
    q = bq.quiver
    doc = {
        "name": q.name,
        "vertices": list(q.vertices),
        "arrows": [
            {"name": a.name, "source": a.source, "target": a.target}
            for a in q.arrows
        ],
        "relations": [
            {
                "source": r.source,
                "target": r.target,
                "degree": r.degree,
                "terms": [
                    {
                        "coeff": bq.field.format(c),
                        "path": [q.arrows[ai].name for ai in reversed(p.arrows)],
                    }
                    for p, c in r.terms
                ],
            }
            for r in bq.relations
        ],
    }
    if n is not None:
        doc["n"] = n
    if tau:
        doc["tau"] = {v: tau[v] for v in sorted(tau, key=lambda x: q.vertex_index[x])}
    return json.dumps(doc, indent=2) + "\n"


def quiver_from_json(text, field):
    doc = json.loads(text)
    q = Quiver(
        doc["vertices"],
        [Arrow(a["name"], a["source"], a["target"]) for a in doc["arrows"]],
        name=doc.get("name", "quiver"),
    )
    relations = []
    for rel in doc.get("relations", []):
        terms = []
        for term in rel["terms"]:
            idxs = [q.arrow_index[nm] for nm in term["path"]]
            idxs.reverse()
            arrows = [q.arrows[i] for i in idxs]
            p = Path(arrows[0].source, tuple(idxs), arrows[-1].target)
            terms.append((p, field.coerce(term["coeff"])))
        relations.append(LinComb(field, terms))
    return BoundQuiver(q, relations, field)
