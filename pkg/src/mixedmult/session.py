"""Session files: a ring, named ideals, a module, candidates and types.

    ring Q[x,y];
    ideal J = x, y;
    ideal I1 = x;
    module N = 0;
    candidate c = (x : I1), (y : J);
    type (1; 0);

``J`` is the m-primary ideal; ``I1..Id`` form the family in index order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ideal import Ideal, IdealFamily
from .length import ModuleSpec
from .poly import PolyRing, PolySyntaxError, Polynomial, format_monomial, format_polynomial
from .sequences import JointReductionCandidate

KEYWORDS = ("ring", "ideal", "module", "candidate", "type")


class SessionError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: {message}")


@dataclass
class Session:
    ring: PolyRing
    ideals: dict = field(default_factory=dict)
    N: Ideal | None = None
    candidates: dict = field(default_factory=dict)
    types: list = field(default_factory=list)  # (k, k0)

    @property
    def members(self) -> tuple:
        d = sum(1 for n in self.ideals if n != "J")
        return tuple(self.ideals[f"I{i}"] for i in range(1, d + 1))

    def family(self) -> IdealFamily:
        return IdealFamily(self.ideals["J"], self.members)

    def module(self) -> ModuleSpec:
        return ModuleSpec(self.N if self.N is not None else Ideal.zero(self.ring))


def _linecol(text: str, pos: int) -> tuple:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


_NEXT_STMT = re.compile(r"\n[ \t]*(" + "|".join(KEYWORDS) + r")\b")


def _statement_end(text: str, pos: int) -> int:
    """Index of the first ';' outside parentheses at or after ``pos``, or -1."""
    depth = 0
    for i in range(pos, len(text)):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == ";" and depth <= 0:
            return i
    return -1


def _statements(text: str):
    """Yield (keyword, body, body_start) for each statement."""
    pos = 0
    n = len(text)
    while True:
        while pos < n:
            if text[pos].isspace():
                pos += 1
            elif text[pos] == "#":
                nl = text.find("\n", pos)
                pos = n if nl < 0 else nl
            else:
                break
        if pos >= n:
            return
        m = re.compile(r"[A-Za-z]+").match(text, pos)
        if not m or m.group(0) not in KEYWORDS:
            raise SessionError("expected one of " + ", ".join(KEYWORDS), *_linecol(text, pos))
        semi = _statement_end(text, m.end())
        brk = _NEXT_STMT.search(text, m.end(), semi if semi >= 0 else n)
        if semi < 0 or brk is not None:
            end = brk.start() if brk is not None else len(text.rstrip())
            raise SessionError("missing ';' at end of line", *_linecol(text, end))
        yield m.group(0), text[m.end():semi], m.end()
        pos = semi + 1


def _poly(text: str, start: int, body: str, ring: PolyRing) -> Polynomial:
    stripped = body.strip()
    offset = start + (len(body) - len(body.lstrip()))
    try:
        p = ring.parse(stripped)
    except PolySyntaxError as e:
        raise SessionError(str(e).rsplit(" at position", 1)[0], *_linecol(text, offset + e.position)) from None
    except ValueError as e:
        raise SessionError(str(e), *_linecol(text, offset)) from None
    if not p.is_zero():
        d = p.degree()
        for e in p.terms:
            if sum(e) != d:
                raise SessionError(f"not homogeneous: term {format_monomial(ring, e) or '1'} has degree "
                                   f"{sum(e)}, expected {d}", *_linecol(text, offset))
    return p


def _split(body: str, start: int, sep: str = ","):
    """Split on ``sep`` outside parentheses, keeping absolute offsets."""
    parts, depth, last = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((body[last:i], start + last))
            last = i + 1
    parts.append((body[last:], start + last))
    return parts


_RING = re.compile(r"\s*(Q|F\s*(\d+))\s*\[\s*([^\]]*)\]\s*$")
_NAME = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*=")
_SRC = re.compile(r"\s*(J|I(\d+))\s*$")
_TYPE = re.compile(r"\s*\(\s*([\d\s,]*?)\s*;\s*(\d+)\s*\)\s*$")


def parse_session(text: str) -> Session:
    session = None
    for kw, body, start in _statements(text):
        where = _linecol(text, start)
        if kw == "ring":
            if session is not None:
                raise SessionError("ring declared twice", *where)
            m = _RING.match(body)
            if not m:
                raise SessionError("expected Q[vars] or F<p>[vars]", *where)
            names = tuple(v.strip() for v in m.group(3).split(",") if v.strip())
            try:
                ring = PolyRing(names, int(m.group(2)) if m.group(2) else 0)
            except ValueError as e:
                raise SessionError(str(e), *where) from None
            session = Session(ring)
            continue
        if session is None:
            raise SessionError("the ring must be declared first", *where)
        ring = session.ring
        if kw in ("ideal", "candidate"):
            m = _NAME.match(body)
            if not m:
                raise SessionError(f"expected '{kw} NAME = ...'", *where)
            name = m.group(1)
            rest, rstart = body[m.end():], start + m.end()
            if kw == "ideal":
                if name != "J" and not re.fullmatch(r"I[1-9]\d*", name):
                    raise SessionError("ideal names are J or I<k>", *where)
                if name in session.ideals:
                    raise SessionError(f"ideal {name} declared twice", *where)
                polys = [_poly(text, s, b, ring) for b, s in _split(rest, rstart)]
                session.ideals[name] = Ideal(ring, polys)
            else:
                elements = []
                for b, s in _split(rest, rstart):
                    inner = b.strip()
                    if not (inner.startswith("(") and inner.endswith(")")) or ":" not in inner:
                        raise SessionError("expected (poly : J|I<k>)", *_linecol(text, s))
                    off = s + b.index("(") + 1
                    pbody, sbody = inner[1:-1].rsplit(":", 1)
                    sm = _SRC.match(sbody)
                    if not sm:
                        raise SessionError("source must be J or I<k>", *_linecol(text, off + len(pbody)))
                    elements.append((_poly(text, off, pbody, ring), 0 if sm.group(1) == "J" else int(sm.group(2))))
                session.candidates[name] = JointReductionCandidate(tuple(elements))
        elif kw == "module":
            m = re.match(r"\s*N\s*=", body)
            if not m:
                raise SessionError("expected 'module N = ...'", *where)
            rest, rstart = body[m.end():], start + m.end()
            if rest.strip() == "0":
                session.N = Ideal.zero(ring)
            else:
                session.N = Ideal(ring, [_poly(text, s, b, ring) for b, s in _split(rest, rstart)])
        elif kw == "type":
            m = _TYPE.match(body)
            if not m:
                raise SessionError("expected (k1,...,kd; k0)", *where)
            k = tuple(int(v) for v in m.group(1).split(",") if v.strip())
            session.types.append((k, int(m.group(2))))
    if session is None:
        raise SessionError("empty session", 1, 1)
    _resolve(session, text)
    return session


def _resolve(session: Session, text: str):
    end = _linecol(text, len(text.rstrip()))
    if "J" not in session.ideals:
        raise SessionError("no ideal J declared", *end)
    d = sum(1 for n in session.ideals if n != "J")
    for i in range(1, d + 1):
        if f"I{i}" not in session.ideals:
            raise SessionError(f"ideals must be I1..I{d}; I{i} is missing", *end)
    try:
        session.family()
    except ValueError as e:
        raise SessionError(str(e), *end) from None
    for name, c in session.candidates.items():
        for p, s in c.elements:
            if s > d:
                raise SessionError(f"candidate {name} refers to undeclared I{s}", *end)
    for k, _ in session.types:
        if len(k) != d:
            raise SessionError(f"type has {len(k)} entries for {d} ideals", *end)


def format_session(session: Session) -> str:
    ring = session.ring
    field_ = "Q" if ring.characteristic == 0 else f"F{ring.characteristic}"
    lines = [f"ring {field_}[{','.join(ring.variables)}];"]
    for name, I in session.ideals.items():
        lines.append(f"ideal {name} = {', '.join(format_polynomial(g) for g in I.gens)};")
    if session.N is not None:
        gens = ", ".join(format_polynomial(g) for g in session.N.gens) or "0"
        lines.append(f"module N = {gens};")
    for name, c in session.candidates.items():
        parts = ", ".join(f"({format_polynomial(p)} : {'J' if s == 0 else f'I{s}'})" for p, s in c.elements)
        lines.append(f"candidate {name} = {parts};")
    for k, k0 in session.types:
        lines.append(f"type ({','.join(map(str, k))}; {k0});")
    return "\n".join(lines) + "\n"


COUNTEREXAMPLE = """\
ring Q[x,y];
ideal J = x, y;
ideal I1 = x;
module N = 0;
candidate c = (x : I1), (y : J);
type (1; 0);
"""
