"""The line-oriented ``.fst`` text format.

::

    fst t_swap
    in ab
    out ab
    state 0 init
    state 1
    state 3 final -
    edge 0 a aa 1

``-`` stands for the empty output word.  A line whose first non-blank
character is ``#`` is a comment (``#`` may still be a letter inside other
lines).  Several documents in one file are separated by a ``---`` line.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .core import MultiTransducer, Transducer, ValidationError, _Machine

EPS = "-"
SEPARATOR = "---"


class FormatError(ValueError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _word(tok: str) -> str:
    return "" if tok == EPS else tok


def _tok(w: str) -> str:
    return w if w else EPS


def _int(tok: str, lineno: int) -> int:
    try:
        q = int(tok)
    except ValueError:
        raise FormatError(f"state id must be an integer, got {tok!r}", lineno) from None
    if q < 0:
        raise FormatError(f"state id must be non-negative, got {q}", lineno)
    return q


def _parse_doc(lines: List[Tuple[int, str]]):
    name = None
    sigma = gamma = None
    states: List[int] = []
    declared: Dict[int, int] = {}
    initials: List[int] = []
    finals: Dict[int, List[str]] = {}
    edges = []
    first = lines[0][0] if lines else 0
    for lineno, raw in lines:
        toks = raw.split()
        kw, args = toks[0], toks[1:]
        if kw == "fst":
            if name is not None:
                raise FormatError("second 'fst' header in one document", lineno)
            if len(args) > 1:
                raise FormatError("transducer name must be one token", lineno)
            name = args[0] if args else ""
            continue
        if name is None:
            raise FormatError("document must start with 'fst <name>'", lineno)
        if kw in ("in", "out"):
            if len(args) > 1:
                raise FormatError(f"'{kw}' takes the letters as one token, e.g. '{kw} ab'", lineno)
            letters = tuple(args[0]) if args else ()
            if len(set(letters)) != len(letters):
                raise FormatError(f"repeated letter in '{kw}' alphabet", lineno)
            if EPS in letters:
                raise FormatError(f"'{EPS}' is reserved for the empty word", lineno)
            if kw == "in":
                if sigma is not None:
                    raise FormatError("duplicate 'in' line", lineno)
                sigma = letters
            else:
                if gamma is not None:
                    raise FormatError("duplicate 'out' line", lineno)
                gamma = letters
        elif kw == "state":
            if not args:
                raise FormatError("'state' needs an id", lineno)
            q = _int(args[0], lineno)
            if q in declared:
                raise FormatError(f"duplicate state {q} (first declared on line {declared[q]})", lineno)
            declared[q] = lineno
            states.append(q)
            rest = args[1:]
            if rest[:1] == ["init"]:
                initials.append(q)
                rest = rest[1:]
            if rest:
                if rest[0] != "final":
                    raise FormatError(f"unexpected {rest[0]!r} in state line", lineno)
                if len(rest) < 2:
                    raise FormatError("'final' needs at least one output word (use '-' for ε)", lineno)
                finals[q] = [_word(w) for w in rest[1:]]
        elif kw == "edge":
            if len(args) != 4:
                raise FormatError("expected 'edge <src> <letter> <word|-> <dst>'", lineno)
            src, letter, out, dst = args
            if letter == EPS:
                raise FormatError("edges must read exactly one input letter; "
                                  "ε-input edges are not allowed in real-time transducers", lineno)
            if len(letter) != 1:
                raise FormatError(f"edge input must be a single letter, got {letter!r}", lineno)
            edges.append((_int(src, lineno), letter, _word(out), _int(dst, lineno), lineno))
        else:
            raise FormatError(f"unknown keyword {kw!r}", lineno)
    if name is None:
        raise FormatError("empty document", first)
    for src, letter, out, dst, lineno in edges:
        for q in (src, dst):
            if q not in declared:
                raise FormatError(f"edge uses undeclared state {q}", lineno)
    multi = any(len(ws) != 1 for ws in finals.values())
    try:
        if multi:
            return MultiTransducer(sigma or (), gamma or (), states,
                                   [e[:4] for e in edges], initials, finals, name)
        return Transducer(sigma or (), gamma or (), states, [e[:4] for e in edges],
                          initials, {q: ws[0] for q, ws in finals.items()}, name)
    except ValidationError as exc:
        raise FormatError(str(exc), first) from None


def _documents(text: str) -> List[List[Tuple[int, str]]]:
    docs: List[List[Tuple[int, str]]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == SEPARATOR:
            docs.append([])
            continue
        docs[-1].append((lineno, line))
    return [d for d in docs if d]


def parse_many(text: str) -> List[_Machine]:
    return [_parse_doc(d) for d in _documents(text)]


def parse(text: str) -> _Machine:
    """Parse a single-document file."""
    docs = _documents(text)
    if len(docs) != 1:
        raise FormatError(f"expected one transducer, found {len(docs)}")
    return _parse_doc(docs[0])


def serialize(t: _Machine, comments: bool = False) -> str:
    """Canonical text: states ascending, edges sorted.

    With ``comments``, state labels that differ from the id are kept as
    ``# state <id>: <label>`` comment lines.
    """
    out = [f"fst {t.name}" if t.name else "fst", f"in {''.join(t.sigma)}", f"out {''.join(t.gamma)}"]
    for q in sorted(t.states):
        if comments and q in t.labels and t.labels[q] not in (str(q), f"q{q}"):
            out.append(f"# state {q}: {t.labels[q].replace('ε', EPS)}")
        line = f"state {q}"
        if q in t.initials:
            line += " init"
        if q in t.finals:
            line += " final " + " ".join(_tok(w) for w in t.final_words(q))
        out.append(line)
    for e in sorted(t.edges):
        out.append(f"edge {e.src} {e.letter} {_tok(e.out)} {e.dst}")
    return "\n".join(out) + "\n"


def serialize_many(ts, comments: bool = False) -> str:
    return (SEPARATOR + "\n").join(serialize(t, comments) for t in ts)
