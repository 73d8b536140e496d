"""Command-line front end: ``multiseq <subcommand> ...``.

Exit status 0 means success (or "yes"), 1 a negative answer, 2 a usage or
input error.  A file holding several documents stands for the union of them.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import fixtures as fixture_mod
from .core import ValidationError, _Machine, evaluate, renumber, trim, union, words_upto
from .corpus import random_corpus
from .decompose import BoundExceeded, Decomposition, WtpViolation, decompose, equiv_bounded
from .determinize import determinize
from .fstformat import FormatError, parse_many, serialize, serialize_many
from .graph import split_components
from .stream import StreamSession, advisory_bits
from .twinning import check_tp, check_wtp
from .weakdet import weak_determinize

OK, NO, ERR = 0, 1, 2


class UsageError(Exception):
    pass


def _read_docs(path: str) -> List[_Machine]:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        docs = parse_many(text)
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not docs:
        raise UsageError(f"{path}: no transducer found")
    return docs


def _read_one(path: str) -> _Machine:
    docs = _read_docs(path)
    if len(docs) == 1:
        return docs[0]
    try:
        return union(docs, name=docs[0].name)
    except ValidationError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _fmt(w: str) -> str:
    return w if w else "-"


def _emit(text: str) -> None:
    sys.stdout.write(text)


def cmd_trim(a) -> int:
    _emit(serialize(renumber(trim(_read_one(a.file)))))
    return OK


def cmd_eval(a) -> int:
    t = _read_one(a.file)
    words = a.words if a.words else list(words_upto(t.sigma, a.max_len))
    for u in words:
        u = "" if u == "-" else u
        bad = set(u) - set(t.sigma)
        if bad:
            raise UsageError(f"input {u!r} uses letters {sorted(bad)} outside the input alphabet")
        _emit(f"{_fmt(u)}\t{' '.join(_fmt(w) for w in sorted(evaluate(t, u)))}\n")
    return OK


def cmd_check_tp(a) -> int:
    t = _read_one(a.file)
    ok, w = check_tp(t, bound=a.bound_delay)
    if ok:
        _emit("TP: yes\n")
        return OK
    _emit("TP: no\n" + w.describe(trim(t).label) + "\n")
    return NO


def cmd_check_wtp(a) -> int:
    t = _read_one(a.file)
    ok, w = check_wtp(t, bound=a.bound_delay)
    if ok:
        _emit("WTP: yes\n")
        return OK
    _emit("WTP: no\n" + w.describe(trim(t).label) + "\n")
    return NO


def cmd_determinize(a) -> int:
    t = trim(_read_one(a.file))
    d = determinize(t, max_states=a.bound_states, max_residual_len=a.bound_delay)
    if not d.exhausted:
        _emit(f"# determinisation not finished after {len(d.states)} subsets\n")
        return NO
    _emit(serialize(d.machine(), comments=True))
    return OK


def _single_initial(t: _Machine) -> _Machine:
    if len(t.initials) != 1:
        raise UsageError("weak determinisation needs exactly one initial state")
    return t


def cmd_weak_determinize(a) -> int:
    t = _single_initial(trim(_read_one(a.file)))
    r = weak_determinize(t, max_states=a.bound_states, max_delay=a.bound_delay)
    if not r.exhausted:
        _emit(f"# weak determinisation stopped ({r.stop_reason}) after {len(r.subsets)} subsets\n")
        return NO
    _emit(serialize(r.machine, comments=True))
    return OK


def cmd_split(a) -> int:
    t = trim(_read_one(a.file))
    parts = [p for _, p in split_components(t)]
    _emit(serialize_many(parts, comments=True) if parts else "")
    return OK


def cmd_decompose(a) -> int:
    t = _read_one(a.file)
    try:
        d = decompose(t, max_states=a.bound_states, max_delay=a.bound_delay)
    except WtpViolation as exc:
        _emit("WTP: no\n" + exc.witness.describe(trim(t).label) + "\n")
        return NO
    if not d.parts:
        _emit("# empty relation\n")
        return OK
    _emit(serialize_many(d.parts))
    return OK


def _relational(path: str):
    docs = _read_docs(path)
    if len(docs) == 1:
        return docs[0]
    return Decomposition(docs, [], docs[0].sigma, docs[0].gamma, docs[0].name)


def cmd_equiv(a) -> int:
    x, y = _relational(a.left), _relational(a.right)
    try:
        ok, u = equiv_bounded(x, y, a.max_len)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if ok:
        _emit("equivalent: yes\n")
        return OK
    _emit(f"equivalent: no\ncounterexample: {_fmt(u)}\n")
    return NO


def cmd_stream(a) -> int:
    docs = _read_docs(a.file)
    if all(len(d.initials) <= 1 and all(len(es) <= 1 for es in d.out_edges.values()) for d in docs):
        parts = docs
    else:
        try:
            parts = decompose(_read_one(a.file)).parts
        except WtpViolation as exc:
            _emit("WTP: no\n" + exc.witness.describe() + "\n")
            return NO
    u = "".join(sys.stdin.read().split()) if a.input is None else a.input
    u = "" if u == "-" else u
    bits = advisory_bits(parts, u)
    _emit("advisory: " + "".join(map(str, bits)) + "\n")
    s = StreamSession.open(parts, bits)
    for c in u:
        s.push(c)
    s.close()
    for i, ch in enumerate(s.channels):
        if ch.enabled:
            _emit(f"out[{i}]: {_fmt(ch.content())}\n")
    return OK


def cmd_fixtures(a) -> int:
    if a.random:
        ts = random_corpus(a.random, seed=a.seed)
    else:
        ts = list(fixture_mod.fixtures().values())
    if a.write:
        os.makedirs(a.write, exist_ok=True)
        for t in ts:
            with open(os.path.join(a.write, f"{t.name}.fst"), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(serialize(t))
        return OK
    if a.list:
        _emit("".join(f"{t.name}\n" for t in ts))
        return OK
    _emit(serialize_many(ts))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multiseq", description="Multi-sequential transducer toolkit.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help, file=True):
        sp = sub.add_parser(name, help=help)
        if file:
            sp.add_argument("file", help="transducer file ('-' for standard input)")
        sp.set_defaults(func=func)
        return sp

    def bounds(sp):
        sp.add_argument("--bound-states", type=int, default=100_000, metavar="N",
                        help="cap on explored subset states")
        sp.add_argument("--bound-delay", type=int, default=None, metavar="N",
                        help="override the default delay cutoff 2·M·|Q|³")

    add("trim", cmd_trim, "remove useless states and renumber")
    sp = add("eval", cmd_eval, "print the outputs of input words")
    sp.add_argument("words", nargs="*", help="input words ('-' for the empty word)")
    sp.add_argument("--max-len", type=int, default=4, metavar="L",
                    help="without words, enumerate all inputs up to this length")
    sp = add("check-tp", cmd_check_tp, "decide the twinning property")
    sp.add_argument("--bound-delay", type=int, default=None, metavar="N")
    sp = add("check-wtp", cmd_check_wtp, "decide the weak twinning property")
    sp.add_argument("--bound-delay", type=int, default=None, metavar="N")
    bounds(add("determinize", cmd_determinize, "subset construction with residuals"))
    bounds(add("weak-determinize", cmd_weak_determinize, "weak determinisation"))
    add("split", cmd_split, "split along condensation paths")
    bounds(add("decompose", cmd_decompose, "sequential parts whose union is the input"))
    sp = add("equiv", cmd_equiv, "compare two relations on all short inputs", file=False)
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--max-len", type=int, default=7, metavar="L")
    sp = add("stream", cmd_stream, "evaluate with one pass per part, reading stdin")
    sp.add_argument("--input", default=None, help="input word instead of standard input")
    sp = add("fixtures", cmd_fixtures, "list or write the example transducers", file=False)
    sp.add_argument("--list", action="store_true", help="print fixture names")
    sp.add_argument("--write", metavar="DIR", help="write one .fst file per transducer")
    sp.add_argument("--random", type=int, default=0, metavar="N",
                    help="use N random transducers instead of the fixtures")
    sp.add_argument("--seed", type=int, default=0, metavar="S")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return ERR if exc.code else OK
    try:
        return a.func(a)
    except UsageError as exc:
        print(f"multiseq: {exc}", file=sys.stderr)
        return ERR
    except BoundExceeded as exc:
        print(f"multiseq: {exc}", file=sys.stderr)
        return ERR
    except ValueError as exc:  # bad arguments reaching the library
        print(f"multiseq: {exc}", file=sys.stderr)
        return ERR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
