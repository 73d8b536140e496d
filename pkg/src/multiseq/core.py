"""Transducers and multi-transducers over letter inputs and word outputs.

States are opaque integers.  ``labels`` optionally maps a state to a display
name (``q0``, a subset rendering, ...) and never affects semantics.

A :class:`Transducer` maps each final state to one output word; a
:class:`MultiTransducer` maps it to a finite non-empty set of words.  Every
algorithm in the package reads final outputs through ``final_words(q)`` and so
accepts either kind.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

#: Tokens with a meaning of their own in the text format.
RESERVED = frozenset({"-"})


class ValidationError(ValueError):
    """A transducer invariant does not hold."""


class Edge(NamedTuple):
    src: int
    letter: str
    out: str
    dst: int


def _check_alphabet(symbols, what):
    seen = set()
    for c in symbols:
        if not isinstance(c, str) or len(c) != 1:
            raise ValidationError(f"{what} alphabet symbol {c!r} is not a single character")
        if c.isspace() or c in RESERVED:
            raise ValidationError(f"{what} alphabet symbol {c!r} is reserved")
        if c in seen:
            raise ValidationError(f"{what} alphabet symbol {c!r} repeated")
        seen.add(c)


@dataclass(frozen=True, eq=False)
class _Machine:
    sigma: Tuple[str, ...]
    gamma: Tuple[str, ...]
    states: FrozenSet[int]
    edges: Tuple[Edge, ...]
    initials: FrozenSet[int]
    finals: Dict[int, object]
    name: str = ""
    labels: Dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "sigma", tuple(self.sigma))
        set_(self, "gamma", tuple(self.gamma))
        set_(self, "states", frozenset(self.states))
        set_(self, "edges", tuple(sorted({Edge(*e) for e in self.edges})))
        set_(self, "initials", frozenset(self.initials))
        set_(self, "finals", dict(self.finals))
        set_(self, "labels", dict(self.labels or {}))
        validate(self)

    @cached_property
    def out_edges(self) -> Dict[Tuple[int, str], Tuple[Edge, ...]]:
        index: Dict[Tuple[int, str], List[Edge]] = {}
        for e in self.edges:
            index.setdefault((e.src, e.letter), []).append(e)
        return {k: tuple(v) for k, v in index.items()}

    @cached_property
    def successors(self) -> Dict[int, Tuple[int, ...]]:
        succ: Dict[int, set] = {q: set() for q in self.states}
        for e in self.edges:
            succ[e.src].add(e.dst)
        return {q: tuple(sorted(s)) for q, s in succ.items()}

    def step(self, q: int, letter: str) -> Tuple[Edge, ...]:
        return self.out_edges.get((q, letter), ())

    def label(self, q: int) -> str:
        return self.labels.get(q, f"q{q}")

    def final_words(self, q: int) -> Tuple[str, ...]:
        raise NotImplementedError

    def is_final(self, q: int) -> bool:
        return q in self.finals

    def __repr__(self):
        kind = type(self).__name__
        return (f"<{kind} {self.name or '?'}: {len(self.states)} states, "
                f"{len(self.edges)} edges>")


class Transducer(_Machine):
    """Real-time transducer with one final output word per final state."""

    def final_words(self, q):
        return (self.finals[q],)


class MultiTransducer(_Machine):
    """Transducer whose final states carry a finite set of output words."""

    def __post_init__(self):
        object.__setattr__(
            self, "finals", {q: frozenset(ws) for q, ws in dict(self.finals).items()}
        )
        super().__post_init__()

    def final_words(self, q):
        return tuple(sorted(self.finals[q]))


AnyTransducer = Union[Transducer, MultiTransducer]


def validate(t: _Machine) -> None:
    """Raise :class:`ValidationError` naming the first broken invariant."""
    _check_alphabet(t.sigma, "input")
    _check_alphabet(t.gamma, "output")
    sigma, gamma = set(t.sigma), set(t.gamma)
    for q in t.states:
        if not isinstance(q, int):
            raise ValidationError(f"state id {q!r} is not an integer")
    for e in t.edges:
        for q in (e.src, e.dst):
            if q not in t.states:
                raise ValidationError(f"edge {e} references unknown state {q}")
        if not isinstance(e.letter, str) or len(e.letter) != 1:
            raise ValidationError(f"edge {e} input {e.letter!r} is not a single letter")
        if e.letter not in sigma:
            raise ValidationError(f"edge {e} input {e.letter!r} not in the input alphabet")
        bad = set(e.out) - gamma
        if bad:
            raise ValidationError(f"edge {e} output uses letters {sorted(bad)} outside the output alphabet")
    for q in t.initials:
        if q not in t.states:
            raise ValidationError(f"initial state {q} is not a state")
    for q, out in t.finals.items():
        if q not in t.states:
            raise ValidationError(f"final state {q} is not a state")
        words = (out,) if isinstance(t, Transducer) else tuple(out)
        if isinstance(t, MultiTransducer) and not words:
            raise ValidationError(f"final state {q} has an empty output set")
        for w in words:
            if not isinstance(w, str) or set(w) - gamma:
                raise ValidationError(f"final output {w!r} of state {q} is not a word over the output alphabet")


def as_multi(t: AnyTransducer) -> MultiTransducer:
    if isinstance(t, MultiTransducer):
        return t
    return MultiTransducer(t.sigma, t.gamma, t.states, t.edges, t.initials,
                           {q: {w} for q, w in t.finals.items()}, t.name, t.labels)


def replace(t: AnyTransducer, **changes) -> AnyTransducer:
    """Copy of ``t`` with some fields replaced (same class)."""
    cls = changes.pop("cls", None) or type(t)
    fields = dict(sigma=t.sigma, gamma=t.gamma, states=t.states, edges=t.edges,
                  initials=t.initials, finals=t.finals, name=t.name, labels=t.labels)
    fields.update(changes)
    return cls(**fields)


def with_alphabets(t: AnyTransducer, sigma=None, gamma=None) -> AnyTransducer:
    """Widen the alphabets of ``t`` (the relation is unchanged)."""
    new_sigma = tuple(t.sigma) + tuple(c for c in (sigma or ()) if c not in t.sigma)
    new_gamma = tuple(t.gamma) + tuple(c for c in (gamma or ()) if c not in t.gamma)
    return replace(t, sigma=new_sigma, gamma=new_gamma)


def empty(sigma="", gamma="", name="") -> Transducer:
    return Transducer(tuple(sigma), tuple(gamma), (), (), (), {}, name)


def _closure(starts: Iterable[int], succ) -> set:
    seen = set(starts)
    todo = deque(seen)
    while todo:
        q = todo.popleft()
        for r in succ(q):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def accessible(t: _Machine, starts: Optional[Iterable[int]] = None) -> set:
    return _closure(t.initials if starts is None else starts, lambda q: t.successors[q])


def coaccessible(t: _Machine) -> set:
    pred: Dict[int, set] = {q: set() for q in t.states}
    for e in t.edges:
        pred[e.dst].add(e.src)
    return _closure(t.finals, lambda q: pred[q])


def trim(t: AnyTransducer) -> AnyTransducer:
    """Restrict to states lying on some accepting run.  State ids are kept."""
    keep = accessible(t) & coaccessible(t)
    if keep == set(t.states):
        return t
    return replace(
        t,
        states=keep,
        edges=[e for e in t.edges if e.src in keep and e.dst in keep],
        initials=t.initials & keep,
        finals={q: w for q, w in t.finals.items() if q in keep},
        labels={q: s for q, s in t.labels.items() if q in keep},
    )


def restrict_initials(t: AnyTransducer, initials: Iterable[int]) -> AnyTransducer:
    return replace(t, initials=frozenset(initials))


def evaluate(t: _Machine, u: str) -> FrozenSet[str]:
    """All outputs of ``t`` on input ``u`` (empty set when ``u`` is rejected)."""
    configs = {(i, "") for i in t.initials}
    for c in u:
        configs = {(e.dst, w + e.out) for q, w in configs for e in t.step(q, c)}
        if not configs:
            return frozenset()
    return _outputs(t, configs)


def _outputs(t, configs) -> FrozenSet[str]:
    return frozenset(w + z for q, w in configs if q in t.finals for z in t.final_words(q))


def words_upto(sigma: Iterable[str], max_len: int) -> Iterator[str]:
    """All words over ``sigma`` of length ≤ ``max_len``, shortlex order."""
    letters = sorted(set(sigma))
    level = [""]
    for n in range(max_len + 1):
        yield from level
        if n < max_len:
            level = [w + c for w in level for c in letters]


def relation_upto(t: _Machine, max_len: int, sigma=None) -> Dict[str, FrozenSet[str]]:
    """Map every input word of length ≤ ``max_len`` to its output set.

    Walks the input trie once, sharing the run configurations of common
    prefixes.  Words outside the domain map to the empty set.
    """
    letters = sorted(set(t.sigma if sigma is None else sigma))
    result: Dict[str, FrozenSet[str]] = {}
    stack = [("", frozenset((i, "") for i in t.initials))]
    while stack:
        u, configs = stack.pop()
        result[u] = _outputs(t, configs)
        if len(u) < max_len:
            for c in letters:
                nxt = frozenset((e.dst, w + e.out) for q, w in configs for e in t.step(q, c))
                if nxt:
                    stack.append((u + c, nxt))
                else:
                    for v in words_upto(letters, max_len - len(u) - 1):
                        result[u + c + v] = frozenset()
    return result


def union(ts: List[AnyTransducer], sigma=None, gamma=None, name="") -> AnyTransducer:
    """Disjoint union; states are renumbered ``0..n-1`` part by part."""
    ts = list(ts)
    if ts:
        s0, g0 = set(ts[0].sigma), set(ts[0].gamma)
        for t in ts[1:]:
            if set(t.sigma) != s0 or set(t.gamma) != g0:
                raise ValidationError(
                    f"alphabet mismatch in union: {t.name or t!r} has "
                    f"({''.join(t.sigma)}, {''.join(t.gamma)}), expected "
                    f"({''.join(ts[0].sigma)}, {''.join(ts[0].gamma)})")
        sigma = ts[0].sigma if sigma is None else sigma
        gamma = ts[0].gamma if gamma is None else gamma
    multi = any(isinstance(t, MultiTransducer) for t in ts)
    states, edges, initials, finals, labels = [], [], [], {}, {}
    offset = 0
    for t in ts:
        ren = {q: offset + k for k, q in enumerate(sorted(t.states))}
        offset += len(ren)
        states.extend(ren.values())
        edges.extend(Edge(ren[e.src], e.letter, e.out, ren[e.dst]) for e in t.edges)
        initials.extend(ren[q] for q in t.initials)
        for q in t.finals:
            finals[ren[q]] = set(t.final_words(q)) if multi else t.finals[q]
        for q, s in t.labels.items():
            labels[ren[q]] = s
    cls = MultiTransducer if multi else Transducer
    return cls(sigma or (), gamma or (), states, edges, initials, finals, name, labels)


def max_output_len(t: _Machine) -> int:
    lens = [len(e.out) for e in t.edges]
    lens += [len(w) for q in t.finals for w in t.final_words(q)]
    return max(lens, default=0)


def is_sequential(t: _Machine) -> bool:
    """Deterministic input automaton: ≤ 1 initial state, ≤ 1 edge per (state, letter)."""
    if len(t.initials) > 1:
        return False
    return all(len(es) <= 1 for es in t.out_edges.values())


def renumber(t: AnyTransducer) -> AnyTransducer:
    """Number states ``0..n-1`` in breadth-first order from the initial states.

    Edges are explored by ``(letter, output, old target)`` so the numbering is
    canonical for sequential transducers.  Unreachable states come last.
    """
    order: List[int] = []
    seen = set()
    todo = deque(sorted(t.initials))
    seen.update(todo)
    while todo:
        q = todo.popleft()
        order.append(q)
        for e in sorted((e for e in t.edges if e.src == q), key=lambda e: (e.letter, e.out, e.dst)):
            if e.dst not in seen:
                seen.add(e.dst)
                todo.append(e.dst)
    order.extend(sorted(set(t.states) - seen))
    ren = {q: k for k, q in enumerate(order)}
    return replace(
        t,
        states=ren.values(),
        edges=[Edge(ren[e.src], e.letter, e.out, ren[e.dst]) for e in t.edges],
        initials=[ren[q] for q in t.initials],
        finals={ren[q]: w for q, w in t.finals.items()},
        labels={ren[q]: s for q, s in t.labels.items()},
    )


def signature(t: _Machine) -> tuple:
    """Hashable structural key; equal keys mean equal after :func:`renumber`."""
    r = renumber(t)
    return (
        tuple(sorted(r.sigma)), tuple(sorted(r.gamma)), len(r.states), r.edges,
        tuple(sorted(r.initials)),
        tuple(sorted((q, r.final_words(q)) for q in r.finals)),
    )


def isomorphic(a: _Machine, b: _Machine) -> bool:
    """Equality up to state renaming (labels and names ignored)."""
    if (len(a.states), len(a.edges), len(a.initials), len(a.finals)) != \
            (len(b.states), len(b.edges), len(b.initials), len(b.finals)):
        return False
    if set(a.sigma) != set(b.sigma) or set(a.gamma) != set(b.gamma):
        return False
    if is_sequential(a) and is_sequential(b) and len(accessible(a)) == len(a.states) \
            and len(accessible(b)) == len(b.states):
        return signature(a) == signature(b)
    import networkx as nx

    def graph(t):
        g = nx.MultiDiGraph()
        for q in t.states:
            g.add_node(q, init=q in t.initials,
                       final=t.final_words(q) if q in t.finals else None)
        for e in t.edges:
            g.add_edge(e.src, e.dst, lab=(e.letter, e.out))
        return g

    def edge_match(x, y):
        return sorted(d["lab"] for d in x.values()) == sorted(d["lab"] for d in y.values())

    return nx.is_isomorphic(graph(a), graph(b), node_match=lambda x, y: x == y,
                            edge_match=edge_match)
