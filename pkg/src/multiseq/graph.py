"""Strongly connected components, transient edges, split and separability."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Tuple

from .core import Edge, MultiTransducer, Transducer, _Machine, trim, union
from .core import replace as _replace


class BoundExceeded(RuntimeError):
    """A configured size bound was hit."""


def tarjan(nodes: Iterable[Hashable], succ: Callable[[Hashable], Iterable[Hashable]]) -> List[List]:
    """Strongly connected components, sinks first (reverse topological order).

    Iterative, so deep graphs do not hit the recursion limit.
    """
    index: Dict = {}
    low: Dict = {}
    on_stack = set()
    stack: List = []
    out: List[List] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ(root)))]
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    out.append(comp)
    return out


@dataclass(frozen=True)
class SccIndex:
    scc_of: Dict[int, int]
    components: Tuple[FrozenSet[int], ...]  # reverse topological order

    def same(self, p: int, q: int) -> bool:
        return self.scc_of[p] == self.scc_of[q]


def scc(t: _Machine) -> SccIndex:
    comps = tarjan(sorted(t.states), lambda q: t.successors[q])
    scc_of = {q: k for k, comp in enumerate(comps) for q in comp}
    return SccIndex(scc_of, tuple(frozenset(c) for c in comps))


def is_transient(index: SccIndex, e: Edge) -> bool:
    return index.scc_of[e.src] != index.scc_of[e.dst]


def transient_edges(t: _Machine) -> FrozenSet[Edge]:
    index = scc(t)
    return frozenset(e for e in t.edges if is_transient(index, e))


def condensation_paths(t: _Machine) -> List[Tuple[Edge, ...]]:
    """Paths of the condensation DAG that start in an SCC holding an initial state.

    A path is the tuple of transient edges it follows; the empty tuple stands
    for the path of length 0 at an initial SCC (one per such SCC, in the order
    the SCCs are listed by :func:`initial_sccs`).
    """
    return [path for _, path in _paths_with_start(t, scc(t))]


def initial_sccs(t: _Machine, index: SccIndex) -> List[int]:
    return sorted({index.scc_of[i] for i in t.initials}, reverse=True)


def _paths_with_start(t, index):
    leaving: Dict[int, List[Edge]] = {}
    for e in t.edges:
        if is_transient(index, e):
            leaving.setdefault(index.scc_of[e.src], []).append(e)
    out = []

    def extend(c, path):
        for e in leaving.get(c, ()):
            longer = path + (e,)
            out.append((start, longer))
            extend(index.scc_of[e.dst], longer)

    for start in initial_sccs(t, index):
        out.append((start, ()))
        extend(start, ())
    return out


def split_components(t: _Machine) -> List[Tuple[Tuple[Edge, ...], _Machine]]:
    """``(path, trim(T_p))`` for every condensation path, empty parts dropped.

    ``T_p`` keeps the non-transient edges of ``t`` plus the transient edges of
    ``p``, and only the initial states of the SCC where ``p`` starts.
    """
    index = scc(t)
    inner = [e for e in t.edges if not is_transient(index, e)]
    parts = []
    for start, path in _paths_with_start(t, index):
        part = _replace(
            t,
            edges=inner + list(path),
            initials=[i for i in t.initials if index.scc_of[i] == start],
        )
        part = trim(part)
        if part.states:
            parts.append((path, part))
    return parts


def split(t: _Machine) -> _Machine:
    """Disjoint union of the path sub-transducers; equivalent to ``t``."""
    parts = [p for _, p in split_components(t)]
    if not parts:
        return _replace(t, states=(), edges=(), initials=(), finals={}, labels={})
    return union(parts, sigma=t.sigma, gamma=t.gamma, name=t.name)


def is_separable(t: _Machine) -> bool:
    """Single initial state, and same-source same-letter edges are all transient."""
    if len(t.initials) != 1:
        return False
    index = scc(t)
    for es in t.out_edges.values():
        if len(es) > 1 and not all(is_transient(index, e) for e in es):
            return False
    return True


def multi_to_union_parts(t: _Machine, max_copies: int = 10_000) -> List[Transducer]:
    """Plain transducers over the same automaton whose union is ``t``.

    Copy ``j`` makes each final state ``q`` output the ``j``-th word of its
    sorted output set, and drops ``q`` from the finals when that set is
    shorter.  The number of copies is the largest output-set size.
    """
    words = {q: t.final_words(q) for q in t.finals}
    k = max((len(ws) for ws in words.values()), default=1)
    if k > max_copies:
        raise BoundExceeded(f"multi_to_union would need {k} copies (cap {max_copies})")
    copies = []
    for j in range(k):
        finals = {q: ws[j] for q, ws in words.items() if j < len(ws)}
        copies.append(_replace(t, finals=finals, cls=Transducer))
    return copies


def multi_to_union(t: _Machine, max_copies: int = 10_000) -> Transducer:
    copies = multi_to_union_parts(t, max_copies)
    if len(copies) == 1:
        return copies[0]
    return union(copies, sigma=t.sigma, gamma=t.gamma, name=t.name)
