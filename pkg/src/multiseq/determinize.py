"""Subset construction with residual outputs.

A subset state is a finite set of pairs ``(state, residual word)``: the
output each tracked run has produced beyond what the deterministic machine has
already emitted.  On each letter the machine emits the longest common prefix
of the extended residuals and keeps the rest.  The construction need not
terminate, so exploration is bounded.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .core import Edge, MultiTransducer, _Machine, max_output_len, trim


class SubsetState(tuple):
    """Sorted tuple of ``(state, residual)`` pairs; equality is structural."""

    __slots__ = ()

    def __new__(cls, pairs: Iterable[Tuple[int, str]] = ()):
        return super().__new__(cls, sorted(set(pairs)))

    @property
    def states(self) -> FrozenSet[int]:
        return frozenset(q for q, _ in self)

    def max_residual(self) -> int:
        return max((len(w) for _, w in self), default=0)

    def render(self, label=lambda q: f"q{q}") -> str:
        return "{" + ", ".join(f"({label(q)},{w or 'ε'})" for q, w in self) + "}"

    def __repr__(self):
        return f"SubsetState({self.render()})"


def common_prefix(words: Iterable[str]) -> str:
    words = list(words)
    if not words:
        return ""
    lo, hi = min(words), max(words)
    i = 0
    while i < len(lo) and lo[i] == hi[i]:
        i += 1
    return lo[:i]


def initial_subset(t: _Machine) -> SubsetState:
    return SubsetState((i, "") for i in t.initials)


def successors_raw(t: _Machine, U: SubsetState, letter: str) -> List[Tuple[int, str]]:
    """R_{U,σ}: every pair reached by one σ-edge from a pair of U."""
    return [(e.dst, w + e.out) for q, w in U for e in t.step(q, letter)]


def det_step(t: _Machine, U: SubsetState, letter: str) -> Optional[Tuple[str, SubsetState]]:
    """``(emitted, next subset)``, or ``None`` when no pair has a σ-successor."""
    reached = successors_raw(t, U, letter)
    if not reached:
        return None
    out = common_prefix(w for _, w in reached)
    k = len(out)
    return out, SubsetState((q, w[k:]) for q, w in reached)


def final_outputs(t: _Machine, U: SubsetState) -> FrozenSet[str]:
    return frozenset(w + z for q, w in U if q in t.finals for z in t.final_words(q))


def default_residual_bound(t: _Machine) -> int:
    m = max_output_len(t)
    return 2 * m * len(t.states) ** 3 + m


@dataclass
class DetExpansion:
    states: List[SubsetState]
    edges: List[Tuple[SubsetState, str, str, SubsetState]]
    initial: SubsetState
    finals: Dict[SubsetState, FrozenSet[str]]
    exhausted: bool
    sigma: Tuple[str, ...] = ()
    gamma: Tuple[str, ...] = ()
    labels: Dict[int, str] = field(default_factory=dict, repr=False)

    def machine(self) -> MultiTransducer:
        """The explored part as a multi-transducer (trimmed when exhausted)."""
        ids = {U: k for k, U in enumerate(self.states)}
        m = MultiTransducer(
            self.sigma, self.gamma, ids.values(),
            [Edge(ids[U], c, w, ids[V]) for U, c, w, V in self.edges],
            [ids[self.initial]],
            {ids[U]: ws for U, ws in self.finals.items()},
            "D",
            {k: U.render(lambda q: self.labels.get(q, f"q{q}")) for U, k in ids.items()},
        )
        return trim(m) if self.exhausted else m


def determinize(t: _Machine, max_states: int = 100_000,
                max_residual_len: Optional[int] = None) -> DetExpansion:
    """Breadth-first closure of :func:`det_step` from ``I × {ε}``.

    Stops with ``exhausted=False`` as soon as a subset holds a residual longer
    than ``max_residual_len`` or more than ``max_states`` subsets are found.
    """
    if max_residual_len is None:
        max_residual_len = default_residual_bound(t)
    U0 = initial_subset(t)
    letters = sorted(t.sigma)
    states = [U0]
    seen = {U0}
    edges = []
    todo = deque([U0])
    exhausted = True
    while todo and exhausted:
        U = todo.popleft()
        for c in letters:
            step = det_step(t, U, c)
            if step is None:
                continue
            out, V = step
            edges.append((U, c, out, V))
            if V not in seen:
                if V.max_residual() > max_residual_len or len(states) >= max_states:
                    exhausted = False
                    edges.pop()
                    break
                seen.add(V)
                states.append(V)
                todo.append(V)
    finals = {U: final_outputs(t, U) for U in states if U.states & set(t.finals)}
    return DetExpansion(states, edges, U0, finals, exhausted, t.sigma, t.gamma, dict(t.labels))
