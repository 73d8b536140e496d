"""Weak determinisation: determinise inside an SCC, reset when leaving it.

The rank of a subset state is the set of SCCs reachable from its states.  A
determinisation step that keeps the rank is kept as is.  A step that shrinks
the rank is replaced by one edge per reached pair ``(q, w)``, emitting the
whole pending output and restarting from ``{(q, ε)}``.  Rank only ever shrinks
along a run, so the reset edges are transient and the machine stays separable.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import count
from typing import Dict, FrozenSet, List, Optional, Tuple

from .core import Edge, MultiTransducer, _Machine, max_output_len, renumber, trim
from .determinize import SubsetState, det_step, final_outputs, initial_subset
from .freegroup import lcp
from .graph import scc


class Ranker:
    """Precomputed reachable-SCC sets for one transducer."""

    def __init__(self, t: _Machine):
        self.t = t
        self.index = scc(t)
        reach: Dict[int, FrozenSet[int]] = {}
        # components come sinks first, so successors are done before their sources
        for comp in self.index.components:
            own = {self.index.scc_of[q] for q in comp}
            for q in comp:
                for r in t.successors[q]:
                    if r not in comp:
                        own |= reach[r]
            frozen = frozenset(own)
            for q in comp:
                reach[q] = frozen
        self.reach = reach

    def rank(self, U: SubsetState) -> FrozenSet[int]:
        out: FrozenSet[int] = frozenset()
        for q, _ in U:
            out |= self.reach[q]
        return out


def rank(t: _Machine, U: SubsetState) -> FrozenSet[int]:
    """SCC ids (see :func:`multiseq.graph.scc`) reachable from the states of ``U``."""
    return Ranker(t).rank(U)


def weakdet_step(t: _Machine, U: SubsetState, letter: str,
                 ranker: Optional[Ranker] = None) -> List[Tuple[str, SubsetState]]:
    ranker = ranker or Ranker(t)
    step = det_step(t, U, letter)
    if step is None:
        return []
    out, V = step
    if ranker.rank(V) == ranker.rank(U):
        return [(out, V)]
    return [(out + w, SubsetState([(q, "")])) for q, w in V]


def max_pair_delay(U: SubsetState) -> int:
    """Largest ``|Δ(v1, v2)|`` over pairs of residuals in ``U``.

    That is the diameter of the residuals in their prefix tree, found in one
    pass over the sorted words rather than over all pairs.
    """
    words = sorted({w for _, w in U})
    best = 0
    # stack of (depth of branching point, deepest word length seen below it)
    stack: List[Tuple[int, int]] = []
    prev = None
    for w in words:
        h = len(lcp(prev, w)) if prev is not None else 0
        deepest = -1
        while stack and stack[-1][0] >= h:
            deepest = max(deepest, stack.pop()[1])
        if deepest >= 0:
            stack.append((h, deepest))
        for depth, far in stack:
            best = max(best, far + len(w) - 2 * depth)
        stack.append((len(w), len(w)))
        prev = w
    return best


def default_delay_bound(t: _Machine) -> int:
    return max(2 * max_output_len(t) * len(t.states) ** 3, 1)


@dataclass
class WeakDetResult:
    machine: MultiTransducer
    exhausted: bool
    max_residual_seen: int
    violation_hint: Optional[SubsetState] = None
    stop_reason: Optional[str] = None  # "delay", "states" or "width" when not exhausted
    subsets: Dict[int, SubsetState] = field(default_factory=dict)

    def subset_edges(self) -> List[Tuple[SubsetState, str, str, SubsetState]]:
        return [(self.subsets[e.src], e.letter, e.out, self.subsets[e.dst])
                for e in self.machine.edges]


def weak_determinize(t: _Machine, max_states: int = 100_000,
                     max_delay: Optional[int] = None,
                     max_width: int = 5_000) -> WeakDetResult:
    """Explore the weak determinisation of a single-initial-state transducer.

    Exploration is best-first on the largest pairwise residual delay, so that
    a diverging construction reaches the cutoff quickly.  It stops with
    ``exhausted=False`` when a subset has two residuals at delay
    ``≥ max_delay`` (default ``2·M·|Q|³``) or when ``max_states`` subsets
    are found, or when one subset holds more than ``max_width`` pairs.  When
    exhausted, ``machine`` is the trimmed result with states
    numbered breadth-first.
    """
    if len(t.initials) != 1:
        raise ValueError("weak determinisation needs exactly one initial state")
    if max_delay is None:
        max_delay = default_delay_bound(t)
    ranker = Ranker(t)
    letters = sorted(t.sigma)
    U0 = initial_subset(t)
    ids = {U0: 0}
    edges = []
    tick = count()
    heap = [(0, next(tick), U0)]
    exhausted = True
    hint = None
    reason = None
    max_res = 0
    while heap and exhausted:
        _, _, U = heapq.heappop(heap)
        for c in letters:
            for out, V in weakdet_step(t, U, c, ranker):
                if V not in ids:
                    d = max_pair_delay(V)
                    max_res = max(max_res, V.max_residual())
                    if d >= max_delay:
                        reason = "delay"
                    elif len(ids) >= max_states:
                        reason = "states"
                    elif len(V) > max_width:
                        reason = "width"
                    if reason:
                        exhausted = False
                        hint = V if reason == "delay" else None
                        break
                    ids[V] = len(ids)
                    heapq.heappush(heap, (-d, next(tick), V))
                edges.append(Edge(ids[U], c, out, ids[V]))
            if not exhausted:
                break
    finals = {k: final_outputs(t, U) for U, k in ids.items() if U.states & set(t.finals)}
    subsets = {k: U for U, k in ids.items()}
    # carry the discovery id through trim/renumber in the label slot
    machine = MultiTransducer(t.sigma, t.gamma, ids.values(), edges, [0], finals, "W",
                              {k: str(k) for k in subsets})
    if exhausted:
        machine = renumber(trim(machine))
    subsets = {k: subsets[int(old)] for k, old in machine.labels.items()}
    labels = {k: U.render(t.label) for k, U in subsets.items()}
    machine = MultiTransducer(machine.sigma, machine.gamma, machine.states, machine.edges,
                              machine.initials, machine.finals, "W", labels)
    return WeakDetResult(machine, exhausted, max_res, hint, reason, subsets)
