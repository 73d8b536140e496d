"""Deciding the twinning and weak twinning properties.

Both checks explore the square automaton (pairs of runs reading the same
input) together with the delay between the two outputs.  At each reached
``(square state, delay)`` we require every square cycle through that state to
leave the delay unchanged.  If that holds everywhere, removing cycles from a
run never changes its delay, so every reachable delay is produced by a simple
path; the exploration is then finite.  Conversely, an inconsistent cycle or a
delay beyond any simple-path value is turned into a concrete witness, replayed
on the transducer before being returned.

For the weak property the exploration starts at each diagonal state ``(q, q)``
and the left run stays inside the SCC of ``q``: any square state ``(p, r)``
reached this way is also reachable from ``(p, p)``, so a bad cycle there
yields a violation rooted at ``p``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import _Machine, max_output_len, trim
from .freegroup import IDENTITY, GroupWord, act, delay, glen
from .graph import scc, tarjan

# square edge: (source pair, letter, left output, right output, target pair)
SqEdge = Tuple[Tuple[int, int], str, str, str, Tuple[int, int]]


@dataclass(frozen=True)
class SquareState:
    left: int
    right: int


@dataclass(frozen=True)
class WtpWitness:
    """``q1 -u|u1-> q1 -v|v1-> q1``, ``q1 -u|u2-> q2 -v|v2-> q2`` with the delay moved."""

    q1: int
    q2: int
    u: str
    v: str
    u1: str
    u2: str
    v1: str
    v2: str

    def delays(self) -> Tuple[GroupWord, GroupWord]:
        return delay(self.u1, self.u2), delay(self.u1 + self.v1, self.u2 + self.v2)

    def describe(self, label=lambda q: f"q{q}") -> str:
        before, after = self.delays()
        return "\n".join([
            f"q1 = {label(self.q1)}, q2 = {label(self.q2)}",
            f"u = {self.u or 'ε'}  (u1 = {self.u1 or 'ε'}, u2 = {self.u2 or 'ε'})",
            f"v = {self.v or 'ε'}  (v1 = {self.v1 or 'ε'}, v2 = {self.v2 or 'ε'})",
            f"delay(u1, u2) = {before}, delay(u1 v1, u2 v2) = {after}",
        ])


@dataclass(frozen=True)
class TpWitness:
    """``i1 -u|u1-> q1 -v|v1-> q1`` and ``i2 -u|u2-> q2 -v|v2-> q2`` with the delay moved."""

    init1: int
    init2: int
    q1: int
    q2: int
    u: str
    v: str
    u1: str
    u2: str
    v1: str
    v2: str

    def delays(self) -> Tuple[GroupWord, GroupWord]:
        return delay(self.u1, self.u2), delay(self.u1 + self.v1, self.u2 + self.v2)

    def describe(self, label=lambda q: f"q{q}") -> str:
        before, after = self.delays()
        return "\n".join([
            f"{label(self.init1)} -{self.u or 'ε'}|{self.u1 or 'ε'}-> {label(self.q1)} "
            f"-{self.v}|{self.v1 or 'ε'}-> {label(self.q1)}",
            f"{label(self.init2)} -{self.u or 'ε'}|{self.u2 or 'ε'}-> {label(self.q2)} "
            f"-{self.v}|{self.v2 or 'ε'}-> {label(self.q2)}",
            f"delay(u1, u2) = {before}, delay(u1 v1, u2 v2) = {after}",
        ])


# -- replay -----------------------------------------------------------------

def runs(t: _Machine, p: int, word: str) -> set:
    """All ``(target, output)`` of runs of ``t`` from ``p`` reading ``word``."""
    configs = {(p, "")}
    for c in word:
        configs = {(e.dst, w + e.out) for q, w in configs for e in t.step(q, c)}
    return configs


def replays_wtp(t: _Machine, w: WtpWitness) -> bool:
    """The four runs exist and the delay changes: a genuine violation."""
    from_q1_u = runs(t, w.q1, w.u)
    return ((w.q1, w.u1) in from_q1_u
            and (w.q2, w.u2) in from_q1_u
            and (w.q1, w.v1) in runs(t, w.q1, w.v)
            and (w.q2, w.v2) in runs(t, w.q2, w.v)
            and delay(w.u1, w.u2) != delay(w.u1 + w.v1, w.u2 + w.v2))


def replays_tp(t: _Machine, w: TpWitness) -> bool:
    return (w.init1 in t.initials and w.init2 in t.initials
            and (w.q1, w.u1) in runs(t, w.init1, w.u)
            and (w.q2, w.u2) in runs(t, w.init2, w.u)
            and (w.q1, w.v1) in runs(t, w.q1, w.v)
            and (w.q2, w.v2) in runs(t, w.q2, w.v)
            and delay(w.u1, w.u2) != delay(w.u1 + w.v1, w.u2 + w.v2))


# -- square exploration -----------------------------------------------------

class _Square:
    def __init__(self, t: _Machine, allowed_left: Optional[frozenset]):
        self.t = t
        self.allowed = allowed_left
        self.letters = sorted(t.sigma)
        self._succ: Dict[Tuple[int, int], List[SqEdge]] = {}

    def edges(self, s) -> List[SqEdge]:
        out = self._succ.get(s)
        if out is None:
            p, r = s
            out = []
            for c in self.letters:
                for e1 in self.t.step(p, c):
                    if self.allowed is not None and e1.dst not in self.allowed:
                        continue
                    for e2 in self.t.step(r, c):
                        out.append((s, c, e1.out, e2.out, (e1.dst, e2.dst)))
            self._succ[s] = out
        return out

    def components(self, starts):
        seen = set(starts)
        todo = deque(starts)
        while todo:
            s = todo.popleft()
            for e in self.edges(s):
                if e[4] not in seen:
                    seen.add(e[4])
                    todo.append(e[4])
        comps = tarjan(sorted(seen), lambda s: [e[4] for e in self.edges(s)])
        comp_of = {}
        for k, comp in enumerate(comps):
            for s in comp:
                comp_of[s] = k
        cyclic = set()
        for k, comp in enumerate(comps):
            if len(comp) > 1 or any(e[4] == comp[0] for e in self.edges(comp[0])):
                cyclic.add(k)
        return comp_of, cyclic


def _apply(d: GroupWord, path: Iterable[SqEdge]) -> GroupWord:
    for e in path:
        d = act(d, e[2], e[3])
    return d


def _words(path: Sequence[SqEdge]) -> Tuple[str, str, str]:
    return ("".join(e[1] for e in path), "".join(e[2] for e in path),
            "".join(e[3] for e in path))


def _inner_path(sq: _Square, comp_of, src, dst) -> List[SqEdge]:
    """Shortest path from ``src`` to ``dst`` inside their common square SCC."""
    k = comp_of[src]
    parent = {src: None}
    todo = deque([src])
    while todo and dst not in parent:
        s = todo.popleft()
        for e in sq.edges(s):
            y = e[4]
            if comp_of.get(y) == k and y not in parent:
                parent[y] = e
                todo.append(y)
    return _tree_path(parent, dst)


def _tree_path(parent, s) -> List[SqEdge]:
    path = []
    while parent[s] is not None:
        e = parent[s]
        path.append(e)
        s = e[0]
    return path[::-1]


def _bad_cycle(sq: _Square, comp_of, s, d) -> Optional[List[SqEdge]]:
    """A closed walk at ``s`` whose outputs move delay ``d``, if one exists.

    Propagates ``d`` over the SCC of ``s``; all cycles fix ``d`` exactly when
    the propagated labels are consistent on every inner edge.
    """
    k = comp_of[s]
    labels = {s: d}
    parent = {s: None}
    todo = deque([s])
    while todo:
        x = todo.popleft()
        for e in sq.edges(x):
            y = e[4]
            if comp_of.get(y) != k:
                continue
            lab = act(labels[x], e[2], e[3])
            if y not in labels:
                labels[y] = lab
                parent[y] = e
                todo.append(y)
            elif labels[y] != lab:
                back = _inner_path(sq, comp_of, y, s) if y != s else []
                walk = _tree_path(parent, x) + [e] + back
                if _apply(d, walk) != d:
                    return walk
                walk = _tree_path(parent, y) + back
                assert walk and _apply(d, walk) != d
                return walk
    return None


def _shorten(path: List[SqEdge], d0: GroupWord):
    """Drop delay-neutral cycles from ``path``; return ``(prefix, cycle)`` at a
    cycle that moves the delay, or ``None`` if the path becomes simple."""
    path = list(path)
    while True:
        states = [path[0][0]] + [e[4] for e in path] if path else []
        first: Dict = {}
        rep = None
        for j, s in enumerate(states):
            if s in first:
                rep = (first[s], j)
                break
            first[s] = j
        if rep is None:
            return None
        i, j = rep
        di = _apply(d0, path[:i])
        dj = _apply(di, path[i:j])
        if di != dj:
            return path[:i], path[i:j]
        path = path[:i] + path[j:]


def _explore(sq: _Square, starts, bound: int):
    """Breadth-first search for a delay-moving cycle.

    Returns ``(prefix path, cycle)`` or ``None``.
    """
    comp_of, cyclic = sq.components(starts)
    parent: Dict = {}
    todo = deque()
    for s in starts:
        node = (s, IDENTITY)
        if node not in parent:
            parent[node] = None
            todo.append(node)
    checked = {}
    while todo:
        node = todo.popleft()
        s, d = node
        if comp_of[s] in cyclic:
            if (s, d) not in checked:
                checked[(s, d)] = _bad_cycle(sq, comp_of, s, d)
            cyc = checked[(s, d)]
            if cyc is not None:
                return _node_path(parent, node), cyc
        if glen(d) > bound:
            found = _shorten(_node_path(parent, node), IDENTITY)
            if found is not None:
                return found
        for e in sq.edges(s):
            nxt = (e[4], act(d, e[2], e[3]))
            if nxt not in parent:
                parent[nxt] = (node, e)
                todo.append(nxt)
    return None


def _node_path(parent, node) -> List[SqEdge]:
    path = []
    while parent[node] is not None:
        node, e = parent[node]
        path.append(e)
    return path[::-1]


def default_bound(t: _Machine) -> int:
    return 2 * max_output_len(t) * len(t.states) ** 3


# -- twinning property ------------------------------------------------------

def check_tp(t: _Machine, bound: Optional[int] = None) -> Tuple[bool, Optional[TpWitness]]:
    """Decide the twinning property; on failure return a replayed witness."""
    t = trim(t)
    bound = default_bound(t) if bound is None else bound
    sq = _Square(t, None)
    starts = [(i, j) for i in sorted(t.initials) for j in sorted(t.initials)]
    found = _explore(sq, starts, bound)
    if found is None:
        return True, None
    prefix, cycle = found
    start = prefix[0][0] if prefix else cycle[0][0]
    s = cycle[0][0]
    u, u1, u2 = _words(prefix)
    v, v1, v2 = _words(cycle)
    w = TpWitness(start[0], start[1], s[0], s[1], u, v, u1, u2, v1, v2)
    assert replays_tp(t, w), w
    return False, w


# -- weak twinning property -------------------------------------------------

def _path_in(t: _Machine, src: int, dst: int) -> Tuple[str, str]:
    """Input and output of a shortest run from ``src`` to ``dst``."""
    parent = {src: None}
    todo = deque([src])
    while todo and dst not in parent:
        q = todo.popleft()
        for c in sorted(t.sigma):
            for e in t.step(q, c):
                if e.dst not in parent:
                    parent[e.dst] = e
                    todo.append(e.dst)
    ins, outs = [], []
    q = dst
    while parent[q] is not None:
        e = parent[q]
        ins.append(e.letter)
        outs.append(e.out)
        q = e.src
    return "".join(reversed(ins)), "".join(reversed(outs))


def _wtp_witness(t, base, prefix, cycle) -> WtpWitness:
    p, r = cycle[0][0]
    u, u1, u2 = _words(prefix)
    v, v1, v2 = _words(cycle)
    if p != base:
        # (p,p) reaches (base,base) by running one path twice
        wi, wo = _path_in(t, p, base)
        u, u1, u2 = wi + u, wo + u1, wo + u2
    if not u:
        # here q2 = q1; pumping the cycle once gives a witness with u non-empty
        u, u1, u2 = v, v1, v2
    return WtpWitness(p, r, u, v, u1, u2, v1, v2)


def check_wtp(t: _Machine, bound: Optional[int] = None) -> Tuple[bool, Optional[WtpWitness]]:
    """Decide the weak twinning property; on failure return a replayed witness."""
    t = trim(t)
    bound = default_bound(t) if bound is None else bound
    index = scc(t)
    squares: Dict[int, _Square] = {}
    for base in sorted(t.states):
        k = index.scc_of[base]
        if k not in squares:
            squares[k] = _Square(t, index.components[k])
        found = _explore(squares[k], [(base, base)], bound)
        if found is not None:
            w = _wtp_witness(t, base, *found)
            assert replays_wtp(t, w), w
            return False, w
    return True, None


def is_weakly_twinned(t: _Machine) -> bool:
    return check_wtp(t)[0]


# -- brute-force oracle -----------------------------------------------------

def check_wtp_bruteforce(t: _Machine, max_pattern_len: int) -> Tuple[bool, Optional[WtpWitness]]:
    """Literal bounded check of the definition, for testing.

    Enumerates patterns with ``1 ≤ |u|, |v| ≤ max_pattern_len``.  Patterns
    are deduplicated on (states, delay of the concrete outputs), which loses
    nothing because the conclusion depends on the outputs only through that
    delay.  Independent of the SCC/cycle machinery used by :func:`check_wtp`.
    """
    t = trim(t)
    # shortest patterns first: violations are usually short, and the key space
    # of a non-twinned machine grows quickly with the length
    for L in range(1, max_pattern_len + 1):
        w = _bruteforce_upto(t, L)
        if w is not None:
            assert replays_wtp(t, w), w
            return False, w
    return True, None


def _bruteforce_upto(t: _Machine, L: int) -> Optional[WtpWitness]:
    letters = sorted(t.sigma)

    def grow(frontier, seen):
        nxt = []
        for (p, r, _), (u, x1, x2) in frontier:
            for c in letters:
                for e1 in t.step(p, c):
                    for e2 in t.step(r, c):
                        y1, y2 = x1 + e1.out, x2 + e2.out
                        key = (e1.dst, e2.dst, delay(y1, y2))
                        if key not in seen:
                            seen[key] = (u + c, y1, y2)
                            nxt.append((key, seen[key]))
        return nxt

    for q1 in sorted(t.states):
        seen_u: Dict = {}
        frontier = [((q1, q1, IDENTITY), ("", "", ""))]
        for _ in range(L):
            frontier = grow(frontier, seen_u)
            for (p, q2, d), (u, u1, u2) in frontier:
                if p != q1:
                    continue
                seen_v: Dict = {}
                vf = [((q1, q2, d), ("", u1, u2))]
                for _ in range(L):
                    vf = grow(vf, seen_v)
                    for (a, b, d2), (v, x1, x2) in vf:
                        if (a, b) == (q1, q2) and d2 != d:
                            return WtpWitness(q1, q2, u, v, u1, u2, x1[len(u1):], x2[len(u2):])
                    if not vf:
                        break
            if not frontier:
                break
    return None


# -- pumping ----------------------------------------------------------------

def _mismatch(x: str, y: str) -> bool:
    return any(a != b for a, b in zip(x, y))


def normalise_witness(w: WtpWitness) -> WtpWitness:
    """A witness whose delay grows at least linearly when ``v`` is pumped.

    Either ``|v1| ≠ |v2|`` with the shorter loop output on the side whose
    ``u``-output is not longer, or ``|v1| = |v2| > 0`` with a mismatch between
    ``u1`` and ``u2``.  Each rewrite appends copies of ``v`` to the ``u``
    part, which keeps all four runs valid.
    """
    def pump_u(k):
        return WtpWitness(w.q1, w.q2, w.u + w.v * k, w.v, w.u1 + w.v1 * k,
                          w.u2 + w.v2 * k, w.v1, w.v2)

    if len(w.v1) < len(w.v2):
        return pump_u(len(w.u1) - len(w.u2)) if len(w.u1) > len(w.u2) else w
    if len(w.v1) > len(w.v2):
        return pump_u(len(w.u2) - len(w.u1)) if len(w.u2) > len(w.u1) else w
    if not w.v1:
        raise ValueError("loop outputs are both empty: not a violation")
    for k in range(len(w.u1) + len(w.u2) + 3):
        if _mismatch(w.u1 + w.v1 * k, w.u2 + w.v2 * k):
            return pump_u(k)
    raise ValueError("no mismatch appears when pumping: not a violation")


def pump_witness(t: _Machine, w: WtpWitness, n: int, normalise: bool = True) -> int:
    """``|Δ(u1·v1ⁿ, u2·v2ⁿ)|`` for the (normalised) witness."""
    if not replays_wtp(t, w):
        raise ValueError(f"witness does not replay on {t.name or 'transducer'}")
    if normalise:
        w = normalise_witness(w)
    return glen(delay(w.u1 + w.v1 * n, w.u2 + w.v2 * n))
