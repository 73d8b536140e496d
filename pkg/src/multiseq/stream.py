"""Constant-memory evaluation of a multi-sequential relation.

Given the sequential parts of a decomposition and one advisory bit per part
(does the part accept the whole input?), the input can be read once, left to
right, while every enabled part writes to its own append-only channel.  The
only mutable working data is one current state per part, whatever the input
length; :attr:`StreamSession.cells` exposes that count.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .core import Transducer
from .decompose import Decomposition

Parts = Union[Decomposition, Sequence[Transducer]]


class StreamError(RuntimeError):
    pass


class DeadPart(StreamError):
    """An enabled part has no transition: the advisory did not match the input."""


class NotFinal(StreamError):
    """An enabled part stopped in a non-final state."""


def _parts(parts: Parts) -> List[Transducer]:
    return list(parts.parts if isinstance(parts, Decomposition) else parts)


class _Program:
    """Read-only transition tables of one sequential part."""

    __slots__ = ("initial", "delta", "finals")

    def __init__(self, t: Transducer):
        if len(t.initials) > 1 or any(len(es) > 1 for es in t.out_edges.values()):
            raise ValueError(f"part {t.name!r} is not sequential")
        self.initial = next(iter(t.initials), None)
        self.delta: Dict[Tuple[int, str], Tuple[str, int]] = {
            (e.src, e.letter): (e.out, e.dst) for e in t.edges}
        self.finals = dict(t.finals)

    def accepts(self, u: str) -> bool:
        q = self.initial
        for c in u:
            if q is None:
                return False
            step = self.delta.get((q, c))
            q = step[1] if step else None
        return q is not None and q in self.finals


def advisory_bits(parts: Parts, u: str) -> Tuple[int, ...]:
    """Bit ``i`` is 1 iff part ``i`` accepts ``u`` (a separate pass over ``u``)."""
    return tuple(int(_Program(p).accepts(u)) for p in _parts(parts))


class Channel:
    """Append-only output buffer; written cells are never touched again."""

    __slots__ = ("_chunks", "_length", "enabled")

    def __init__(self, enabled: bool):
        self._chunks: List[str] = []
        self._length = 0
        self.enabled = enabled

    def write(self, w: str) -> int:
        """Append ``w``; returns the position of its first letter."""
        pos = self._length
        if w:
            self._chunks.append(w)
            self._length += len(w)
        return pos

    def __len__(self):
        return self._length

    def content(self) -> str:
        return "".join(self._chunks)


class StreamSession:
    __slots__ = ("_programs", "_live", "_closed", "channels", "advisory")

    def __init__(self, parts: Parts, advisory: Sequence[int]):
        progs = [_Program(p) for p in _parts(parts)]
        if len(advisory) != len(progs):
            raise ValueError(f"advisory has {len(advisory)} bits for {len(progs)} parts")
        self._programs = progs
        self.advisory = tuple(int(bool(b)) for b in advisory)
        # the working memory: one state id per part (None when disabled or dead)
        self._live: List[Optional[int]] = [p.initial if b else None
                                           for p, b in zip(progs, self.advisory)]
        self._closed = False
        self.channels = tuple(Channel(bool(b)) for b in self.advisory)

    @classmethod
    def open(cls, parts: Parts, advisory: Sequence[int]) -> "StreamSession":
        return cls(parts, advisory)

    @property
    def cells(self) -> int:
        """Mutable non-channel cells in use: the state slots plus the closed flag."""
        return len(self._live) + 1

    @property
    def live(self) -> Tuple[Optional[int], ...]:
        return tuple(self._live)

    def push(self, letter: str) -> None:
        if self._closed:
            raise StreamError("session is closed")
        for i, prog in enumerate(self._programs):
            q = self._live[i]
            if q is None:
                continue
            step = prog.delta.get((q, letter))
            if step is None:
                raise DeadPart(f"part {i} has no {letter!r}-transition")
            self.channels[i].write(step[0])
            self._live[i] = step[1]

    def feed(self, word: str) -> None:
        for c in word:
            self.push(c)

    def close(self) -> FrozenSet[str]:
        """Flush final outputs; returns the set of enabled channel contents."""
        if self._closed:
            raise StreamError("session is closed")
        for i, prog in enumerate(self._programs):
            q = self._live[i]
            if q is None:
                continue
            if q not in prog.finals:
                raise NotFinal(f"part {i} ends in non-final state {q}")
            self.channels[i].write(prog.finals[q])
        self._closed = True
        return frozenset(ch.content() for ch in self.channels if ch.enabled)


def run(parts: Parts, u: str) -> FrozenSet[str]:
    """Advisory pass, then one streaming pass."""
    s = StreamSession.open(parts, advisory_bits(parts, u))
    s.feed(u)
    return s.close()
