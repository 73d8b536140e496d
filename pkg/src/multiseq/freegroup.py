"""Reduced words of the free group over an output alphabet, and delays.

A group word is a sequence of signed letters ``(letter, +1)`` or
``(letter, -1)`` with no adjacent cancelling pair.  Plain output words embed
with all-positive signs; :func:`delay` is the only place where two plain words
meet the group.
"""

from __future__ import annotations

from typing import Iterable, Tuple

SignedLetter = Tuple[str, int]


class GroupWord:
    """An irreducible word over ``Γ ∪ Γ⁻¹``.  Immutable; compare with ``==``."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[SignedLetter] = ()):
        # callers that already hold a reduced tuple go through _from_reduced
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def _from_reduced(cls, letters: tuple) -> "GroupWord":
        obj = object.__new__(cls)
        object.__setattr__(obj, "letters", letters)
        return obj

    @classmethod
    def positive(cls, word: str) -> "GroupWord":
        """Embed a plain word with all signs positive."""
        return cls._from_reduced(tuple((c, 1) for c in word))

    def __setattr__(self, name, value):
        raise AttributeError("GroupWord is immutable")

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return concat(self, other)

    def __invert__(self) -> "GroupWord":
        return inverse(self)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "ε"
        return "".join(c if s > 0 else c + "^-1" for c, s in self.letters)

    def __repr__(self) -> str:
        return f"GroupWord({str(self)!r})"

    def split_positive(self) -> Tuple[str, str]:
        """Return ``(x, y)`` with ``self == x⁻¹y`` when the word has that shape.

        Every delay between two plain words has this shape.  Raises
        ``ValueError`` otherwise.
        """
        i = 0
        n = len(self.letters)
        while i < n and self.letters[i][1] < 0:
            i += 1
        if any(s < 0 for _, s in self.letters[i:]):
            raise ValueError(f"{self} is not of the form x^-1 y")
        x = "".join(c for c, _ in reversed(self.letters[:i]))
        y = "".join(c for c, _ in self.letters[i:])
        return x, y


IDENTITY = GroupWord._from_reduced(())


def _reduce(letters: Iterable[SignedLetter]) -> tuple:
    stack: list = []
    for c, s in letters:
        if s not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {s!r}")
        if stack and stack[-1][0] == c and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((c, s))
    return tuple(stack)


def reduce(raw: Iterable[SignedLetter]) -> GroupWord:
    """Free reduction by stack cancellation."""
    return GroupWord(raw)


def concat(x: GroupWord, y: GroupWord) -> GroupWord:
    # both operands are reduced: cancellation can only happen at the seam
    a, b = x.letters, y.letters
    i, j = len(a), 0
    while i > 0 and j < len(b) and a[i - 1][0] == b[j][0] and a[i - 1][1] == -b[j][1]:
        i -= 1
        j += 1
    return GroupWord._from_reduced(a[:i] + b[j:])


def inverse(x: GroupWord) -> GroupWord:
    return GroupWord._from_reduced(tuple((c, -s) for c, s in reversed(x.letters)))


def lcp(v: str, w: str) -> str:
    n = min(len(v), len(w))
    i = 0
    while i < n and v[i] == w[i]:
        i += 1
    return v[:i]


def delay(v: str, w: str) -> GroupWord:
    """Δ(v, w) = v⁻¹w, reduced."""
    k = len(lcp(v, w))
    return GroupWord._from_reduced(
        tuple((c, -1) for c in reversed(v[k:])) + tuple((c, 1) for c in w[k:])
    )


def act(d: GroupWord, left: str, right: str) -> GroupWord:
    """The delay after both words are extended: ``left⁻¹ · d · right``.

    For ``d = Δ(x, y)`` this equals ``Δ(x·left, y·right)``.
    """
    return concat(concat(inverse(GroupWord.positive(left)), d), GroupWord.positive(right))


def glen(x: GroupWord) -> int:
    return len(x.letters)


def parse(text: str) -> GroupWord:
    """Inverse of ``str()``: ``"b^-1cd"`` -> b⁻¹cd; ``"ε"`` or ``""`` -> identity."""
    if text in ("", "ε"):
        return IDENTITY
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if text.startswith("^-1", i + 1):
            out.append((c, -1))
            i += 4
        else:
            out.append((c, 1))
            i += 1
    return GroupWord(out)
