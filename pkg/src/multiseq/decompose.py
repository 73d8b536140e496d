"""From a weakly twinned transducer to a finite union of sequential ones.

Per initial state: restrict, trim, weakly determinise, split along the
condensation paths, expand final output sets into plain transducers and trim
again.  Every resulting part is sequential.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple, Union

from .core import (Edge, MultiTransducer, Transducer, _Machine, evaluate, is_sequential,
                   relation_upto, renumber, replace, restrict_initials, signature, trim,
                   union, words_upto)
from .graph import BoundExceeded, multi_to_union_parts, split_components
from .twinning import WtpWitness, check_wtp
from .weakdet import weak_determinize

__all__ = ["BoundExceeded", "Decomposition", "Provenance", "WtpViolation", "InclusionError",
           "decompose", "equiv_bounded", "non_multiseq_certificate"]


class WtpViolation(ValueError):
    """The input is not weakly twinned, hence not multi-sequential."""

    def __init__(self, witness: WtpWitness, name: str = ""):
        self.witness = witness
        super().__init__(f"{name or 'transducer'} is not weakly twinned:\n{witness.describe()}")


class InclusionError(ValueError):
    def __init__(self, word: str):
        self.word = word
        super().__init__(f"inclusion fails on input {word!r}")


class Provenance(NamedTuple):
    initial: int               # initial state of the source
    path_index: int            # index among the condensation paths of W(T_i)
    path: Tuple[Edge, ...]     # transient edges of W(T_i) followed by the part
    choice: int                # which word of each final output set


@dataclass
class Decomposition:
    parts: List[Transducer]
    provenance: List[Provenance] = field(default_factory=list)
    sigma: Tuple[str, ...] = ()
    gamma: Tuple[str, ...] = ()
    name: str = ""

    def __len__(self):
        return len(self.parts)

    def evaluate(self, u: str) -> FrozenSet[str]:
        out: FrozenSet[str] = frozenset()
        for p in self.parts:
            out |= evaluate(p, u)
        return out

    def as_transducer(self) -> Transducer:
        if not self.parts:
            return Transducer(self.sigma, self.gamma, (), (), (), {}, self.name)
        return union(self.parts, sigma=self.sigma, gamma=self.gamma, name=self.name)


def decompose(t: _Machine, max_states: int = 100_000, max_delay: Optional[int] = None,
              max_copies: int = 10_000) -> Decomposition:
    """Sequential parts whose union realises ``t``.

    Raises :class:`WtpViolation` when ``t`` is not weakly twinned and
    :class:`BoundExceeded` if a construction hits its cap anyway.  Parts are
    deduplicated up to isomorphism; the order follows (initial state, path,
    choice).
    """
    t = trim(t)
    ok, witness = check_wtp(t)
    if not ok:
        raise WtpViolation(witness, t.name)
    parts: List[Transducer] = []
    prov: List[Provenance] = []
    seen = set()
    for i in sorted(t.initials):
        ti = trim(restrict_initials(t, [i]))
        if not ti.states:
            continue
        res = weak_determinize(ti, max_states=max_states, max_delay=max_delay)
        if not res.exhausted:
            raise BoundExceeded(f"weak determinisation stopped ({res.stop_reason}) "
                                f"from initial state {t.label(i)}")
        for k, (path, comp) in enumerate(split_components(res.machine)):
            for j, part in enumerate(multi_to_union_parts(comp, max_copies)):
                part = renumber(trim(part))
                if not part.states:
                    continue
                key = signature(part)
                if key in seen:
                    continue
                seen.add(key)
                assert is_sequential(part)
                parts.append(replace(part, name=f"{t.name or 'T'}.{len(parts)}", labels={}))
                prov.append(Provenance(i, k, path, j))
    return Decomposition(parts, prov, t.sigma, t.gamma, t.name)


Relational = Union[Transducer, MultiTransducer, Decomposition]


def _table(x: Relational, L: int, sigma) -> Dict[str, FrozenSet[str]]:
    if isinstance(x, Decomposition):
        table = {u: frozenset() for u in words_upto(sigma, L)}
        for p in x.parts:
            for u, ws in relation_upto(p, L, sigma).items():
                table[u] = table[u] | ws
        return table
    return relation_upto(x, L, sigma)


def equiv_bounded(a: Relational, b: Relational, L: int = 7) -> Tuple[bool, Optional[str]]:
    """Compare the two relations on every input of length ≤ ``L``.

    Returns ``(True, None)`` or ``(False, w)`` with ``w`` the least input, in
    length-then-lexicographic order, on which the output sets differ.
    """
    if set(a.sigma) != set(b.sigma):
        raise ValueError("input alphabets differ")
    sigma = sorted(a.sigma)
    ta, tb = _table(a, L, sigma), _table(b, L, sigma)
    bad = [u for u in ta if ta[u] != tb[u]]
    return (False, min(bad, key=lambda u: (len(u), u))) if bad else (True, None)


def non_multiseq_certificate(t: _Machine, f_sub: _Machine, L: int = 6) -> bool:
    """True when ``f_sub`` is not weakly twinned and is included in ``t``.

    A non-multi-sequential sub-relation rules out a multi-sequential ``t``.
    Inclusion is checked on inputs up to length ``L``; a failure raises
    :class:`InclusionError`.
    """
    sigma = sorted(set(t.sigma) | set(f_sub.sigma))
    small, big = relation_upto(f_sub, L, sigma), relation_upto(t, L, sigma)
    for u in sorted(small):
        if not small[u] <= big[u]:
            raise InclusionError(u)
    return not check_wtp(f_sub)[0]
