"""Seeded random transducers for property tests and benchmarks."""

from __future__ import annotations

import random
from typing import List, Optional

from .core import Transducer, trim


def random_transducer(rng: random.Random, max_states: int = 5, sigma: str = "ab",
                      gamma: str = "ab", max_out: int = 2, density: float = 0.35,
                      name: Optional[str] = None) -> Transducer:
    """A trimmed real-time transducer with one initial state (state 0).

    Each (state, letter) gets 0 to 2 edges, so non-determinism is common.
    Retries until the trimmed result is non-empty.
    """
    while True:
        n = rng.randint(min(2, max_states), max_states)
        edges = []
        for q in range(n):
            for c in sigma:
                k = 0 if rng.random() > density * 2 else (1 if rng.random() < 0.6 else 2)
                for _ in range(k):
                    out = "".join(rng.choice(gamma) for _ in range(rng.randint(0, max_out)))
                    edges.append((q, c, out, rng.randrange(n)))
        finals = {}
        for q in range(n):
            if rng.random() < 0.4:
                finals[q] = "".join(rng.choice(gamma) for _ in range(rng.randint(0, 1)))
        t = trim(Transducer(sigma, gamma, range(n), edges, [0], finals, name,
                            {q: f"q{q}" for q in range(n)}))
        if t.states:
            return t


def random_corpus(n: int = 200, seed: int = 0, **kwargs) -> List[Transducer]:
    rng = random.Random(seed)
    return [random_transducer(rng, name=f"r{seed}_{k}", **kwargs) for k in range(n)]
