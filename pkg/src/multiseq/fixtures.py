"""Small example transducers used throughout the tests and demos.

State ``i`` carries the label ``q<i>``.  Final states without an explicit
output have the empty final output.
"""

from .core import Transducer

AB = ("a", "b")


def _make(name, n, edges, initials, finals, sigma=AB, gamma=AB):
    return Transducer(sigma, gamma, range(n), edges, initials, finals, name,
                      {q: f"q{q}" for q in range(n)})


def t_a():
    """a^n ↦ a^(n-1) b for n > 0."""
    return _make("t_a", 2, [(0, "a", "", 1), (1, "a", "a", 1)], [0], {1: "b"})


def t_blank():
    """Collapse each block of b's to one b, except the last block."""
    return _make("t_blank", 2, [
        (0, "b", "", 1),
        (1, "a", "ba", 0),
        (0, "a", "a", 0),
        (1, "b", "", 1),
    ], [0], {0: "", 1: ""})


_SWAP_EDGES = [
    (0, "a", "aa", 1),
    (1, "a", "", 3),
    (0, "a", "ba", 2),
    (2, "b", "", 3),
    (1, "a", "a", 1),
    (2, "a", "a", 2),
]


def t_swap():
    """a^n σ ↦ σ a^n."""
    return _make("t_swap", 4, _SWAP_EDGES, [0], {3: ""})


def t_swap_star():
    """t_swap iterated over #-separated blocks."""
    abh = ("a", "b", "#")
    return _make("t_swap_star", 4, _SWAP_EDGES + [(3, "#", "#", 0)], [0], {3: ""},
                 sigma=abh, gamma=abh)


def t_fig2():
    """Weakly twinned but not twinned; its SCC {q0,q1,q2} is left for good on 'aa'."""
    return _make("t_fig2", 5, [
        (0, "a", "a", 1),
        (0, "a", "b", 2),
        (1, "a", "b", 2),
        (2, "b", "", 0),
        (2, "a", "a", 3),
        (3, "a", "a", 4),
        (4, "a", "a", 4),
    ], [0], {4: ""})


def t1_appendix():
    return _make("t1_appendix", 6, [
        (0, "a", "a", 1),
        (1, "a", "", 2),
        (0, "a", "b", 2),
        (2, "b", "", 0),
        (2, "a", "", 3),
        (3, "a", "", 4),
        (3, "a", "", 5),
        (4, "a", "", 5),
        (5, "b", "a", 3),
    ], [0], {5: ""})


def t2_appendix():
    return _make("t2_appendix", 7, [
        (0, "a", "a", 1),
        (1, "a", "a", 2),
        (0, "a", "b", 3),
        (1, "a", "b", 3),
        (2, "a", "b", 3),
        (3, "b", "", 0),
        (3, "a", "a", 4),
        (4, "a", "a", 5),
        (5, "a", "a", 6),
        (6, "a", "a", 6),
    ], [0], {6: ""})


_BUILDERS = {
    "t_a": t_a,
    "t_blank": t_blank,
    "t_swap": t_swap,
    "t_swap_star": t_swap_star,
    "t_fig2": t_fig2,
    "t1_appendix": t1_appendix,
    "t2_appendix": t2_appendix,
}


def fixtures():
    """Fresh copies of all seven example transducers, keyed by name."""
    return {name: build() for name, build in _BUILDERS.items()}
