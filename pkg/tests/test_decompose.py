import pytest

from multiseq.core import (Transducer, evaluate, is_sequential, isomorphic, max_output_len,
                           relation_upto, union, with_alphabets)
from multiseq.decompose import (Decomposition, InclusionError, WtpViolation, decompose,
                                equiv_bounded, non_multiseq_certificate)
from multiseq.twinning import check_wtp, replays_wtp
from oracles import all_words


def _m(n, edges, final):
    return Transducer("ab", "ab", range(n), edges, [0], {final: ""})


# expected components of trim(split(W(t_fig2))), up to renaming
FIG2_PARTS = [
    _m(5, [(0, "a", "", 1), (1, "a", "", 2), (2, "a", "aba", 3), (1, "b", "b", 0),
           (2, "b", "ab", 0), (3, "a", "a", 4), (4, "a", "a", 4)], 4),
    _m(4, [(0, "a", "", 1), (1, "a", "", 2), (2, "a", "baa", 3), (1, "b", "b", 0),
           (2, "b", "ab", 0), (3, "a", "a", 3)], 3),
]

_T2_PREFIX = [(0, "a", "", 1), (1, "a", "", 2), (2, "a", "", 3),
              (1, "b", "b", 0), (2, "b", "ab", 0), (3, "b", "aab", 0)]
T2_PARTS = [
    _m(7, _T2_PREFIX + [(3, "a", "aaba", 4), (4, "a", "a", 5), (5, "a", "a", 6), (6, "a", "a", 6)], 6),
    _m(6, _T2_PREFIX + [(3, "a", "abaa", 4), (4, "a", "a", 5), (5, "a", "a", 5)], 5),
    _m(5, _T2_PREFIX + [(3, "a", "baaa", 4), (4, "a", "a", 4)], 4),
]


def _matches(parts, expected):
    left = list(expected)
    for p in parts:
        hit = next((e for e in left if isomorphic(p, e)), None)
        if hit is None:
            return False
        left.remove(hit)
    return not left


def test_fig2_two_parts(fx):
    d = decompose(fx["t_fig2"])
    assert len(d) == 2
    assert _matches(d.parts, FIG2_PARTS)


def test_t2_three_parts(fx):
    d = decompose(fx["t2_appendix"])
    assert len(d) == 3
    assert _matches(d.parts, T2_PARTS)


def test_swap_star_raises_with_witness(fx):
    with pytest.raises(WtpViolation) as info:
        decompose(fx["t_swap_star"])
    assert replays_wtp(fx["t_swap_star"], info.value.witness)


def test_blank_single_part(fx):
    d = decompose(fx["t_blank"])
    assert len(d) == 1
    assert isomorphic(d.parts[0], fx["t_blank"])


def test_swap_parts_split_on_last_letter(fx):
    d = decompose(fx["t_swap"])
    assert len(d) == 2
    assert equiv_bounded(d, fx["t_swap"], 8) == (True, None)
    # one part handles words ending in a, the other words ending in b
    for p in d.parts:
        last = {u[-1] for u in all_words("ab", 6) if evaluate(p, u)}
        assert len(last) == 1


def test_parts_sequential_and_equivalent(fx):
    for name, t in fx.items():
        if not check_wtp(t)[0]:
            continue
        d = decompose(t)
        assert all(is_sequential(p) for p in d.parts)
        assert equiv_bounded(d, t, 7) == (True, None), name
        assert len(d.provenance) == len(d.parts)


def test_corpus_decompositions(corpus):
    done = 0
    for t in corpus:
        if check_wtp(t)[0]:
            d = decompose(t)
            assert all(is_sequential(p) for p in d.parts)
            assert equiv_bounded(d, t, 7)[0], t.name
            done += 1
    assert done > 80


def test_multiple_initial_states(fx):
    u = union([fx["t_fig2"], fx["t_a"]])
    d = decompose(u)
    assert {p.initial for p in d.provenance} == set(u.initials)
    assert equiv_bounded(d, u, 7) == (True, None)


def test_parts_are_deduplicated(fx):
    u = union([fx["t_blank"], fx["t_blank"]])
    assert len(decompose(u)) == 1


def test_empty_relation():
    t = Transducer("a", "a", [0], [], [0], {})
    d = decompose(t)
    assert len(d) == 0 and d.evaluate("") == set()
    assert equiv_bounded(d, t, 3) == (True, None)


def test_equiv_bounded_counterexample(fx):
    ok, u = equiv_bounded(fx["t_swap"], fx["t_blank"], 3)
    assert not ok
    # t_blank accepts the empty word, t_swap does not
    assert u == ""
    assert evaluate(fx["t_swap"], u) != evaluate(fx["t_blank"], u)


def test_equiv_bounded_least_counterexample():
    a = Transducer("ab", "ab", [0], [(0, "a", "a", 0), (0, "b", "b", 0)], [0], {0: ""})
    b = Transducer("ab", "ab", [0], [(0, "a", "a", 0), (0, "b", "a", 0)], [0], {0: ""})
    assert equiv_bounded(a, b, 4) == (False, "b")


def test_equiv_reflexive(fx):
    for t in fx.values():
        assert equiv_bounded(t, t, 5) == (True, None)


def test_equiv_alphabet_mismatch(fx):
    with pytest.raises(ValueError):
        equiv_bounded(fx["t_swap_star"], fx["t_swap"], 3)


def test_certificate(fx):
    star = fx["t_swap_star"]
    assert non_multiseq_certificate(star, star)
    big = union([star, with_alphabets(fx["t_blank"], "#", "#")])
    assert non_multiseq_certificate(big, star)
    assert not non_multiseq_certificate(fx["t_swap"], fx["t_swap"])


def test_certificate_needs_inclusion(fx):
    with pytest.raises(InclusionError):
        non_multiseq_certificate(fx["t_blank"], fx["t_swap"])


def test_as_transducer(fx):
    d = decompose(fx["t1_appendix"])
    assert relation_upto(d.as_transducer(), 7) == relation_upto(fx["t1_appendix"], 7)


def test_bounded_variation_on_parts(fx):
    for name in ("t_swap", "t_fig2", "t2_appendix"):
        for p in decompose(fx[name]).parts:
            m = max_output_len(p)
            pairs = [(u, w) for u, ws in relation_upto(p, 6).items() for w in ws]
            for u1, v1 in pairs:
                for u2, v2 in pairs:
                    k1 = len(_lcp(u1, u2))
                    k2 = len(_lcp(v1, v2))
                    assert len(v1) + len(v2) - 2 * k2 <= m * (len(u1) + len(u2) - 2 * k1 + 2)


def _lcp(x, y):
    i = 0
    while i < min(len(x), len(y)) and x[i] == y[i]:
        i += 1
    return x[:i]


def test_decomposition_container():
    d = Decomposition([], [], ("a",), ("a",), "x")
    assert len(d) == 0
    assert d.as_transducer().states == frozenset()
