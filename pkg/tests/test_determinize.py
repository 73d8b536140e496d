from multiseq.core import is_sequential, relation_upto
from multiseq.determinize import (SubsetState, common_prefix, det_step,
                                  determinize, initial_subset)


def test_det_step_fig2(fx):
    t = fx["t_fig2"]
    out, U1 = det_step(t, initial_subset(t), "a")
    assert out == "" and U1 == SubsetState([(1, "a"), (2, "b")])
    out, U = det_step(t, U1, "b")
    assert out == "b" and U == SubsetState([(0, "")])
    assert det_step(t, SubsetState([(4, "")]), "b") is None


def test_subset_state_is_canonical():
    assert SubsetState([(2, "b"), (1, "a"), (2, "b")]) == SubsetState([(1, "a"), (2, "b")])
    assert SubsetState([(1, "a")]).render() == "{(q1,a)}"


def test_common_prefix():
    assert common_prefix(["abc", "abd", "ab"]) == "ab"
    assert common_prefix([]) == ""


def test_determinize_sequential_inputs(fx):
    for name in ("t_a", "t_blank"):
        d = determinize(fx[name])
        assert d.exhausted
        m = d.machine()
        assert is_sequential(m)
        assert relation_upto(m, 8) == relation_upto(fx[name], 8)


def test_determinize_fig2_diverges(fx):
    assert not determinize(fx["t_fig2"], max_residual_len=8).exhausted


def test_determinize_swap_diverges(fx):
    # the twinning property fails, so the construction has no finite closure
    assert not determinize(fx["t_swap"]).exhausted


def test_edges_are_input_deterministic(fx):
    d = determinize(fx["t_fig2"], max_residual_len=8)
    keys = [(U, c) for U, c, _, _ in d.edges]
    assert len(keys) == len(set(keys))


def test_residuals_have_empty_common_prefix(fx):
    for t in fx.values():
        d = determinize(t, max_states=300)
        for U in d.states[1:]:
            assert common_prefix(w for _, w in U) == ""


def test_determinize_corpus_twinned_exhausts(corpus):
    from multiseq.twinning import check_tp
    checked = 0
    for t in corpus:
        if check_tp(t)[0]:
            d = determinize(t)
            assert d.exhausted, t.name
            m = d.machine()
            assert is_sequential(m)
            assert relation_upto(m, 6) == relation_upto(t, 6)
            checked += 1
    assert checked > 50
