"""Classify the bundled transducers, then decompose the ones that allow it.

    python3 demos/walkthrough.py
"""

from multiseq.fixtures import fixtures
from multiseq.core import evaluate
from multiseq.decompose import WtpViolation, decompose, equiv_bounded
from multiseq.fstformat import serialize
from multiseq.twinning import check_tp, check_wtp
from multiseq.weakdet import weak_determinize


def main():
    fx = fixtures()
    for name, t in fx.items():
        tp, _ = check_tp(t)
        wtp, witness = check_wtp(t)
        print(f"{name:12s} states={len(t.states)}  TP={tp!s:5s}  WTP={wtp}")
        if witness is not None:
            print("  " + witness.describe().replace("\n", "\n  "))

    t = fx["t_fig2"]
    res = weak_determinize(t)
    print(f"\nW(t_fig2): {len(res.machine.states)} states, exhausted={res.exhausted}")
    for U, a, out, V in res.subset_edges():
        print(f"  {U} --{a}|{out or '-'}--> {V}")

    d = decompose(t)
    print(f"\nt_fig2 splits into {len(d)} sequential parts:")
    for p in d.parts:
        print(serialize(p))
    print("equivalent up to length 7:", equiv_bounded(d, t, 7)[0])
    for u in ("aaaa", "abaaaa", "aaba"):
        print(f"  {u!r}: {sorted(evaluate(t, u))} == {sorted(d.evaluate(u))}")

    try:
        decompose(fx["t_swap_star"])
    except WtpViolation as exc:
        print("\nt_swap_star is rejected:", exc)


if __name__ == "__main__":
    main()
