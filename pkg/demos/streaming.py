"""Evaluate t_swap in one left-to-right pass with a constant number of state slots.

    python3 demos/streaming.py aaab
"""

import sys

from multiseq.fixtures import fixtures
from multiseq.decompose import decompose
from multiseq.stream import StreamSession, advisory_bits


def main(u):
    d = decompose(fixtures()["t_swap"])
    bits = advisory_bits(d, u)
    print(f"input {u!r}, advisory bits {bits}")
    s = StreamSession.open(d, bits)
    for c in u:
        s.push(c)
        chans = "  ".join(f"[{ch.content()}]" for ch in s.channels)
        print(f"  after {c!r}: slots={s.live} cells={s.cells} channels {chans}")
    print("outputs:", sorted(s.close()))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "aaab")
