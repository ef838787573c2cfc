"""Build one constellation per family and summarize its key figures.

Run:  python3 demos/build_and_inspect.py
"""

import json

import numpy as np

from gpsk import (build_diag3, build_o, build_real8_product, build_v1,
                  build_v2, build_v3, build_v4, diversity_product, from_json,
                  lift_real4, rate, to_json)


def summarize(v):
    report = diversity_product(v)
    print(f"{v.family:12s}  M={v.dimension}  L={v.size:5d}  "
          f"rate={rate(v):.4f}  dp={report.value:.4f}  "
          f"fully_diverse={report.fully_diverse}")


def main():
    print("family        dims  size   rate     diversity product")
    summarize(build_o(8))
    summarize(build_v1(8))
    summarize(build_v2(8))
    summarize(build_v3(4))
    summarize(build_v4(2))
    summarize(build_diag3())
    summarize(lift_real4(build_v2(8)))
    summarize(build_real8_product(build_v2(4), build_v2(4)))

    # every codeword is unitary; spot-check one family
    v = build_v3(4)
    worst = max(np.linalg.norm(c.conj().T @ c - np.eye(2)) for c in v.codewords)
    print(f"\nV3(4) worst unitarity defect: {worst:.2e}")

    # constellations serialize to plain JSON and round-trip exactly
    blob = to_json(build_v1(6))
    again = from_json(blob)
    assert np.array_equal(again.codewords, build_v1(6).codewords)
    print(f"JSON round-trip OK ({len(blob)} bytes, "
          f"keys: {sorted(json.loads(blob))})")


if __name__ == "__main__":
    main()
