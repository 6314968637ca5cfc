"""Smoke test for the hgm_hodge extension module.

Build with `cargo build -p hgm-hodge-python --release`, copy
`target/release/libhgm_hodge.so` next to this file as `hgm_hodge.so`
(or put it on PYTHONPATH), then run `python3 python/smoke_test.py`.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import hgm_hodge as hh


def main():
    g = hh.GammaVector("3,-1,-1,-1")
    assert g.entries() == [3, -1, -1, -1]
    assert (g.r, g.s, g.n, g.natural_length, g.level) == (1, 3, 3, 3, 3)
    for method in ("zigzag", "genfun", "cone"):
        assert g.hodge(method) == [1, 1, 1, 0], method
    assert g.hodge_polynomial("plus") == [1, 1, 1]
    assert g.hodge_polynomial("minus") == [1, 1, 1]
    assert g.zigzag() == [1, 2, 3, 2, 1, 0, 1]
    assert g.reduced_hodge() == [1, 1]
    assert g.weight_census(1) == [1, 4]
    assert g.normalized_volume() == "3"
    assert g.valuation_profile(7) == [0, 0, 0, 1, 1, 2, 2]
    assert g.verify_padic(7) == (True, True)
    assert g.plot("ascii").endswith(" |-------\n")

    d = g.to_datum()
    assert d.alpha() == ["1/3", "2/3", "1"]
    assert d.beta() == ["1", "1", "1"]
    assert d.to_gamma() == g
    red, offset = d.reduce()
    assert red.alpha() == ["1/3", "2/3"] and offset == 0
    assert hh.HypergeometricDatum("1/3,2/3,1;1,1,1") == d

    v = hh.GammaVector("5,2,-6,-1")
    assert v.hodge_polynomial() == [1, 4, 2]
    # slots: 0 -> 2, 1 -> 5, 2 -> 6, 3 -> 1; the facet opposite the q=6 slot
    assert v.face_polynomial([0, 1, 3]) == [1, 3, 2]

    w = hh.GammaVector.from_entries([5, -2, -2, -1])
    apexes, removed = w.apexes()
    assert apexes == [[0, 0, 0], [2, 0, -1], [1, -1, -1], [2, -1, -2], [1, -2, -2]]
    assert removed == [3, 2, 1, 2, 1]
    assert w.verify_partition(3)

    assert hh.hodge_vector("1/3,2/3,1;1,1,1", "cone") == [1, 1, 1, 0]
    assert hh.hodge_vector("6,-3,-2,-1") == [1, 4, 1, 0]
    assert [str(x) for x in hh.gammas_up_to(3)] == ["1,-1", "2,-1,-1", "3,-2,-1", "3,-1,-1,-1"]

    for bad in ("2,-1", "1/3,1;1,1", "x"):
        try:
            hh.hodge_vector(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"{bad} accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
