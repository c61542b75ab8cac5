"""Smoke test for the specsupp extension module."""

import json

import specsupp


def main():
    a2 = specsupp.Algebra.builtin("a2")
    assert a2.spectrum() == ["I1", "I2"]

    s1 = a2.module("S1")
    assert s1.supp() == ["I1"]
    assert s1.supp_ex() == (["I1", "I2"], True)

    i1 = a2.module("I1")
    assert i1.dim == 2
    assert s1.direct_sum(a2.module("I2")).dim_vector == [1, 1]
    assert a2.module("Lambda").is_isomorphic(s1.direct_sum(i1))
    assert sorted((m.dim, k) for m, k in a2.module("I1^2+I2").decompose()) == [(1, 1), (2, 2)]

    d = a2.module("I1+I2").decomposition_lattice()
    assert d["atoms"] == ["I1", "I2"]
    assert d["dot"].count("->") == 4

    closures = [a2.localising_closure([a2.module(s)]) for s in ("S1", "S2")]
    assert [c["stable"] for c in closures] == [False, True]

    z = specsupp.Algebra.builtin("a2", p=3).ziegler_spectrum(dmax=4, check=True)
    assert [p["name"] for p in z["points"]] == ["S1", "S2", "I1"]
    assert z["correspondence"]["subsets_checked"] == 8

    datum = {
        "space": {"points": ["p", "q"]},
        "sigma": [
            {"module": "0", "subset": []},
            {"module": "I1", "subset": ["p"]},
            {"module": "I2", "subset": ["q"]},
        ],
        "exact": False,
        "callback": "supp",
        "point_map": {"p": "I1", "q": "I2"},
    }
    report = a2.verify_datum(json.dumps(datum))
    assert all(ax["passed"] for ax in report["axioms"]), report
    assert a2.universal_map(json.dumps(datum))["map"] == {"p": "I1", "q": "I2"}

    ring = specsupp.BoolRing(["a", "b", "c"])
    assert len(ring) == 8 and ring.stone_unit_is_iso()
    assert ring.disjointify([0, 1, 2], [[0, 1], [1, 2]]) == [[0, 1], [2]]

    try:
        a2.module("S9")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown module accepted")

    print("specsupp smoke test: ok")


if __name__ == "__main__":
    main()
