"""Quick end-to-end check of the Python bindings.

Build and install first:  pip install --no-build-isolation -e crates/python
Run with:                 python python/smoke_test.py
"""

from fractions import Fraction

import eulersum_py as es


def main():
    r = es.evaluate("M(1;2)", digits=30)
    assert r.value.startswith("2.40411380631918857079947632302"), r
    assert abs(float(r) - 2.4041138063191885) < 1e-15

    d = es.discover("M(2;1,1)", digits=50)
    assert d.closed_form == "3*z3", d
    assert d.relation[:4] == [1, 0, 0, -3]

    d = es.discover("M(1;3,6)", digits=200)
    assert d.over_lcm.startswith("1/4*(84*z2 - 108*z3"), d
    assert d.dynamic_range_log10 > 40

    assert es.exclusion_bound(8, 200) > 10

    trace, form = es.reduce("M(2;0,2)")
    assert trace[0] == "reduce-trace v1" and form == "11/4*z4"

    assert es.d_row(5) == [Fraction(-1, 5), 1, -2, 2]
    assert all(c < 0 for c in es.e_row(8))
    g, est = es.harmonic_stieltjes(3, 30)
    assert g.startswith("2.0034281719") and est.startswith("1.5772156649")

    # zeta(2)^2 = pi^4/36 and zeta(4) = pi^4/90
    rel = es.find_relation([es.constant("z4", 60), es.constant("z2^2", 60)], 60)
    assert rel == [5, -2], rel

    results = es.verify(tol=40, digits=60)
    assert results and all(ok for _, ok, _ in results), [r for r in results if not r[1]][:3]

    try:
        es.evaluate("M(1;2")
    except es.ParseError as e:
        assert "^" in str(e)
    else:
        raise AssertionError("parse error expected")
    try:
        es.discover("M(1;3,6)", digits=30)
    except (es.NoRelationError, es.EvaluationError):
        pass
    else:
        raise AssertionError("no relation expected at 30 digits")

    print(f"ok: {len(results)} corpus records verified")


if __name__ == "__main__":
    main()
