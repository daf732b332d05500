"""Smoke test for the pyconifold extension module.

Build first, e.g. `maturin develop -m crates/python/Cargo.toml`, or
`cargo build --release -p conifold-dt-python --features extension-module`
and copy target/release/libpyconifold.so to pyconifold.so on PYTHONPATH.
"""

import json

import pyconifold as pc


def main():
    q = pc.RatFun("q")
    assert str(pc.RatFun("q^2") - pc.RatFun("1")) == "q^2 - 1"
    assert (q * q) / q == q
    assert pc.RatFun("q^2/(q^2-1)").evaluate_at_prime(3) == "3/2"

    a = pc.universal_series(6, "exp")
    assert a == pc.universal_series(6, "product")
    assert a.coeff(1, 0) == pc.RatFun("-q/(q^2-1)")
    assert pc.Series.from_json(a.to_json()) == a

    f = pc.Series(4, [((1, 0), q), ((1, 1), pc.RatFun("2"))])
    assert pc.log_pleth(pc.exp_pleth(f)) == f

    assert pc.classify_chamber("-1,1", "1,0") == "PT_Y"
    assert json.loads(pc.chamber_json("1,-1"))["witness"] == [1, 1]
    zeta, eps = pc.canonical_stability("DT_Y")
    assert pc.z_series(zeta, eps, 6) == pc.z_series(zeta, eps, 6, "framed")

    report = json.loads(pc.count((2, 1), 2))
    assert report["count"] == 46 and report["match"]

    pt = pc.named_series("PT", 4, 2)
    assert pc.vertex_pt(4, 2) == pt.negate_s()
    assert pc.named_series("HILB", 4, 2) * pt == pc.named_series("DT", 4, 2)

    rows = pc.run_verify("identities", 4)
    assert rows and all(passed for _, _, passed, _ in rows)
    print("pyconifold smoke test passed")


if __name__ == "__main__":
    main()
