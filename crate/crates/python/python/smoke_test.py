"""Smoke test for the pymonofitz extension module."""

import json
import math

import pymonofitz as pm


def main():
    rot = pm.LinearRelation.from_matrix([[0.0, 1.0], [-1.0, 0.0]])
    assert rot.n == 2 and rot.graph_dim == 2
    assert rot.is_maximally_monotone()
    assert not rot.is_paramonotone()
    assert not rot.is_rectangular()
    assert math.isinf(rot.fitzpatrick([1.0, 0.0], [0.0, 0.0]))

    ident = pm.LinearRelation.from_matrix([[1.0, 0.0], [0.0, 1.0]])
    assert abs(ident.fitzpatrick([1.0, 0.0], [1.0, 0.0]) - 1.0) < 1e-12
    report = ident.classify()
    assert report["strictly_monotone"] and report["rectangular"]

    assert abs(pm.cocoercivity_modulus(pm.shift_sum(1)) - 1.0 / 3.0) < 1e-9
    assert pm.cocoercivity_modulus(pm.volterra(4)) == 0.0
    d = pm.displacement(pm.cyclic_shift(3, 1))
    assert abs(pm.cocoercivity_modulus(d) - 0.5) < 1e-9
    assert pm.rotation_ball_fitzpatrick((1.0, 0.0), (0.0, 0.0)) == 1.0

    out = json.loads(pm.classify_spec('{"kind":"gallery","gallery_name":"volterra","param":8}'))
    assert out["paramonotone"] is False

    try:
        pm.classify_spec("{not json")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed spec accepted")

    print("pymonofitz smoke test passed")


if __name__ == "__main__":
    main()
