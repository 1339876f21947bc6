"""Smoke test for the `bicay` extension module.

Build first, e.g. `maturin develop -m crates/python/Cargo.toml --release`,
or put the compiled library on PYTHONPATH as `bicay.so`.
"""
import json

import bicay


def main():
    h = bicay.Group(3, 2, 1)
    assert h.order == 81
    assert h.word("a*b") == (1, 1, 0)
    assert h.format(h.word("a*b")) == "a^1 b^1 c^0"
    assert h.element_order(h.word("b*a^2")) == 9
    x, y = h.word("a^2*b"), h.word("b^2*a^5")
    assert h.multiply(h.multiply(x, y), h.inverse(y)) == x
    assert h.commutator(h.word("a"), h.word("b")) == (0, 0, 1)

    assert bicay.solve_k(7, 1) == [3, 5]
    assert bicay.solve_k(5, 1) == []

    sigma = bicay.Sigma(3, 1, 1)
    assert sigma.vertices == 54 and len(sigma.edges()) == 81
    report = json.loads(sigma.analyze())
    assert report == {
        "vertex_transitive": True,
        "edge_transitive": True,
        "s_regular": 2,
        "aut_order": 324,
        "stabilizer_order": 6,
    }, report
    assert sigma.normalizer_order() == 324
    assert sigma.is_normal_edge_transitive()
    assert json.loads(sigma.header())["k"] == 0

    s3, s5 = bicay.Sigma(7, 2, 1, 3), bicay.Sigma(7, 2, 1, 5)
    perm = bicay.isomorphism(s3.vertices, s3.edges(), s5.vertices, s5.edges())
    assert perm is not None and sorted(perm) == list(range(4802))
    target = {frozenset(e) for e in s5.edges()}
    assert all(frozenset((perm[u], perm[v])) in target for u, v in s3.edges())

    petersen = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    petersen += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    assert bicay.automorphism_order(10, petersen) == 120
    assert json.loads(bicay.analyze(10, petersen))["s_regular"] == 3

    try:
        bicay.Sigma(5, 2, 1)
    except ValueError as e:
        assert "no admissible k" in str(e)
    else:
        raise AssertionError("Sigma(5,2,1) should fail")

    ok, text = bicay.run_verification("fast")
    assert ok, text
    print("smoke test passed")


if __name__ == "__main__":
    main()
