"""Quick import-and-run pass over the bound operations.

Runs as a plain script so the suite has no test-framework dependency.
"""

import numpy as np

import glpath


def main() -> None:
    a = glpath.sample_glplus(3, seed=12)
    b = glpath.sample_glplus(3, seed=12, stream=1)
    assert np.linalg.det(a) > 0 and np.linalg.det(b) > 0

    cert = glpath.build_path(a, b)
    assert cert["feasible"]
    assert cert["min_det"] > 0
    assert cert["ratio"] >= 1 - 1e-6
    assert len(cert["nodes"]) >= 2
    np.testing.assert_allclose(cert["nodes"][0], a)
    np.testing.assert_allclose(cert["nodes"][-1], b)

    crossings, signs = glpath.split_segment(np.eye(2), -np.eye(2) + 0.05)
    assert len(signs) == len(crossings) + 1

    x = glpath.project_to_rank(np.diag([3.0, 2.0, 1.0]), 2)
    assert abs(np.linalg.det(x)) < 1e-9
    assert abs(glpath.distance_to_variety(np.diag([3.0, 2.0, 1.0])) - 1.0) < 1e-9

    nodes, length = glpath.cone_path(np.diag([2.0, 0.0]), np.diag([0.0, 1.0]))
    assert length > 0
    for node in nodes:
        assert abs(np.linalg.det(node)) <= 1e-9 * max(np.linalg.norm(node) ** 2, 1)

    est = glpath.estimate_constant(2, 20, seed=5, threads=2)
    again = glpath.estimate_constant(2, 20, seed=5, threads=1)
    assert est["max_ratio"] == again["max_ratio"]
    assert [r["ratio"] for r in est["records"]] == [
        r["ratio"] for r in again["records"]
    ]

    two = glpath.surgery2(np.eye(2), 2 * np.eye(2))
    assert abs(two["ratio"] - 1) < 1e-9

    print("python smoke: ok")


if __name__ == "__main__":
    main()
