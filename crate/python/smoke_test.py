"""Import the built extension and check a few known values.

    cargo build -p gibbspath-py --release --features extension-module
    python3 python/smoke_test.py [path/to/libgibbspath_py.so]
"""

import importlib.util
import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent
DIAMOND_KL = 0.3278133254727377


def load(lib):
    tmp = pathlib.Path(tempfile.mkdtemp())
    target = tmp / "gibbspath.so"
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("gibbspath", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    lib = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "target/release/libgibbspath_py.so"
    gp = load(lib)
    edges = [(1, 2), (1, 3), (2, 4), (3, 4)]

    p = gp.PathDistribution.from_edges(4, edges, [1.0, 0.0, 1.0, 0.0], alpha=1.0)
    q = gp.PathDistribution.from_edges(4, edges, [0.0, 0.0, 0.0, 0.0])
    top = 1.0 / (1.0 + math.exp(-2.0))

    assert p.num_nodes == 4 and p.edges == edges
    assert close(p.log_partition(), math.log(math.exp(2.0) + 1.0))
    assert close(math.exp(p.log_prob([1, 2, 4])), top)
    assert all(close(a, b) for a, b in zip(p.marginals(), [top, 1 - top, top, 1 - top]))
    assert close(p.hitting()[0], 1.0) and close(p.hitting()[3], 1.0)
    assert close(p.kl(q), DIAMOND_KL)
    assert close(p.kl(p), 0.0)
    assert p.optimal() == ([1, 2, 4], 2.0)

    draws = p.sample(20000, seed=3)
    assert all(y in ([1, 2, 4], [1, 3, 4]) for y in draws)
    assert abs(sum(y == [1, 2, 4] for y in draws) / len(draws) - top) < 0.02
    assert p.sample(5, seed=3) == draws[:5]

    g = p.grad_log_prob([1, 2, 4])
    assert close(g[0], 1 - top) and close(g[1], -(1 - top))

    gamma, delta = p.soft_sample(0.5, seed=1)
    assert len(gamma) == 4 and len(delta) == 4

    same = gp.PathDistribution.from_json(
        '{"num_nodes": 4, "edges": [[1, 2, 1.0], [1, 3, 0.0], [2, 4, 1.0], [3, 4, 0.0]]}'
    )
    assert close(same.log_partition(), p.log_partition())

    lat = gp.PathDistribution.from_lattice("dtw", 2, 2, [0.0] * 4)
    assert lat.num_nodes == 4
    grids = lat.sample_alignments(3, seed=0)
    assert all(g[0] == 1 and g[3] == 1 for g in grids)

    for build, code in [
        (lambda: gp.PathDistribution.from_edges(3, [(1, 2), (3, 2)], [0.0, 0.0]), "EdgeNotForward"),
        (lambda: gp.PathDistribution.from_edges(4, edges, [0.0] * 4, alpha=-1.0), "NonPositiveAlpha"),
        (lambda: gp.PathDistribution.from_json("{nope"), "ParseError"),
        (lambda: p.sample_alignments(1), "KindMismatch"),
    ]:
        try:
            build()
        except gp.GibbsPathError as e:
            assert e.args[0] == code, e.args
        else:
            raise AssertionError(f"expected {code}")

    print("smoke test passed")


if __name__ == "__main__":
    main()
