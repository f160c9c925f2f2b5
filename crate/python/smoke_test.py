"""Smoke test for the qkchev extension module.

Uses an installed `qkchev` if there is one, otherwise the library built by
`cargo build --release -p qkchev-py --features extension-module`.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys


def load():
    try:
        import qkchev

        return qkchev
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for name in ("libqkchev_py.so", "libqkchev_py.dylib", "qkchev_py.dll"):
        path = root / "target" / "release" / name
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("qkchev", str(path))
            spec = importlib.util.spec_from_loader("qkchev", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("qkchev extension not found; build it first")


def main():
    q = load()

    w = q.WeylElement("A", [2, 1])
    assert w.length() == 1
    assert w.inverse() == w
    assert w.edge_kind("(1,2)") == "quantum"

    grass = q.chevalley_grassmannian(w, 1)
    assert grass.label == "GrassA_theta"
    terms = {(tuple(win), tuple(qexp)): coeff for win, qexp, coeff in grass.terms()}
    assert terms[((2, 1), ())] == [([-1, 0], "1")]
    assert terms[((1, 2), ((1, 1),))] == [([-1, 0], "-1")]

    # The closed form agrees with the projected full-flag product.
    v = q.WeylElement("A", [3, 4, 1, 2])
    oracle = q.project(q.chevalley_gb(v, 2), [2])
    assert q.chevalley_grassmannian(v, 2) == oracle
    assert q.SchubertCombo.from_json(oracle.to_json()) == oracle

    two = q.chevalley_twostep(q.WeylElement("A", [4, 1, 3, 2]), 1, 3, 3)
    assert two.label.startswith("TwoStep_")

    entries = q.chain("C", 2, 2)
    assert [lvl for _, lvl, _ in entries] == [1, 1, 2, 1]

    subsets = json.loads(q.admissible_subsets(q.WeylElement("A", [2, 1, 3]), 1))
    assert len(subsets) == 4

    ok, report = q.run_suite("grassC", 2)
    assert ok and report.startswith("family\tn\tk")

    try:
        q.chevalley_grassmannian(q.WeylElement("A", [1, 3, 2]), 1)
    except ValueError as e:
        assert "minimal coset" in str(e)
    else:
        raise AssertionError("non-minimal input accepted")

    print("qkchev smoke test: ok")


if __name__ == "__main__":
    main()
