"""Smoke test for the pyjscheme extension. Run with pytest or as a script."""
import json

import pyjscheme


def test_graph_spectrum_and_bound():
    g = pyjscheme.Graph(9, 4, [1, 3])
    assert (g.v, g.degree, g.classes) == (126, 60, [1, 3])
    spec = json.loads(g.spectrum())
    assert spec["tau"] == "-8"
    rb = json.loads(g.ratio_bound())
    assert rb["omega_if_equality"] == "17/2"


def test_clique_witness_blocks():
    size, proved, blocks = pyjscheme.Graph(7, 3, [2]).max_clique(budget=10.0)
    assert size == 7 and proved
    assert all(len(b) == 3 and 1 <= min(b) and max(b) <= 7 for b in blocks)


def test_fano_is_steiner():
    fano = "7 3 fano\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n"
    assert pyjscheme.is_steiner(fano, 2)
    assert not pyjscheme.is_steiner(fano.replace("3 5 6", "3 5 7"), 2)


def test_classify_nine_four():
    r = json.loads(pyjscheme.classify(9, 4, budget=30.0))
    assert r["verdict"] == "non-separating"
    assert r["sync_evidence"]["verdict"] == "non-synchronizing"


def test_bad_arguments_raise_value_error():
    try:
        pyjscheme.Graph(3, 5, [1])
    except ValueError:
        return
    raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"{name}: ok")
