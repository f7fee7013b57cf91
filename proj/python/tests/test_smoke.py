import math

import numpy as np
import pytest

import expgraph as eg


def two_cycle():
    return eg.Graph.from_arcs(2, [(0, 1), (1, 0)])


def test_degree_table():
    assert [eg.select_degree_exact(e) for e in (1e-5, 1e-10, 1e-15)] == [8, 13, 17]
    assert eg.select_degree_bound(1e-5) == 24
    assert eg.psi_weights(2) == pytest.approx([2.5, 1.5, 1.0])


def test_two_cycle_solvers():
    p = eg.normalize_to_stochastic(two_cycle())
    assert p.is_stochastic()
    for solve in (eg.gexpm, eg.gexpmq):
        r = solve(p, 0, 1e-6)
        assert r.converged
        assert abs(r.x[0] - math.cosh(1)) + abs(r.x[1] - math.sinh(1)) <= 1e-6
    imv = eg.expmimv(p, 0, 17, 2)
    assert imv.x[0] == pytest.approx(math.cosh(1), abs=1e-10)


def test_forest_fire_against_oracle():
    g = eg.forest_fire(300, p=0.4, seed=3)
    assert g.num_nodes == 300
    p = eg.normalize_to_stochastic(g)
    truth = eg.dense_taylor_oracle(p, 5)
    assert truth.sum() == pytest.approx(eg.psi_weights(17)[0])
    r = eg.gexpmq(p, 5, 1e-5)
    assert eg.one_norm_error(r.x, truth) <= 1e-5
    assert eg.precision_at_k(r.x, truth, 10, "seed+neighbors", p, 5) >= 0.9
    full = eg.expmimv(p, 5, 9, 300)
    assert np.abs(np.array([full.x.get(i, 0.0) for i in range(300)]) - eg.horner_full(p, 5, 9)).sum() < 1e-12


def test_laplacian_two_cycle():
    g = two_cycle()
    p = eg.normalize_to_stochastic(g)
    lap = eg.laplacian_column(eg.gexpm(p, 0, 1e-10).x, g, 0)
    ref = eg.dense_normalized_laplacian_exp(g, 0)
    assert lap[0] == pytest.approx(ref[0], abs=1e-9)
    assert lap[1] == pytest.approx(ref[1], abs=1e-9)


def test_io_round_trip(tmp_path):
    g = eg.random_regular(20, 3, seed=1)
    path = str(tmp_path / "g.smat")
    eg.write_smat(g, path)
    h = eg.read_graph(path)
    assert np.array_equal(g.col_ptr, h.col_ptr)
    assert np.array_equal(g.row_idx, h.row_idx)
    bad = tmp_path / "bad.smat"
    bad.write_text("2 2 1\n0 1 1\n")
    with pytest.raises(eg.ParseError):
        eg.read_graph(str(bad))


def test_errors():
    p = eg.normalize_to_stochastic(two_cycle())
    with pytest.raises(ValueError):
        eg.gexpm(p, 0, 2.0)
    with pytest.raises(IndexError):
        eg.gexpm(p, 9, 1e-4)
    heavy = eg.Graph.from_arcs(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        eg.normalize_to_stochastic(heavy)
