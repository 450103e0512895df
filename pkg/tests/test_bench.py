from kcluster.bench import CSV_HEADER, BenchRow, bench_instance, run_bench, time_solve, to_csv
from kcluster.clique_structure import maximal_cliques


def test_header_is_exact():
    assert to_csv([]) == "n,k,class,connected,median_ns\n"
    assert CSV_HEADER == ("n", "k", "class", "connected", "median_ns")


def test_rows_render():
    text = to_csv([BenchRow(10, 2, "proper", True, 1234)])
    assert text.splitlines()[1] == "10,2,proper,true,1234"


def test_k_above_n_is_skipped():
    rows = run_bench([5], [3, 9], classes=("interval",), reps=1)
    assert [(r.n, r.k) for r in rows] == [(5, 3)]


def test_instances_are_seeded_and_dense():
    a = bench_instance(200, "proper", seed=4)
    assert a == bench_instance(200, "proper", seed=4)
    assert a.is_stair()
    # cliques must be large enough for k up to 8 to matter
    assert max(maximal_cliques(a).sizes) > 8


def test_single_node_cluster_is_cheap():
    f = bench_instance(50, "interval", seed=0)
    assert time_solve(f, 1, "interval", False, reps=3) > 0
