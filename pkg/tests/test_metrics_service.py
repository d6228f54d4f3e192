from cctree.models.record import MetricSet
from cctree.services.metrics_service import MetricsService
from cctree.services.parser_service import ParserService


def _metrics(source: str) -> MetricSet:
    return MetricsService.compute_metrics(ParserService.parse_method(source))


def test_empty_method():
    metrics = _metrics("void f() {}")
    assert (metrics.LOC, metrics.LLOC, metrics.NL, metrics.McCC, metrics.NOS, metrics.NUMPAR, metrics.NOI) == (
        1, 0, 0, 1, 0, 0, 0,
    )


def test_hello_world_after_state(hello_after):
    method = ParserService.find_method(ParserService.parse_compilation_unit(hello_after), "main")
    metrics = MetricsService.compute_metrics(method)
    assert metrics.NOS == 3
    assert metrics.NOI == 1
    assert metrics.NUMPAR == 1
    assert metrics.McCC == 1
    assert metrics.LLOC == 3
    assert metrics.LOC == 5


def test_if_else():
    metrics = _metrics("void f(int a) {\n    if (a > 0) {\n        a = 1;\n    } else {\n        a = 2;\n    }\n}")
    assert metrics.McCC == 2
    assert metrics.NL == 1
    assert metrics.NOC == 1
    assert metrics.NOS == 3
    assert metrics.LOC == 7


def test_else_if_chain_counts_once_for_nle():
    source = """int sign(int a) {
    if (a > 0) {
        return 1;
    } else if (a < 0) {
        return -1;
    }
    return 0;
}"""
    metrics = _metrics(source)
    assert metrics.NL == 2
    assert metrics.NLE == 1
    assert metrics.McCC == 3
    assert metrics.NOC == 2


def test_loops_and_short_circuit_operators():
    source = """int count(int[] xs, int limit) {
    int n = 0;
    for (int i = 0; i < xs.length && n < limit; i++) {
        while (xs[i] > 10 || xs[i] < -10) {
            xs[i] = xs[i] / 2;
        }
        n++;
    }
    for (int x : xs) {
        n = n + (x > 0 ? 1 : 0);
    }
    return n;
}"""
    metrics = _metrics(source)
    assert metrics.NOL == 3
    assert metrics.NOC == 1
    # 3 loops, 1 ternary, && and ||
    assert metrics.McCC == 7
    assert metrics.NL == 2
    assert metrics.NUMPAR == 2
    # declaration, for, while, assignment, n++, for-each, assignment, return
    assert metrics.NOS == 8


def test_invocations_are_counted_by_distinct_name():
    source = "void f(Log log) {\n    log.info(1);\n    log.info(2);\n    flush();\n    this.flush();\n}"
    assert _metrics(source).NOI == 2


def test_statements_on_one_line_share_a_logical_line():
    assert _metrics("void f(int a) { a = 1; a = 2; }").LLOC == 1


def test_metric_vector_order():
    vector = MetricSet(LLOC=1, LOC=2, McCC=3, NL=4, NLE=5, NOC=6, NOI=7, NOL=8, NOS=9, NUMPAR=10).as_vector()
    assert vector.tolist() == [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]
