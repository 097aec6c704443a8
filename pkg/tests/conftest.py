import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from raag import DefiningGraph, GroupElement, parse_word, path_graph  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def p5():
    return path_graph(5)


@pytest.fixture(scope="session")
def el(p5):
    def make(text, graph=p5):
        return GroupElement(graph, parse_word(text, graph))
    return make


@pytest.fixture(scope="session")
def edge_graph():
    return DefiningGraph(["v1", "v2"], [("v1", "v2")])


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Criterion number -> one-line PASS/FAIL summary, printed at the end."""
    if not hasattr(request.config, "_acceptance"):
        request.config._acceptance = {}
    return request.config._acceptance


def pytest_terminal_summary(terminalreporter):
    results = getattr(terminalreporter.config, "_acceptance", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
