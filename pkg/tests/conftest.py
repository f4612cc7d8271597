import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vbq import kernels  # noqa: E402
from vbq.algebra import (  # noqa: E402
    cyclic_group,
    linear_biquandle,
    swap_operator,
    virtual,
    wada_from_group,
)

AVAILABLE_BACKENDS = sorted(kernels.BACKENDS)


@pytest.fixture(params=AVAILABLE_BACKENDS)
def backend(request):
    return request.param


def lin3(f=(1, 2, 0)):
    return virtual(linear_biquandle(3, 1, 2), f)


def wada3(f=(0, 2, 1)):
    return virtual(wada_from_group(cyclic_group(3)), f)


def swap3(f=(1, 0, 2)):
    return virtual(swap_operator(3), f)


STRUCTURES = {"linear": lin3, "wada": wada3, "swap": swap3}


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion

_criteria: dict[str, dict] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    label, title = marker.args
    entry = _criteria.setdefault(label, {"title": title, "ok": True, "n": 0})
    entry["n"] += 1
    if call.excinfo is not None:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s[2:])):
        e = _criteria[label]
        terminalreporter.write_line(f"{label} {'PASS' if e['ok'] else 'FAIL'}  {e['title']}")
