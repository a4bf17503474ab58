import pytest

_RESULTS: dict[str, list[tuple[str, bool, str]]] = {}


class CriterionRecorder:
    def __init__(self, cid: str):
        self.cid = cid

    def check(self, label: str, ok: bool, detail: str = "") -> bool:
        _RESULTS.setdefault(self.cid, []).append((label, bool(ok), detail))
        return bool(ok)


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    return CriterionRecorder(marker.args[0] if marker else request.node.name)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion id")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_RESULTS):
        checks = _RESULTS[cid]
        ok = all(passed for _, passed, _ in checks)
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {cid}")
        for label, passed, detail in checks:
            if not passed:
                tr.write_line(f"        failed: {label} {detail}")
