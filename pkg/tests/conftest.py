import pytest

from wsgd import _backend


@pytest.fixture(params=_backend.available())
def backend(request):
    return _backend.load(request.param)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for cid, (ok, detail, info) in sorted(results.items(), key=lambda kv: _order(kv[0])):
        tag = "info" if info else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"{cid:<14} {tag:<4} {detail}")


def _order(cid):
    head, _, tail = cid.partition("/")
    return (int(head[1:]), tail)
