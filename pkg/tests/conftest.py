from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion reported as PASS/FAIL")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    label, title = mark.args
    _CRITERIA[label] = ("PASS" if call.excinfo is None else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")

    def order(label):
        head = label.rstrip("abcdefghijklmnopqrstuvwxyz")
        return int(head), label

    for label in sorted(_CRITERIA, key=order):
        status, title = _CRITERIA[label]
        terminalreporter.write_line(f"criterion {label:>3}: {status}  {title}")
