"""Prints one pass/fail line per acceptance criterion at the end of the run."""

CRITERIA = {
    "01": "evaluation at each orbit is fixed-point homology",
    "02": "tensoring with a representable evaluates, naturally",
    "03": "Tor against representables vanishes in degrees 1 and 2",
    "04": "induced constant module is the represented module",
    "05": "restriction tensor identity",
    "06": "flatness on sampled short exact sequences",
    "07": "projection to a point is an isomorphism below n",
    "08": "finite chain colimits on every corpus filtration",
    "09": "finiteness criterion never reports a violation",
    "10": "finite subconjugacy covers",
    "11": "exact linear algebra gate",
}

_outcomes = {}


def _criterion(nodeid):
    if "test_acceptance.py::test_criterion_" not in nodeid:
        return None
    return nodeid.split("test_criterion_")[1][:2]


def pytest_runtest_logreport(report):
    key = _criterion(report.nodeid)
    if key is None:
        return
    if report.failed:
        _outcomes[key] = "FAIL"
    elif report.when == "call":
        _outcomes.setdefault(key, "PASS" if report.passed else "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key, label in CRITERIA.items():
        status = _outcomes.get(key, "NOT RUN")
        terminalreporter.write_line(f"criterion {int(key):2d}  {status:7s} {label}")
