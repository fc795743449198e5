"""Prints one PASS/FAIL line per acceptance criterion as they run."""


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_c"):
        return
    status = "PASS" if report.passed else "FAIL"
    print("\nACCEPTANCE %s: %s" % (name[len("test_") :], status), flush=True)
