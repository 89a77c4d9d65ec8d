import os
import random

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=15, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


# criterion number -> (name, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def record(number: int, name: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (name, passed, detail)
    print(f"criterion {number:2d} {'PASS' if passed else 'FAIL'} {name} [tolerance: exact] {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        name, passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if passed else 'FAIL'} {name} [tolerance: exact] {detail}")
