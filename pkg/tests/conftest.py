import json
from functools import lru_cache
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from detgen.expr import build

settings.register_profile("detgen", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("detgen")

SMALL = ("Z(1)", "Z(2)", "Z(3)", "Z(4)", "Z(6)", "Z(8)", "Z(9)", "Z(12)", "EA(2,2)", "EA(2,3)",
         "EA(3,2)", "Z(2) x Z(4)", "Z(2) x Z(6)", "S(3)", "D(4)", "D(5)", "D(6)", "Q(8)", "A(4)",
         "U(3,2)", "ST(2,3)", "T(2,3)", "Q(12)", "S(3) x Z(2)", "S(3) x Z(3)", "Z(3) x Z(5)")

ORACLE_FILE = Path(__file__).parent / "data" / "oracle_values.json"


@lru_cache(maxsize=None)
def group(expr: str):
    return build(expr)


def small_groups(min_order: int = 1):
    exprs = [e for e in SMALL if group(e).order >= min_order]
    return st.sampled_from(exprs).map(group)


def oracle_rows():
    return json.loads(ORACLE_FILE.read_text())


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    results: dict[str, bool] = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when != "call" and outcome == "passed":
                continue
            key = nodeid.split("test_criterion_")[1].split("[")[0]
            results[key] = results.get(key, True) and outcome == "passed"
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            num, _, name = key.partition("_")
            verdict = "PASS" if results[key] else "FAIL"
            terminalreporter.write_line(f"criterion {int(num):>2} {verdict}  {name.replace('_', ' ')}")
