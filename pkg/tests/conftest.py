from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from opm4.families import FamilyId, all_family_ids
from opm4.perm import all_perms

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

perms = st.sampled_from(all_perms(4))
family_ids = st.sampled_from(all_family_ids())
prefixes = st.sampled_from([p for p in all_perms(4) if p(1) == 1])
nonzero_rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40).filter(lambda r: r != 0)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" or "test_acceptance.py::test_criterion_" not in rep.nodeid:
                continue
            name = rep.nodeid.split("::")[-1]
            num = int(name.split("_")[2])
            lines.append((num, f"criterion {num:2d} {outcome.upper():6s} {name}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
