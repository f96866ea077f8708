"""Prints one line per acceptance suite after a run that touched any of
them, keyed off the test name pattern test_aNN_*."""

import re

_LABELS = {
    1: "seeded constructors all validate",
    2: "relative matching map equals the boundary corner map",
    3: "boundary cotensor carries the matching object",
    4: "boxes against injectives stay Reedy cofibrations",
    5: "canonical box: level check fails, realization check holds",
    6: "exact equifibered realization equivalences are levelwise",
    7: "trivial fibrations are equifibered realization equivalences",
    8: "equifibered fibrations lift against the J window",
    9: "mapping-space dimensions match across both adjunctions",
    10: "realization homology equals normalized total homology",
    11: "sing and constant promotions are homotopically constant",
}

_PATTERN = re.compile(r"test_a(\d{2})_")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = {}
    for outcome in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(outcome, ()):
            m = _PATTERN.search(getattr(rep, "nodeid", "") or "")
            if m is None:
                continue
            num = int(m.group(1))
            if num in _LABELS:
                rows[num] = (outcome, getattr(rep, "duration", 0.0))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance summary")
    words = {"passed": "PASS", "failed": "FAIL", "error": "FAIL", "skipped": "SKIP"}
    for num in sorted(_LABELS):
        label = _LABELS[num]
        if num in rows:
            outcome, dur = rows[num]
            line = f"{num:2d} {words[outcome]}  ({dur:6.1f}s)  {label}"
        else:
            line = f"{num:2d} NOT RUN          {label}"
        terminalreporter.write_line(line)
