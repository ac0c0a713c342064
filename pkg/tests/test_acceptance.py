"""Acceptance battery: one test per criterion, each printing a PASS/FAIL line."""
import json
import time

import pytest

from blocktoeplitz import battery
from blocktoeplitz.cli import main

SEED = 1


def report_line(capsys, ident, name, passed, extra=""):
    with capsys.disabled():
        print(f"\n[{'PASS' if passed else 'FAIL'}] criterion {ident}: {name}{extra}")


CASES = [
    (1, battery.criterion_product_condition, 30.0),
    (2, battery.criterion_closure, None),
    (3, battery.criterion_maximality, None),
    (4, battery.criterion_circulants, None),
    (5, battery.criterion_reshuffle, None),
    (6, battery.criterion_diagonal, None),
    (7, battery.criterion_schur, None),
    (8, battery.criterion_nilpotent, None),
    (9, battery.criterion_invertibility, None),
]


@pytest.mark.parametrize("ident, criterion, time_limit", CASES, ids=[f"criterion_{c[0]}" for c in CASES])
def test_criterion(capsys, ident, criterion, time_limit):
    res = criterion(SEED)
    ok = res.passed and (time_limit is None or res.elapsed < time_limit)
    report_line(capsys, ident, res.name, ok, f" ({res.elapsed:.2f}s)")
    assert res.id == ident
    assert res.passed, json.dumps(res.details, indent=1)
    if time_limit is not None:
        assert res.elapsed < time_limit


def test_criterion_1_sample_size():
    res = battery.criterion_product_condition(SEED)
    assert res.details["pairs"] >= 500
    assert res.details["toeplitz_products"] > 0 and res.details["non_toeplitz_products"] > 0


def test_criterion_2_sample_size():
    res = battery.criterion_closure(SEED)
    assert all(v["draws"] >= 20 and v["pairs"] >= 200 for v in res.details.values())


def test_criterion_9_sample_size():
    res = battery.criterion_invertibility(SEED)
    assert res.details["schur_samples"] >= 100 and res.details["poly_samples"] >= 100


def test_criterion_10_determinism(capsys, tmp_path):
    t0 = time.perf_counter()
    codes, texts = [], []
    for k in range(2):
        out = tmp_path / f"suite{k}.json"
        codes.append(main(["suite", "--seed", str(SEED), "--output", str(out)]))
        texts.append(out.read_bytes())
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    ok = codes == [0, 0] and texts[0] == texts[1] and elapsed / 2 < 300
    report_line(capsys, 10, "suite reports byte-identical, runtime under 5 minutes", ok,
                f" ({elapsed / 2:.2f}s per run)")
    assert codes == [0, 0]
    assert texts[0] == texts[1]
    assert elapsed / 2 < 300
    report = json.loads(texts[0])
    assert report["seed"] == SEED and len(report["criteria"]) == 9


def test_suite_other_seed(capsys, tmp_path):
    out = tmp_path / "suite2.json"
    assert main(["suite", "--seed", "2", "--output", str(out)]) == 0
    capsys.readouterr()
    other = json.loads(out.read_text())
    assert other["passed"] and other["seed"] == 2
