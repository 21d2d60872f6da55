import hashlib
import json

import pytest

from filiform.appendix import (
    WHICH,
    check_registry,
    check_row,
    data_text,
    duplicates,
    fingerprint_classes,
    registry,
)
from filiform.sampling import SMALL_RATIONALS, SplitMix64, stream

# bump only together with a deliberate edit of the data file
DATA_SHA256 = "bee114ceb26cd81f48699afbcb5dce78504fc112a2303a08fe14475daa2b3963"


def test_data_checksum():
    assert hashlib.sha256(data_text().encode("utf-8")).hexdigest() == DATA_SHA256


def test_row_counts():
    assert [len(registry(w)) for w in WHICH] == [100, 34, 10]


def test_unknown_registry():
    with pytest.raises(ValueError):
        registry("C")


def test_lambda_row_with_free_slots():
    row = next(r for r in registry("A") if r.printed == "(1,0,1,0,1,0,a7,a8,0)")
    assert row.params == ("1", "0", "1", "0", "1", "0", "alpha7", "alpha8", "0")
    assert row.free == ("alpha7", "alpha8")
    assert row.nonzero == ()


def test_mu_row_constraints():
    row = registry("B")[31]
    assert row.printed == "(1,1,g3,g4,g5,0,0)"
    assert row.nonzero == ("gamma3", "gamma5")
    with pytest.raises(ValueError, match="gamma5 != 0"):
        row.instantiate({"gamma3": 1, "gamma4": 0, "gamma5": 0})
    with pytest.raises(ValueError, match="needs a value"):
        row.instantiate({"gamma3": 1})


def test_eta_rows():
    rows = registry("T2")
    assert [r.params for r in rows][:2] == [("0", "0", "0", "0"), ("0", "0", "0", "1")]
    assert rows[9].params == ("1", "1", "beta3", "0") and rows[9].nonzero == ("beta3",)
    flagged = [r.index for r in rows if r.notes]
    assert flagged == [1, 6]
    assert all(len(r.params) == 4 for r in rows)


def test_blank_slot_note():
    row = registry("A")[95]
    assert row.printed == "(1,1,0,0,1,a6,,a8,0)"
    assert row.params[6] == "0"
    assert row.notes


def test_duplicates():
    assert duplicates("A") == [(18, 65)]
    assert duplicates("B") == duplicates("T2") == []


def test_every_row_has_right_arity():
    arity = {"A": 9, "B": 7, "T2": 4}
    for w in WHICH:
        for r in registry(w):
            assert len(r.params) == arity[w]
            assert set(r.nonzero) <= set(r.free)


def test_splitmix_reference_values():
    # published SplitMix64 outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_samples_deterministic_and_constrained():
    row = registry("B")[31]
    first = row.samples(42)
    assert first == row.samples(42)
    assert len(first) == 5
    assert first != row.samples(43)
    for p in first:
        assert p.values[2] != 0 and p.values[4] != 0
        assert all(v == 0 or v in SMALL_RATIONALS for v in p.values)


def test_fixed_row_has_single_sample():
    assert len(registry("T2")[0].samples(0)) == 1


def test_streams_are_independent():
    a, b = stream(0, 1), stream(0, 2)
    assert a.next() != b.next()


def test_check_row_report_shape():
    report = check_row(registry("T2")[9], seed=0, samples=5)
    assert report["row"] == 10
    assert report["leibniz_violations"] == 0
    assert report["ideal_ok"] and report["quotient_ok"] and report["action_ok"]
    assert len(report["samples"]) == 5
    assert report["nonzero"] == ["beta3"]
    json.dumps(report)


def test_t2_registry_all_clean():
    reports = check_registry("T2", seed=0)
    assert [r["row"] for r in reports] == list(range(1, 11))
    assert all(r["leibniz_violations"] == 0 for r in reports)
    assert all(r["ideal_ok"] and r["quotient_ok"] and r["action_ok"] for r in reports)


def test_fingerprint_classes_groups_equal_rows():
    reports = [
        {"row": 1, "fingerprint": {"a": 1}},
        {"row": 2, "fingerprint": {"a": 2}},
        {"row": 3, "fingerprint": {"a": 1}},
    ]
    assert fingerprint_classes(reports) == [[1, 3]]
