import pytest

from starbook.journal import JournalRecord, append_record, load_records


def _record(budget, outcome):
    return JournalRecord(
        timestamp=JournalRecord.now_timestamp(),
        family="K",
        params={"n": 6},
        order_policy="identity",
        profile="strict",
        budget=budget,
        outcome=outcome,
        nodes=123,
        wall_time=0.5,
    )


def test_append_and_load(tmp_path):
    path = tmp_path / "journal.jsonl"
    append_record(path, _record(4, "unsat"))
    append_record(path, _record(5, "sat"))
    records = load_records(path)
    assert [r.budget for r in records] == [4, 5]
    assert records[1].outcome == "sat"
    assert load_records(tmp_path / "missing.jsonl") == []


def test_truncated_final_line_is_skipped(tmp_path):
    path = tmp_path / "journal.jsonl"
    append_record(path, _record(4, "unsat"))
    with open(path, "a") as fh:
        fh.write('{"timestamp": "2026-01-01T00:00:00+00:00", "family": "K", "par')
    records = load_records(path)
    assert len(records) == 1 and records[0].budget == 4


def test_mid_file_corruption_is_an_error(tmp_path):
    path = tmp_path / "journal.jsonl"
    append_record(path, _record(4, "unsat"))
    with open(path, "a") as fh:
        fh.write("garbage\n")
    append_record(path, _record(5, "sat"))
    with pytest.raises(ValueError):
        load_records(path)
