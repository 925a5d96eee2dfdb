"""Synthetic generator determinism and shape contracts."""

import pytest

from graphtables import select, Predicate
from graphtables.synth import generate_synthetic, qa_forum, random_edges


def test_fixed_seed_is_byte_identical(tmp_path):
    a = tmp_path / "a.tsv"
    b = tmp_path / "b.tsv"
    generate_synthetic("qa-forum", a, seed=9, n_questions=50, n_answers=80)
    generate_synthetic("qa-forum", b, seed=9, n_questions=50, n_answers=80)
    assert a.read_bytes() == b.read_bytes()


def test_qa_row_count():
    t = qa_forum(100, 200, seed=1)
    assert t.n_rows == 300
    assert t.schema.names == ["PostId", "Type", "Tag", "UserId", "AnswerId"]


def test_qa_accepted_answers_join_consistently():
    t = qa_forum(40, 90, seed=2)
    questions = select(t, Predicate("Type", "=", "question"))
    answers = select(t, Predicate("Type", "=", "answer"))
    answer_ids = set(answers.column("PostId").tolist())
    for row in questions.to_rows():
        accepted = row[4]
        assert accepted == -1 or accepted in answer_ids


def test_random_edges_ranges():
    t = random_edges(1000, 5000, seed=3)
    assert t.n_rows == 5000
    for col in ("src", "dst"):
        vals = t.column(col)
        assert vals.min() >= 0 and vals.max() < 1000


def test_zero_nodes_with_edges_rejected():
    with pytest.raises(ValueError):
        random_edges(0, 5)


def test_unknown_kind(tmp_path):
    with pytest.raises(ValueError):
        generate_synthetic("mystery", tmp_path / "x.tsv")
