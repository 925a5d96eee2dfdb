"""Deterministic synthetic dataset generators for benchmarks and demos."""

from __future__ import annotations

import numpy as np

from .tables import INT, STRING, ColumnTable, Schema, save_tsv

QA_SCHEMA = Schema([
    ("PostId", INT),
    ("Type", STRING),
    ("Tag", STRING),
    ("UserId", INT),
    ("AnswerId", INT),
])

_TAGS = ("Java", "Python", "C++", "SQL", "Go", "Rust")


def random_edges(n_nodes: int, n_edges: int, seed: int = 0) -> ColumnTable:
    """Uniform random directed edge table with endpoints in [0, n_nodes)."""
    if n_nodes < 0 or n_edges < 0:
        raise ValueError("sizes must be >= 0")
    if n_nodes == 0 and n_edges > 0:
        raise ValueError("cannot draw edges from an empty node range")
    rng = np.random.default_rng(seed)
    src = rng.integers(0, max(n_nodes, 1), size=n_edges, dtype=np.int64)
    dst = rng.integers(0, max(n_nodes, 1), size=n_edges, dtype=np.int64)
    return ColumnTable(Schema([("src", INT), ("dst", INT)]), [src, dst])


def qa_forum(n_questions: int, n_answers: int, seed: int = 0,
             n_users: int | None = None, accept_prob: float = 0.9) -> ColumnTable:
    """Posts table shaped like a question-answering forum dump.

    Question rows carry the PostId of their accepted answer in AnswerId
    (-1 when nothing was accepted); answer rows inherit their question's
    tag and carry -1 in AnswerId.  Post ids are 1..Q for questions and
    Q+1..Q+A for answers.
    """
    if n_questions < 0 or n_answers < 0:
        raise ValueError("sizes must be >= 0")
    rng = np.random.default_rng(seed)
    if n_users is None:
        n_users = max(2, (n_questions + n_answers) // 3)

    q_user = rng.integers(1, n_users + 1, size=n_questions)
    q_tag = rng.choice(len(_TAGS), size=n_questions,
                       p=_tag_weights(len(_TAGS)))
    if n_questions == 0 and n_answers > 0:
        raise ValueError("answers require at least one question")
    a_question = (rng.integers(0, n_questions, size=n_answers)
                  if n_answers else np.empty(0, dtype=np.int64))
    a_user = rng.integers(1, n_users + 1, size=n_answers)

    # Accepted answer per question: one of its answers, chosen uniformly.
    answers_of: dict[int, list[int]] = {}
    for j in range(n_answers):
        answers_of.setdefault(int(a_question[j]), []).append(j)
    accepted = np.full(n_questions, -1, dtype=np.int64)
    for q, answer_rows in answers_of.items():
        if rng.random() < accept_prob:
            pick = answer_rows[int(rng.integers(0, len(answer_rows)))]
            accepted[q] = n_questions + 1 + pick

    rows = []
    for q in range(n_questions):
        rows.append((q + 1, "question", _TAGS[int(q_tag[q])],
                     int(q_user[q]), int(accepted[q])))
    for j in range(n_answers):
        q = int(a_question[j])
        rows.append((n_questions + 1 + j, "answer", _TAGS[int(q_tag[q])],
                     int(a_user[j]), -1))
    return ColumnTable.from_rows(QA_SCHEMA, rows)


def _tag_weights(k: int) -> np.ndarray:
    w = 1.0 / np.arange(2, k + 2, dtype=np.float64)
    return w / w.sum()


def generate_synthetic(kind: str, out_path, seed: int = 0, **sizes) -> ColumnTable:
    """Write a synthetic dataset as TSV; deterministic for a fixed seed."""
    if kind == "random-edges":
        table = random_edges(sizes.get("n_nodes", 1000),
                             sizes.get("n_edges", 5000), seed=seed)
    elif kind == "qa-forum":
        table = qa_forum(sizes.get("n_questions", 100),
                         sizes.get("n_answers", 200), seed=seed)
    else:
        raise ValueError(f"unknown synthetic kind {kind!r}")
    save_tsv(table, out_path)
    return table
