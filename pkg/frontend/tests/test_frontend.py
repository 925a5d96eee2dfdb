"""Binding contracts: pure delegation, handle semantics, error wrapping."""

import pytest

import graphdesk
import graphtables as engine
from graphdesk import FrontendError, Workspace
from graphtables.synth import generate_synthetic

POSTS_SCHEMA = "PostId:int,Type:str,Tag:str,UserId:int,AnswerId:int"


@pytest.fixture(scope="module")
def posts_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "posts.tsv"
    generate_synthetic("qa-forum", path, seed=11, n_questions=80, n_answers=150)
    return str(path)


@pytest.fixture
def edges_path(tmp_path):
    path = tmp_path / "edges.tsv"
    path.write_text("1\t2\n2\t3\n")
    return str(path)


def test_load_reports_row_count(posts_path):
    handle = graphdesk.LoadTableTSV(POSTS_SCHEMA, posts_path)
    assert handle.row_count == 230
    assert handle.column_names[0] == "PostId"


def test_bad_path_carries_engine_diagnostic():
    with pytest.raises(FrontendError) as err:
        graphdesk.LoadTableTSV(POSTS_SCHEMA, "/no/such/file.tsv")
    assert "file.tsv" in str(err.value)


def test_schema_mismatch_names_line_and_column(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("notanint\tquestion\tJava\t1\t2\n")
    with pytest.raises(FrontendError) as err:
        graphdesk.LoadTableTSV(POSTS_SCHEMA, str(path))
    assert isinstance(err.value.engine_error, engine.ParseError)
    assert err.value.engine_error.line == 1
    assert err.value.engine_error.column == "PostId"


def test_select_delegates_exactly(posts_path):
    handle = graphdesk.LoadTableTSV(POSTS_SCHEMA, posts_path)
    got = graphdesk.Select(handle, "Type=question")
    direct = engine.select(
        engine.load_tsv(posts_path, engine.Schema.parse(POSTS_SCHEMA)),
        engine.Predicate("Type", "=", "question"))
    assert got.rows() == direct.to_rows()


def test_select_always_false_is_empty(posts_path):
    handle = graphdesk.LoadTableTSV(POSTS_SCHEMA, posts_path)
    assert len(graphdesk.Select(handle, "Tag=COBOL")) == 0


def test_to_graph_on_edge_fixture(edges_path):
    t = graphdesk.LoadTableTSV("src:int,dst:int", edges_path)
    g = graphdesk.ToGraph(t, "src", "dst")
    assert g.edge_count == 2
    assert g.node_count == 3


def test_join_to_graph_pagerank_chain_matches_engine(posts_path):
    ws = Workspace()
    posts = ws.LoadTableTSV(POSTS_SCHEMA, posts_path)
    q = ws.Select(posts, "Type=question")
    a = ws.Select(posts, "Type=answer")
    qa = ws.Join(q, a, "AnswerId", "PostId")
    g = ws.ToGraph(qa, "UserId-1", "UserId-2")
    pr = ws.GetPageRank(g)
    table = ws.TableFromHashMap(pr, "User", "Scr")

    raw = engine.load_tsv(posts_path, engine.Schema.parse(POSTS_SCHEMA))
    qd = engine.select(raw, engine.Predicate("Type", "=", "question"))
    ad = engine.select(raw, engine.Predicate("Type", "=", "answer"))
    qad = engine.join(qd, ad, "AnswerId", "PostId")
    gd = engine.table_to_graph(qad, engine.EdgeSpec("UserId-1", "UserId-2"))
    prd = engine.pagerank(gd, damping=0.85, iterations=10)

    assert qa.rows() == qad.to_rows()
    assert dict(pr.items()) == prd
    assert table.rows() == engine.table_from_map(prd, "User", "Scr").to_rows()


def test_rank_handle_top_breaks_ties_by_id():
    ranks = graphdesk.RankHandle({3: 0.5, 1: 0.5, 2: 0.25})
    assert ranks.top(2) == [(1, 0.5), (3, 0.5)]


def test_snake_case_aliases_are_the_same_functions(posts_path):
    assert graphdesk.load_table_tsv is graphdesk.LoadTableTSV
    handle = graphdesk.load_table_tsv(POSTS_SCHEMA, posts_path)
    assert handle.row_count == 230


def test_save_round_trip(tmp_path, posts_path):
    handle = graphdesk.LoadTableTSV(POSTS_SCHEMA, posts_path)
    out = tmp_path / "copy.tsv"
    graphdesk.SaveTableTSV(handle, str(out))
    again = graphdesk.LoadTableTSV(POSTS_SCHEMA, str(out))
    assert again.rows() == handle.rows()


def test_frontend_error_on_bad_predicate(posts_path):
    handle = graphdesk.LoadTableTSV(POSTS_SCHEMA, posts_path)
    with pytest.raises(FrontendError):
        graphdesk.Select(handle, "NoSuchColumn=1")


def test_dropping_last_handle_releases_engine_object(posts_path):
    import gc
    import weakref

    handle = graphdesk.LoadTableTSV(POSTS_SCHEMA, posts_path)
    ref = weakref.ref(handle._table)
    del handle
    gc.collect()
    assert ref() is None
