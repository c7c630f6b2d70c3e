import pytest

from leantext.compose import SEPARATOR, concat_views, metadata_view
from leantext.corpus import Article
from leantext.keywords import LimitedView


def view(kind, words, article_id="a1", **kwargs):
    return LimitedView(article_id=article_id, kind=kind, words=tuple(words), **kwargs)


def test_metadata_view_tokenizes_and_normalizes():
    art = Article(id="a1", text="body", raw_text="body", label=1, title="COVID Vaccine Myths")
    assert metadata_view(art, "title").words == ("covid", "vaccine", "myths")


def test_metadata_view_missing_field_flagged():
    art = Article(id="a1", text="body", raw_text="body", label=1, title="t")
    missing = metadata_view(art, "author")
    assert missing.words == ()
    assert "missing" in missing.flags


def test_metadata_view_rejects_unknown_field():
    art = Article(id="a1", text="body", raw_text="body", label=1)
    with pytest.raises(ValueError):
        metadata_view(art, "publisher")


def test_concat_inserts_separator():
    combined = concat_views([view("keyword", ["a", "b"]), view("ner", ["c"])])
    assert combined.words == ("a", "b", SEPARATOR, "c")
    assert combined.kind == "multimodal"
    assert combined.provenance == ("keyword", "ner")


def test_concat_separator_accounting():
    u = view("keyword", ["a", "b", "c"])
    v = view("title", ["x"])
    assert len(concat_views([u, v])) == len(u) + len(v) + 1


def test_concat_provenance_order_matches_input():
    combined = concat_views([view("keyword", ["a"]), view("author", ["b"])])
    assert combined.provenance == ("keyword", "author")


def test_concat_associative_up_to_separators():
    u, v, w = view("keyword", ["a"]), view("ner", ["b"]), view("title", ["c"])
    left = concat_views([concat_views([u, v]), w])
    right = concat_views([u, concat_views([v, w])])
    assert left.words == right.words
    assert left.provenance == right.provenance == ("keyword", "ner", "title")


def test_concat_mixed_articles_rejected():
    with pytest.raises(ValueError, match="different articles"):
        concat_views([view("keyword", ["a"]), view("ner", ["b"], article_id="zz")])


def test_concat_single_view_rejected():
    with pytest.raises(ValueError, match="at least two"):
        concat_views([view("keyword", ["a"])])


def test_concat_without_separator():
    combined = concat_views([view("keyword", ["a"]), view("ner", ["b"])], separator=None)
    assert combined.words == ("a", "b")
