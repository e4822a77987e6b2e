import pytest

from commentclf.corpus import (
    CATEGORIES,
    CommentRecord,
    canonical_category,
    filter_category,
    list_categories,
    load_dataset,
    sample_dataset_path,
)
from commentclf.errors import DomainError, ParseError, SchemaError

HEADER = "comment_sentence_id,language,category,comment_sentence,partition,instance_type\n"


def write(tmp_path, body, header=HEADER, name="c.csv"):
    path = tmp_path / name
    path.write_text(header + body, encoding="utf-8")
    return path


def test_three_rows_in_file_order(tmp_path):
    path = write(tmp_path, "a,Java,usage,first,0,1\nb,Java,usage,second,1,0\nc,Java,usage,\"third, quoted\",0,0\n")
    recs = load_dataset(path)
    assert [r.sentence for r in recs] == ["first", "second", "third, quoted"]
    assert [r.partition for r in recs] == ["Train", "Test", "Train"]
    assert [r.row_id for r in recs] == ["a", "b", "c"]


def test_missing_column_is_named(tmp_path):
    path = write(tmp_path, "x,Java,usage,s,0\n", header="comment_sentence_id,language,category,comment_sentence,partition\n")
    with pytest.raises(SchemaError, match="instance_type"):
        load_dataset(path)


def test_bad_membership_cites_row(tmp_path):
    rows = "".join(f"{i},Java,usage,s{i},0,{1 if i != 5 else 2}\n" for i in range(1, 8))
    with pytest.raises(ParseError, match="row 5"):
        load_dataset(write(tmp_path, rows))


def test_missing_file():
    with pytest.raises(OSError):
        load_dataset("/nonexistent/comments.csv")


def test_schema_map_and_fixed_language(tmp_path):
    path = write(tmp_path, "hello,Summary,train,1\n", header="text,cat,split,member\n")
    recs = load_dataset(path, {"sentence": "text", "category": "cat", "partition": "split", "membership": "member"},
                        language="python")
    assert recs == [CommentRecord("hello", "Python", "summary", 1, "Train", "1")]


def test_no_language_column_needs_language(tmp_path):
    path = write(tmp_path, "s,usage,0,1\n", header="comment_sentence,category,partition,instance_type\n")
    with pytest.raises(SchemaError):
        load_dataset(path)


def test_category_matching_ignores_case_and_spacing():
    assert canonical_category("pharo", "Keymessages") == "key messages"
    assert canonical_category("Python", " Development_Notes ") == "development notes"


def test_pharo_has_no_summary():
    with pytest.raises(DomainError, match="intent"):
        filter_category([], "Pharo", "summary")


def test_empty_records_give_empty_dataset():
    ds = filter_category([], "Java", "deprecation")
    assert ds.train == () and ds.test == ()


def test_filter_keeps_only_matching_rows():
    recs = load_dataset(sample_dataset_path())
    ds = filter_category(recs, "Java", "deprecation")
    expected = [r for r in recs if r.language == "Java" and r.category == "deprecation"]
    assert len(ds.train) + len(ds.test) == len(expected)
    assert set(ds.train_ids).isdisjoint(ds.test_ids)
    assert ds.train_labels == [r.is_member for r in expected if r.partition == "Train"]


def test_reload_is_identical():
    a = filter_category(load_dataset(sample_dataset_path()), "Python", "summary")
    b = filter_category(load_dataset(sample_dataset_path()), "Python", "summary")
    assert a == b


def test_list_categories():
    assert list_categories([]) == {}
    recs = [CommentRecord("s", lang, cat, 1, "Train") for lang, cats in CATEGORIES.items() for cat in cats]
    listed = list_categories(recs)
    assert [len(listed[l]) for l in ("Java", "Pharo", "Python")] == [7, 7, 5]
    assert sum(map(len, listed.values())) == 19
    java_only = list_categories([r for r in recs if r.language == "Java"])
    assert java_only == {"Java": list(CATEGORIES["Java"])}
