import pytest
from hypothesis import given, settings, strategies as st

from idiomcheck import fileio
from idiomcheck.model import (
    AnnotationLabel,
    IdiomEntry,
    IdiomList,
    Label,
    ParseError,
    TestRecord,
    TriggerResult,
    ValidationError,
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_idiom_list_full_line(tmp_path):
    p = write(tmp_path, "idioms.tsv",
              "胸有成竹\tchest bamboo\tHave a well-thought-out plan\tHave a bamboo in one's chest\n")
    idioms = fileio.read_idiom_list(p)
    entry = idioms["胸有成竹"]
    assert entry.terms == {"chest", "bamboo"}
    assert entry.idiomatic_gloss == "Have a well-thought-out plan"
    assert entry.literal_gloss == "Have a bamboo in one's chest"
    assert entry.training_frequency is None


def test_idiom_list_lowercases_blacklist(tmp_path):
    p = write(tmp_path, "idioms.tsv", "# comment\n\n说三道四\tThree FOUR\n")
    assert fileio.read_idiom_list(p)["说三道四"].terms == {"three", "four"}


def test_idiom_list_duplicate_idiom(tmp_path):
    p = write(tmp_path, "idioms.tsv", "手无寸铁\tiron\n手无寸铁\tiron hand\n")
    with pytest.raises(ParseError) as e:
        fileio.read_idiom_list(p)
    assert e.value.line == 2
    assert "duplicate" in str(e.value)


@pytest.mark.parametrize("line, lineno", [
    ("手无寸铁", 2),
    ("手无寸铁\t", 2),
    ("\tiron", 2),
    ("手无寸铁\tiron\ta\tb\t5\textra", 2),
    ("手无寸铁\tiron iron", 2),
    ("手无寸铁\tcan't", 2),
    ("手无寸铁\tiron\t\t\tmany", 2),
])
def test_idiom_list_malformed(tmp_path, line, lineno):
    p = write(tmp_path, "idioms.tsv", "雪上加霜\tsnow frost\n" + line + "\n")
    with pytest.raises(ParseError) as e:
        fileio.read_idiom_list(p)
    assert e.value.line == lineno


def test_idiom_list_skips_bom(tmp_path):
    p = tmp_path / "bom.tsv"
    p.write_bytes("﻿手无寸铁\tiron\n".encode("utf-8"))
    assert fileio.read_idiom_list(p).idioms == ["手无寸铁"]


def test_idiom_list_roundtrip(tmp_path):
    idioms = fileio.bundled_idiom_list()
    out = tmp_path / "copy.tsv"
    fileio.write_idiom_list(out, idioms)
    assert fileio.read_idiom_list(out) == idioms


def test_bundled_list_contents():
    idioms = fileio.bundled_idiom_list()
    assert len(idioms) == 50
    assert idioms["胸有成竹"].blacklist == ("chest", "bamboo")
    assert idioms["五花八门"].blacklist == ("five", "flower", "eight", "door", "gate")
    assert idioms["手无寸铁"].training_frequency == 1000
    assert idioms["沾花惹草"].training_frequency == 7


def test_parallel_corpus(tmp_path):
    src = write(tmp_path, "a.zh", "一\n二\n三\n")
    tgt = write(tmp_path, "a.en", "one\ntwo\nthree")
    assert fileio.read_parallel_corpus(src, tgt) == [("一", "one"), ("二", "two"), ("三", "three")]


def test_parallel_corpus_mismatch(tmp_path):
    src = write(tmp_path, "a.zh", "一\n二\n三\n")
    tgt = write(tmp_path, "a.en", "one\ntwo\n")
    with pytest.raises(ValueError, match="3.*2"):
        fileio.read_parallel_corpus(src, tgt)


def test_parallel_corpus_empty(tmp_path):
    src = write(tmp_path, "a.zh", "")
    tgt = write(tmp_path, "a.en", "")
    assert fileio.read_parallel_corpus(src, tgt) == []


def test_parallel_corpus_preserves_text(tmp_path):
    src = write(tmp_path, "a.zh", "  他说三道四  \n\n")
    tgt = write(tmp_path, "a.en", "  He Gossips \n\n")
    assert fileio.read_parallel_corpus(src, tgt) == [("  他说三道四  ", "  He Gossips "), ("", "")]


def test_parallel_tsv(tmp_path):
    p = write(tmp_path, "c.tsv", "一\tone\n# skip\n二\ttwo\n")
    assert fileio.read_parallel_tsv(p) == [("一", "one"), ("二", "two")]
    bad = write(tmp_path, "bad.tsv", "一\tone\t1\n")
    with pytest.raises(ParseError):
        fileio.read_parallel_tsv(bad)


GOSSIP_RECORD = TestRecord(
    record_id="hit",
    source="医生说了你不能对我说三道四",
    idiom="说三道四",
    reference="The therapist said you're not allowed to judge me.",
    hypothesis="The doctor said that you can't say three things to me.",
    trigger=TriggerResult(True, frozenset({"three"})),
)


def test_record_roundtrip_exact_bytes(tmp_path):
    p = tmp_path / "r.jsonl"
    fileio.write_records(p, [GOSSIP_RECORD])
    assert fileio.read_records(p) == [GOSSIP_RECORD]
    line = p.read_text(encoding="utf-8")
    assert line == (
        '{"id":"hit","idiom":"说三道四","src":"医生说了你不能对我说三道四",'
        '"ref":"The therapist said you\'re not allowed to judge me.",'
        '"hyp":"The doctor said that you can\'t say three things to me.",'
        '"triggered":true,"matched":["three"]}\n'
    )


def test_record_without_reference(tmp_path):
    p = write(tmp_path, "r.jsonl", '{"id":"x","idiom":"说三道四","src":"别说三道四"}\n')
    (rec,) = fileio.read_records(p)
    assert rec.reference is None and rec.hypothesis is None and rec.trigger is None


@pytest.mark.parametrize("line, fragment", [
    ('{"id":"x","idiom":"说三道四","src":"你好"}', "does not contain"),
    ('{"id":"x","idiom":"说三道四"}', "missing mandatory field 'src'"),
    ('{"idiom":"说三道四","src":"说三道四"}', "missing mandatory field 'id'"),
    ('{"id":"x","idiom":"说三道四","src":"说三道四","label":"ok"}', "unknown field"),
    ('{"id":"x","idiom":"说三道四","src":"说三道四","hyp":"h","triggered":"yes","matched":[]}', "triggered"),
    ('{"id":"x","idiom":"说三道四","src":"说三道四","hyp":"h","triggered":true,"matched":[]}', "iff"),
    ('{"id":"x","idiom":"说三道四","src":"说三道四","triggered":false,"matched":[]}', "without hypothesis"),
    ('{"id":"x","idiom":"说三道四","src":"说三道四","hyp":"h","triggered":false}', "together"),
    ('not json', "invalid JSON"),
])
def test_record_parse_errors(tmp_path, line, fragment):
    p = write(tmp_path, "r.jsonl", '{"id":"ok","idiom":"说三道四","src":"说三道四"}\n' + line + "\n")
    with pytest.raises(ParseError) as e:
        fileio.read_records(p)
    assert e.value.line == 2
    assert fragment in str(e.value)


def test_duplicate_record_ids(tmp_path):
    p = write(tmp_path, "r.jsonl", '{"id":"a","idiom":"说三道四","src":"说三道四"}\n' * 2)
    with pytest.raises(ParseError, match="duplicate"):
        fileio.read_records(p)
    with pytest.raises(ValidationError):
        fileio.write_records(tmp_path / "o.jsonl", [GOSSIP_RECORD, GOSSIP_RECORD])


def test_annotations(tmp_path):
    p = write(tmp_path, "a.tsv", "r1\tcorrect\nr2\tincorrect_literal\n# x\nr3\tincorrect\n")
    assert fileio.read_annotations(p) == [
        AnnotationLabel("r1", Label.CORRECT),
        AnnotationLabel("r2", Label.INCORRECT_LITERAL),
        AnnotationLabel("r3", Label.INCORRECT),
    ]
    out = tmp_path / "b.tsv"
    fileio.write_annotations(out, fileio.read_annotations(p))
    assert fileio.read_annotations(out) == fileio.read_annotations(p)


def test_annotations_unknown_label(tmp_path):
    p = write(tmp_path, "a.tsv", "r1\tcorrect\nr2\twrong\n")
    with pytest.raises(ParseError) as e:
        fileio.read_annotations(p)
    assert e.value.line == 2


def test_frequency_table_roundtrip(tmp_path):
    p = tmp_path / "f.tsv"
    fileio.write_frequency_table(p, [("手无寸铁", 1000), ("沾花惹草", 7)])
    assert fileio.read_frequency_table(p) == {"手无寸铁": 1000, "沾花惹草": 7}


def test_entry_invariants():
    with pytest.raises(ValidationError):
        IdiomEntry("胸 有", ("chest",))
    with pytest.raises(ValidationError):
        IdiomEntry("胸有成竹", ())
    with pytest.raises(ValidationError):
        IdiomEntry("胸有成竹", ("Chest",))
    with pytest.raises(ValidationError):
        IdiomEntry("胸有成竹", ("chest", "chest"))
    with pytest.raises(ValidationError):
        IdiomList([IdiomEntry("胸有成竹", ("chest",)), IdiomEntry("胸有成竹", ("bamboo",))])


# -- round-trip property ------------------------------------------------------

sentence = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=30)
idiom_text = st.text(alphabet="说三道四胸有成竹马虎", min_size=1, max_size=4)
terms = st.frozensets(st.text(alphabet="abcxyz", min_size=1, max_size=5), max_size=3)


@st.composite
def records(draw):
    n = draw(st.integers(0, 6))
    out = []
    for i in range(n):
        idiom = draw(idiom_text)
        src = draw(sentence) + idiom + draw(sentence)
        ref = draw(st.none() | sentence)
        hyp = draw(st.none() | sentence)
        trigger = None
        if hyp is not None and draw(st.booleans()):
            trigger = TriggerResult.from_terms(draw(terms))
        out.append(TestRecord(f"r{i}", src, idiom, ref, hyp, trigger))
    return out


@settings(max_examples=200)
@given(records())
def test_record_roundtrip_property(tmp_path_factory, recs):
    p = tmp_path_factory.mktemp("rt") / "r.jsonl"
    fileio.write_records(p, recs)
    first = p.read_bytes()
    back = fileio.read_records(p)
    assert back == recs
    fileio.write_records(p, back)
    assert p.read_bytes() == first
