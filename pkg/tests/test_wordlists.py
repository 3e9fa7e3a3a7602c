import io
import unicodedata

import pytest
from hypothesis import given, strategies as st

from lexphylo.errors import (
    EmptyFormError,
    EncodingError,
    ParseError,
    ValidationError,
)
from lexphylo.wordlists import (
    WordList,
    normalize_form,
    parse_wordlist,
    parse_wordlist_text,
    serialize_wordlist,
    validate_corpus,
)


def make_list(language_id, slots):
    return parse_wordlist_text(
        "index\tgloss\tword\n"
        + "".join(f"{i}\tg{i}\t{w}\n" for i, w in slots.items()),
        language_id=language_id,
    )


class TestNormalizeForm:
    def test_case_and_outer_whitespace(self):
        assert normalize_form("Jiaby ") == "jiaby"

    def test_hyphen_removal(self):
        assert normalize_form("an-dranomasina") == "andranomasina"

    def test_inner_whitespace_removal(self):
        assert normalize_form("rano masina") == "ranomasina"

    def test_blank_rejected(self):
        with pytest.raises(EmptyFormError):
            normalize_form("   ")

    def test_hyphen_only_rejected(self):
        with pytest.raises(EmptyFormError):
            normalize_form("--")

    def test_canonical_composition(self):
        decomposed = "été"
        assert normalize_form(decomposed) == "été"

    def test_casefold(self):
        assert normalize_form("GROSSE") == "grosse"
        assert normalize_form("GROßE") == "grosse"

    @given(st.text(min_size=1, max_size=30))
    def test_idempotent(self, raw):
        try:
            once = normalize_form(raw)
        except EmptyFormError:
            return
        assert normalize_form(once) == once

    @given(st.text(min_size=1, max_size=30))
    def test_output_clean(self, raw):
        try:
            form = normalize_form(raw)
        except EmptyFormError:
            return
        assert form
        assert unicodedata.normalize("NFC", form) == form
        for ch in form:
            assert not ch.isspace()
            assert unicodedata.category(ch) not in ("Cc", "Cf")
            assert ch != "-"


class TestParsing:
    def test_basic_fields(self):
        wl = parse_wordlist_text(
            "index\tgloss\tword\n1\tall\tjiaby\n2\tand\tsy\n",
            language_id="antankarana",
        )
        assert wl.coverage == 2
        assert wl.forms[1] == "jiaby"
        assert wl.forms[2] == "sy"
        assert wl.glosses[1] == "all"

    def test_header_only_gives_empty_list(self):
        wl = parse_wordlist_text("index\tgloss\tword\n", language_id="x")
        assert wl.coverage == 0

    def test_missing_header(self):
        with pytest.raises(ParseError, match=":1:"):
            parse_wordlist_text("1\tall\tjiaby\n", language_id="x")

    def test_wrong_column_count_names_line(self):
        text = "index\tgloss\tword\n1\tall\tjiaby\n2\tand\n"
        with pytest.raises(ParseError, match=":3:"):
            parse_wordlist_text(text, language_id="x")

    def test_duplicate_meaning_index(self):
        text = "index\tgloss\tword\n7\tall\tfoo\n7\tand\tbar\n"
        with pytest.raises(ValidationError, match="duplicate meaning index 7"):
            parse_wordlist_text(text, language_id="x")

    def test_index_out_of_range(self):
        for bad in (0, 201):
            text = f"index\tgloss\tword\n{bad}\tall\tfoo\n"
            with pytest.raises(ValidationError, match="outside"):
                parse_wordlist_text(text, language_id="x")

    def test_index_range_follows_meanings(self):
        text = "index\tgloss\tword\n250\tall\tfoo\n"
        wl = parse_wordlist_text(text, language_id="x", meanings=300)
        assert wl.forms[250] == "foo"

    def test_non_integer_index(self):
        with pytest.raises(ParseError, match="not an integer"):
            parse_wordlist_text("index\tgloss\tword\none\tall\tfoo\n", language_id="x")

    def test_empty_form_rejected(self):
        text = "index\tgloss\tword\n1\tall\t \n"
        with pytest.raises(ValidationError, match="empty word form"):
            parse_wordlist_text(text, language_id="x")

    def test_blank_lines_skipped(self):
        text = "index\tgloss\tword\n1\tall\tjiaby\n\n2\tand\tsy\n"
        assert parse_wordlist_text(text, language_id="x").coverage == 2

    def test_crlf_accepted(self):
        text = "index\tgloss\tword\r\n1\tall\tjiaby\r\n"
        assert parse_wordlist_text(text, language_id="x").forms[1] == "jiaby"

    def test_forms_are_normalized(self):
        text = "index\tgloss\tword\n1\tsea\tAn-Dranomasina\n"
        wl = parse_wordlist_text(text, language_id="x")
        assert wl.forms[1] == "andranomasina"

    def test_path_input_uses_stem_as_id(self, tmp_path):
        p = tmp_path / "merina.tsv"
        p.write_text("index\tgloss\tword\n1\tall\trehetra\n", encoding="utf-8")
        wl = parse_wordlist(p)
        assert wl.language_id == "merina"
        assert wl.forms[1] == "rehetra"

    def test_stream_requires_language_id(self):
        stream = io.BytesIO(b"index\tgloss\tword\n")
        with pytest.raises(ValidationError, match="language_id"):
            parse_wordlist(stream)

    def test_stream_with_language_id(self):
        stream = io.BytesIO("index\tgloss\tword\n1\tall\tjiaby\n".encode())
        wl = parse_wordlist(stream, language_id="antakarana")
        assert wl.coverage == 1

    def test_invalid_utf8(self, tmp_path):
        p = tmp_path / "bad.tsv"
        p.write_bytes(b"index\tgloss\tword\n1\tall\t\xff\xfe\n")
        with pytest.raises(EncodingError, match="UTF-8"):
            parse_wordlist(p)


class TestRoundTrip:
    @given(
        st.dictionaries(
            st.integers(min_value=1, max_value=200),
            st.text(
                alphabet=st.characters(whitelist_categories=("Ll", "Lu", "Lo")),
                min_size=1,
                max_size=10,
            ),
            min_size=0,
            max_size=20,
        )
    )
    def test_serialize_then_parse_is_identity(self, slots):
        original = make_list("lang", slots)
        reparsed = parse_wordlist_text(
            serialize_wordlist(original), language_id="lang"
        )
        assert reparsed == original

    def test_coverage_counts_slots(self):
        wl = make_list("x", {1: "a", 5: "b", 200: "c"})
        assert wl.coverage == 3
        assert wl.shared_slots(make_list("y", {5: "z", 9: "q"})) == [5]


class TestValidateCorpus:
    def test_two_complete_lists_no_warnings(self):
        a = make_list("a", {i: "foo" for i in range(1, 201)})
        b = make_list("b", {i: "bar" for i in range(1, 201)})
        report = validate_corpus([a, b])
        assert report.warnings == ()
        assert all(entry.missing == () for entry in report.languages)

    def test_missing_slots_named(self):
        full = {i: "foo" for i in range(1, 201)}
        partial = dict(full)
        del partial[5], partial[9]
        report = validate_corpus([make_list("full", full), make_list("part", partial)])
        by_id = {e.language_id: e for e in report.languages}
        assert by_id["part"].missing == (5, 9)
        assert by_id["full"].missing == ()

    def test_duplicate_language_id_is_hard_error(self):
        a = make_list("merina", {1: "a"})
        b = make_list("merina", {1: "b"})
        with pytest.raises(ValidationError, match="merina"):
            validate_corpus([a, b])

    def test_fewer_than_two_lists(self):
        with pytest.raises(ValidationError, match="at least 2"):
            validate_corpus([make_list("solo", {1: "a"})])

    def test_low_coverage_warning(self):
        a = make_list("a", {i: "foo" for i in range(1, 201)})
        b = make_list("b", {i: "bar" for i in range(1, 60)})
        report = validate_corpus([a, b])
        assert any("b" in w and "coverage" in w for w in report.warnings)
        assert not validate_corpus([a, b], coverage_floor=10).warnings

    def test_format_text_lists_languages_and_warnings(self):
        a = make_list("a", {1: "x", 2: "y"})
        b = make_list("b", {1: "z"})
        text = validate_corpus([a, b], coverage_floor=2).format_text()
        assert "a\tcoverage=2\tmissing=-" in text
        assert "b\tcoverage=1\tmissing=2" in text
        assert "warning: b" in text


def test_wordlist_is_immutable():
    wl = WordList(language_id="x", forms={1: "a"})
    with pytest.raises(AttributeError):
        wl.language_id = "y"
