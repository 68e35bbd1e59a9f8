"""Segmentation, tokenization and span-integrity tests."""

from __future__ import annotations

import random

import pytest

from conftest import mk_doc
from kaburlint.textcore import (
    DEFAULT_ABBREVIATIONS,
    NUMBER,
    SYMBOL,
    WORD,
    Document,
    Span,
    detect_reduplication,
    iter_sentence_tokens,
    line_col,
    segment_sentences,
    slice_span,
    tokenize,
)


def sentence_texts(text: str, abbreviations=DEFAULT_ABBREVIATIONS) -> list[str]:
    doc = mk_doc(text)
    return [slice_span(doc, s.span) for s in segment_sentences(doc, abbreviations)]


def surfaces(text: str) -> list[str]:
    doc = mk_doc(text)
    out = []
    for _s, tokens in iter_sentence_tokens(doc):
        out.extend(t.surface for t in tokens)
    return out


class TestSegmentation:
    def test_empty_document(self):
        assert segment_sentences(mk_doc("")) == []

    def test_two_sentences(self):
        # hand segmentation: period terminates, next block starts after space
        assert sentence_texts("Sistem mesti pantas. Rekod dipapar.") == [
            "Sistem mesti pantas.",
            "Rekod dipapar.",
        ]

    def test_abbreviation_does_not_split(self):
        texts = sentence_texts("Sistem guna dll. dalam senarai.")
        assert texts == ["Sistem guna dll. dalam senarai."]

    def test_unlisted_abbreviation_splits(self):
        texts = sentence_texts("Sistem guna dll. dalam senarai.", frozenset())
        assert texts == ["Sistem guna dll.", "dalam senarai."]

    def test_question_and_exclamation(self):
        assert sentence_texts("Betul? Ya! Baik.") == ["Betul?", "Ya!", "Baik."]

    def test_newline_terminates_block(self):
        assert sentence_texts("satu dua\ntiga empat") == ["satu dua", "tiga empat"]

    def test_blank_lines_and_trailing_tail(self):
        assert sentence_texts("satu.\n\n  dua tanpa noktah") == [
            "satu.",
            "dua tanpa noktah",
        ]

    def test_decimal_period_does_not_split(self):
        assert sentence_texts("Versi 3.14 dilancar. Baik.") == [
            "Versi 3.14 dilancar.",
            "Baik.",
        ]

    def test_terminator_run_stays_in_one_sentence(self):
        assert sentence_texts("Apa?! Sudah.") == ["Apa?!", "Sudah."]

    def test_sentences_ordered_and_disjoint(self):
        doc = mk_doc("Satu. Dua! Tiga?\nEmpat")
        sentences = segment_sentences(doc)
        assert [s.index for s in sentences] == list(range(len(sentences)))
        for earlier, later in zip(sentences, sentences[1:]):
            assert earlier.span.end <= later.span.start


class TestTokenization:
    def test_reduplication_stays_whole(self):
        doc = mk_doc("Papar rekod-rekod pelajar.")
        (sentence,) = segment_sentences(doc)
        tokens = tokenize(doc, sentence)
        assert [t.surface for t in tokens] == ["Papar", "rekod-rekod", "pelajar", "."]
        assert [t.kind for t in tokens] == [WORD, WORD, WORD, SYMBOL]

    def test_all_punctuation_is_one_symbol_token(self):
        doc = mk_doc("!!!")
        (sentence,) = segment_sentences(doc)
        tokens = tokenize(doc, sentence)
        assert len(tokens) == 1
        assert tokens[0].kind == SYMBOL
        assert tokens[0].surface == "!!!"

    def test_multiword_stays_two_tokens(self):
        assert surfaces("secepat mungkin") == ["secepat", "mungkin"]

    def test_abbreviation_period_stays_inside_token(self):
        assert surfaces("buku dll. dalam rak.") == ["buku", "dll.", "dalam", "rak", "."]

    def test_number_with_decimal_separator(self):
        doc = mk_doc("harga 3.5 juta")
        (sentence,) = segment_sentences(doc)
        tokens = tokenize(doc, sentence)
        assert [t.surface for t in tokens] == ["harga", "3.5", "juta"]
        assert tokens[1].kind == NUMBER

    def test_normalized_is_casefold(self):
        tokens = [t for t in in_all("PANTAS Amat") if t.kind == WORD]
        assert [t.normalized for t in tokens] == ["pantas", "amat"]

    def test_hyphen_without_letters_on_both_sides_splits(self):
        assert surfaces("rekod- rekod") == ["rekod", "-", "rekod"]
        assert surfaces("a--b") == ["a", "--", "b"]

    def test_byte_spans_with_multibyte_text(self):
        text = "kafé “ujian” résumé."
        doc = mk_doc(text)
        (sentence,) = segment_sentences(doc)
        for token in tokenize(doc, sentence):
            assert slice_span(doc, token.span) == token.surface

    def test_line_col(self):
        doc = mk_doc("satu\nkafé dua")
        sentences = segment_sentences(doc)
        tokens = tokenize(doc, sentences[1])
        # "dua" sits on line 2 after the 4-char word and a space
        assert line_col(doc, tokens[1].span.start) == (2, 6)


def in_all(text):
    doc = mk_doc(text)
    out = []
    for _s, toks in iter_sentence_tokens(doc):
        out.extend(toks)
    return out


class TestReduplication:
    def test_examples(self):
        (token,) = [t for t in in_all("rekod-rekod") if t.kind == WORD]
        assert detect_reduplication(token) is True
        (token,) = [t for t in in_all("rekod") if t.kind == WORD]
        assert detect_reduplication(token) is False
        (token,) = [t for t in in_all("sayur-mayur") if t.kind == WORD]
        assert detect_reduplication(token) is False

    def test_case_folded_halves(self):
        (token,) = [t for t in in_all("Rekod-rekod") if t.kind == WORD]
        assert detect_reduplication(token) is True

    def test_double_hyphen_chain_is_not_reduplication(self):
        (token,) = [t for t in in_all("ubur-ubur-ubur") if t.kind == WORD]
        assert detect_reduplication(token) is False

    def test_digits_do_not_count(self):
        tokens = in_all("12-12")
        assert all(not detect_reduplication(t) for t in tokens)

    def test_implies_exactly_one_hyphen_and_equal_halves(self):
        rng = random.Random(5)
        words = ["a-a", "ab-ab", "a-b", "kata-kata", "kata-katak", "x--x", "-x"]
        for _ in range(200):
            text = " ".join(rng.choice(words) for _ in range(rng.randint(1, 6)))
            for token in in_all(text):
                if detect_reduplication(token):
                    assert token.surface.count("-") == 1
                    left, right = token.normalized.split("-")
                    assert left == right and left


class TestProperties:
    def test_span_integrity_and_determinism_on_random_text(self):
        rng = random.Random(99)
        vocab = ["sistem", "kafé", "rekod-rekod", "Ali", "3.5", "dll.", "—", "“ya”"]
        for _ in range(150):
            words = [rng.choice(vocab) for _ in range(rng.randint(0, 12))]
            glue = lambda: rng.choice(["  ", " ", "\n", ". ", "? "])
            text = ""
            for word in words:
                text += word + glue()
            doc = Document(id="r", text=text)
            runs = []
            for _run in range(2):
                collected = []
                for sentence, tokens in iter_sentence_tokens(doc):
                    previous_end = sentence.span.start
                    for token in tokens:
                        # spans ordered, non-overlapping, inside the sentence
                        assert sentence.span.start <= token.span.start
                        assert token.span.end <= sentence.span.end
                        assert token.span.start >= previous_end
                        previous_end = token.span.end
                        assert slice_span(doc, token.span) == token.surface
                        assert token.normalized == token.surface.casefold()
                        has_alnum = any(c.isalpha() or c.isdigit() for c in token.surface)
                        assert (token.kind == SYMBOL) == (not has_alnum)
                        collected.append((token.span, token.surface, token.kind))
                runs.append(collected)
            assert runs[0] == runs[1]

    def test_invalid_span_rejected(self):
        with pytest.raises(ValueError):
            Span(3, 3)
        with pytest.raises(ValueError):
            Span(-1, 2)

    def test_document_requires_id(self):
        with pytest.raises(ValueError):
            Document(id="", text="x")

    def test_slice_span_rejects_mid_character_offsets(self):
        doc = mk_doc("kafé")  # é is two bytes; byte 4 is mid-character
        with pytest.raises(ValueError):
            slice_span(doc, Span(3, 4))
