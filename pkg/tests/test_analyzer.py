"""Lint findings, criterion heuristics and report rendering tests."""

from __future__ import annotations

from conftest import all_tokens, mk_doc
from kaburlint.analyzer import (
    ATTRIBUTE_MEMBER,
    DANGLING_ELSE,
    LintConfig,
    MULTI_POS,
    MULTI_SENSE,
    REFERENTIAL_SENTENCE,
    check_dangling_else,
    check_multi_pos,
    lint_document,
    render_report,
)
from kaburlint.filters import FilterConfig
from kaburlint.lexicon import (
    AttributeTag,
    Lexicon,
    LexiconEntry,
    PosDictionary,
    normalize_phrase,
)
from kaburlint.textcore import segment_sentences, tokenize


def tag(text):
    return AttributeTag.parse(text)


def entry(phrase, tags, status="verified"):
    return LexiconEntry(
        phrase=normalize_phrase(phrase),
        tags=frozenset(AttributeTag.parse(t) for t in tags),
        status=status,
    )


def seed_lexicon():
    return Lexicon(
        [
            entry("efisien", ("IMP",)),
            entry("segera", ("IMP",)),
            entry("secepat mungkin", ("IMP", "T")),
        ]
    )


def table_posdict():
    posdict = PosDictionary()
    posdict.add("papar", {"adj", "kk"})
    posdict.add("amat", {"kk", "kt"})
    posdict.add("alam", {"kk"}, 2)
    posdict.add("abstrak", {"kk", "kn"})
    return posdict


class TestLintDocument:
    def test_two_seed_findings(self):
        doc = mk_doc("Sistem mesti efisien dan segera.")
        report = lint_document(doc, seed_lexicon())
        assert [f.phrase for f in report.findings] == ["efisien", "segera"]
        assert [f.severity for f in report.findings] == ["warning", "warning"]
        assert all(f.criterion == ATTRIBUTE_MEMBER for f in report.findings)
        assert report.findings[0].matched == "efisien"

    def test_clean_document(self):
        doc = mk_doc("Tiada apa-apa di sini.")
        assert lint_document(doc, seed_lexicon()).findings == []

    def test_deterministic(self):
        doc = mk_doc("Sistem mesti efisien. Jika gagal, berhenti. secepat mungkin")
        first = lint_document(doc, seed_lexicon(), table_posdict())
        second = lint_document(doc, seed_lexicon(), table_posdict())
        assert first.findings == second.findings

    def test_only_verified_entries_fire(self):
        lexicon = Lexicon(
            [
                entry("efisien", ("IMP",), status="candidate"),
                entry("segera", ("IMP",), status="rejected"),
                entry("mudah", ("IMP",)),
            ]
        )
        doc = mk_doc("efisien segera mudah")
        report = lint_document(doc, lexicon)
        assert [f.phrase for f in report.findings] == ["mudah"]

    def test_multiword_is_one_finding(self):
        doc = mk_doc("Siapkan secepat mungkin.")
        report = lint_document(doc, seed_lexicon())
        assert len(report.findings) == 1
        assert report.findings[0].matched == "secepat mungkin"
        assert report.findings[0].tags == frozenset({tag("IMP"), tag("T")})

    def test_rejecting_entry_removes_exactly_its_findings(self):
        doc = mk_doc("efisien dahulu, kemudian segera, akhirnya efisien lagi.")
        before = lint_document(doc, seed_lexicon())
        lexicon = seed_lexicon()
        rejected = LexiconEntry(
            phrase=("efisien",),
            tags=frozenset({tag("IMP")}),
            status="rejected",
        )
        lexicon.replace(rejected)
        after = lint_document(doc, lexicon)
        assert after.findings == [f for f in before.findings if f.phrase != "efisien"]
        assert len(before.findings) - len(after.findings) == 2

    def test_multi_pos_and_multi_sense_info_findings(self):
        doc = mk_doc("papar alam")
        report = lint_document(doc, seed_lexicon(), table_posdict())
        got = {(f.criterion, f.matched, f.severity) for f in report.findings}
        assert got == {
            (MULTI_POS, "papar", "info"),
            (MULTI_SENSE, "alam", "info"),
        }

    def test_heuristics_skip_filtered_tokens(self):
        cfg = LintConfig(
            filter_config=FilterConfig(english_words=frozenset({"papar"}))
        )
        doc = mk_doc("guna papar sini")
        report = lint_document(doc, seed_lexicon(), table_posdict(), cfg)
        assert report.findings == []

    def test_clitic_findings_are_off_by_default(self):
        doc = mk_doc("sila semak warnanya dahulu")
        assert lint_document(doc, seed_lexicon()).findings == []
        cfg = LintConfig(flag_anaphoric_clitics=True)
        report = lint_document(doc, seed_lexicon(), cfg=cfg)
        assert [f.criterion for f in report.findings] == [REFERENTIAL_SENTENCE]
        assert report.findings[0].matched == "warnanya"
        assert report.findings[0].tags == frozenset({tag("REF")})

    def test_summary_counts(self):
        doc = mk_doc("efisien dan secepat mungkin")
        report = lint_document(doc, seed_lexicon())
        assert report.attribute_counts["IMP"] == 2
        assert report.attribute_counts["T"] == 1
        assert report.criterion_counts == {ATTRIBUTE_MEMBER: 2}


class TestCheckMultiPos:
    def test_table_entries(self):
        posdict = table_posdict()
        papar = all_tokens("papar")[0]
        finding = check_multi_pos(papar, posdict)
        assert finding is not None and finding.criterion == MULTI_POS
        assert finding.tags == frozenset({tag("CON.adjective"), tag("CON.verb")})
        abstrak = all_tokens("abstrak")[0]
        finding = check_multi_pos(abstrak, posdict)
        assert finding is not None
        assert finding.tags == frozenset({tag("CON.verb")})

    def test_single_class_word_is_silent(self):
        assert check_multi_pos(all_tokens("alam")[0], table_posdict()) is None

    def test_unknown_word_is_silent(self):
        assert check_multi_pos(all_tokens("tiada")[0], table_posdict()) is None

    def test_severity_is_info(self):
        finding = check_multi_pos(all_tokens("amat")[0], table_posdict())
        assert finding is not None and finding.severity == "info"


class TestDanglingElse:
    def run(self, text, cfg=LintConfig()):
        doc = mk_doc(text)
        sentences = segment_sentences(doc)
        out = []
        for i, sentence in enumerate(sentences):
            tokens = tokenize(doc, sentence)
            next_tokens = (
                tokenize(doc, sentences[i + 1]) if i + 1 < len(sentences) else ()
            )
            out.append(
                check_dangling_else(
                    sentence, tokens, cfg, next_tokens=next_tokens, doc_id=doc.id
                )
            )
        return out

    def test_conditional_without_alternative(self):
        (finding,) = self.run("Jika kad tidak sah, sistem menolak kad.")
        assert finding is not None
        assert finding.criterion == DANGLING_ELSE
        assert finding.tags == frozenset({tag("CON.dangling_else")})
        assert finding.matched == "Jika"

    def test_alternative_in_same_sentence(self):
        (finding,) = self.run("Jika sah, terima; jika tidak, tolak.")
        assert finding is None

    def test_no_conditional(self):
        (finding,) = self.run("Sistem menolak kad.")
        assert finding is None

    def test_alternative_in_next_sentence(self):
        findings = self.run("Jika sah, terima. Sebaliknya, tolak.")
        assert findings == [None, None]

    def test_alternative_two_sentences_away_does_not_help(self):
        findings = self.run("Jika sah, terima. Rekod disimpan. Sebaliknya, tolak.")
        assert findings[0] is not None

    def test_custom_markers(self):
        cfg = LintConfig(
            conditional_markers=("kalau",), alternative_markers=("kalau tidak",)
        )
        (finding,) = self.run("Kalau sah, terima.", cfg)
        assert finding is not None
        (finding,) = self.run("Kalau sah, terima, kalau tidak gagal.", cfg)
        assert finding is None


class TestRendering:
    def report(self):
        doc = mk_doc("Sistem mesti efisien dan segera.")
        return doc, lint_document(doc, seed_lexicon())

    def test_text_format(self):
        doc, report = self.report()
        text = render_report(report, "text", {doc.id: doc})
        assert text == (
            "doc:1:14: warning: 'efisien' [IMP] attribute_member\n"
            "doc:1:26: warning: 'segera' [IMP] attribute_member\n"
            "\n"
            "total: 2 (2 warning, 0 info)\n"
            "by attribute: IMP=2 CON=0 T=0 REF=0 VAR=0 WN=0\n"
            "by criterion: attribute_member=2\n"
        )

    def test_csv_format(self):
        doc, report = self.report()
        text = render_report(report, "csv", {doc.id: doc})
        lines = text.splitlines()
        assert lines[0] == (
            "document,line,col,start,end,sentence,matched,phrase,tags,"
            "criterion,severity"
        )
        assert lines[1] == (
            "doc,1,14,13,20,0,efisien,efisien,IMP,attribute_member,warning"
        )
        assert len(lines) == 3

    def test_records_format(self):
        import json

        _doc, report = self.report()
        lines = render_report(report, "records").splitlines()
        first = json.loads(lines[0])
        assert first == {
            "doc": "doc",
            "sentence": 0,
            "start": 13,
            "end": 20,
            "matched": "efisien",
            "phrase": "efisien",
            "tags": ["IMP"],
            "criterion": "attribute_member",
            "severity": "warning",
        }

    def test_findings_sorted_by_offset(self):
        doc = mk_doc("segera dahulu dan efisien kemudian")
        report = lint_document(doc, seed_lexicon())
        starts = [f.span.start for f in report.findings]
        assert starts == sorted(starts)
