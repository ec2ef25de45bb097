"""Utterance composition: byte-exact goldens and template catalog discipline."""

import re

import pytest

from gridsite.content import EmptyContent, MediaContent, MediaKind, TextContent
from gridsite.feedback import (
    Severity,
    catalog,
    catalog_version,
    compose_blocked_overflow,
    compose_check,
    compose_image_fit,
    compose_placement,
    compose_readback,
    compose_text_fit,
    num_word,
    render,
)
from gridsite.fit import (
    EmptyBracket,
    ExpansionBlocked,
    ImageFits,
    ImageLetterbox,
    PageSummary,
    TextFits,
    TextOverflow,
    TextUnderflow,
)
from gridsite.grid import Bracket, BracketType, Footprint

GOLDEN_PLACEMENT = "Text bracket detected, size 2 by 8, location at row 1 and column 3."
GOLDEN_OVERFLOW = (
    "Text exceeds bracket capacity. Consider shortening the text or expanding the bracket. "
    "The current number of characters inside the bracket is 20. The maximum is 15. "
    "The recommended number is 10."
)
GOLDEN_LETTERBOX = (
    "Image inserted; one column remains empty on the left and right. "
    "Consider narrowing the bracket by one column on each side."
)
GOLDEN_EMPTY_CHECK = (
    "0 text brackets, 0 image brackets, 0 video brackets on the board. "
    "100 percent of the canvas is whitespace."
)


class TestPlacement:
    def test_text_2x8_golden(self):
        utt = compose_placement(BracketType.TEXT, Footprint(1, 3, 2, 8))
        assert utt.text == GOLDEN_PLACEMENT
        assert utt.severity is Severity.INFO
        assert utt.template_id == "placement_detected"

    def test_image_2x2(self):
        utt = compose_placement(BracketType.IMAGE, Footprint(1, 1, 2, 2))
        assert utt.text == "Image bracket detected, size 2 by 2, location at row 1 and column 1."

    def test_video_4x12_near_bottom(self):
        utt = compose_placement(BracketType.VIDEO, Footprint(13, 1, 4, 12))
        assert utt.text == "Video bracket detected, size 4 by 12, location at row 13 and column 1."


class TestTextFitUtterances:
    def test_overflow_golden(self):
        utt = compose_text_fit(TextOverflow(20, 15, 10))
        assert utt.text == GOLDEN_OVERFLOW
        assert utt.severity is Severity.WARNING

    def test_fits_names_current_and_max(self):
        utt = compose_text_fit(TextFits(128, 128))
        assert "128" in utt.text
        assert utt.template_id == "text_fits"

    def test_underflow_reports_rounded_percent(self):
        utt = compose_text_fit(TextUnderflow(3, 128, 3 / 128))
        assert "2 percent" in utt.text
        assert "The current number of characters inside the bracket is 3." in utt.text

    def test_blocked_overflow_names_the_walls(self):
        utt = compose_blocked_overflow(
            TextOverflow(40, 32, 21), ExpansionBlocked(("up", "down", "left", "right"), 1)
        )
        assert utt.template_id == "text_overflow_blocked"
        assert "blocked up, down, left and right" in utt.text

    def test_wrong_kind_raises(self):
        with pytest.raises(TypeError):
            compose_text_fit(ImageFits())


class TestImageFitUtterances:
    def test_letterbox_golden(self):
        utt = compose_image_fit(ImageLetterbox(1, 1, 0, 0), "image")
        assert utt.text == GOLDEN_LETTERBOX
        assert utt.severity is Severity.WARNING

    def test_fit_confirmation(self):
        utt = compose_image_fit(ImageFits(), "image")
        assert utt.text == "The image fits the layout."
        assert utt.severity is Severity.INFO

    def test_two_rows_variant_uses_words_and_row_phrasing(self):
        utt = compose_image_fit(ImageLetterbox(0, 0, 2, 2), "image")
        assert "two rows remain empty on the top and bottom" in utt.text
        assert "by two rows on each side" in utt.text

    def test_video_wording(self):
        utt = compose_image_fit(ImageLetterbox(1, 1, 0, 0), "video")
        assert utt.text.startswith("Video inserted;")

    def test_reshape_variant_does_not_say_inserted(self):
        utt = compose_image_fit(ImageLetterbox(1, 1, 0, 0), "image", just_inserted=False)
        assert "inserted" not in utt.text
        assert "one column remains empty" in utt.text

    def test_wrong_kind_raises(self):
        with pytest.raises(TypeError):
            compose_image_fit(TextFits(1, 2))


def summary(counts=None, percent=100, diags=()):
    full = {t: 0 for t in BracketType}
    full.update(counts or {})
    return PageSummary(counts=full, whitespace_percent=percent, open_diagnostics=tuple(diags))


class TestCheckUtterances:
    def test_empty_board_golden(self):
        assert compose_check(summary()).text == GOLDEN_EMPTY_CHECK

    def test_singular_bracket_and_92_percent(self):
        utt = compose_check(summary({BracketType.TEXT: 1}, 92))
        assert "1 text bracket," in utt.text
        assert "92 percent of the canvas is whitespace." in utt.text

    def test_check_ends_with_the_overflow_sentence(self):
        diag = TextOverflow(20, 15, 10, subject="u1")
        utt = compose_check(summary({BracketType.TEXT: 1}, 92, [diag]))
        assert utt.text.endswith("Text overflow in bracket u1: 20 characters, maximum 15.")

    def test_note_kinds(self):
        diags = [
            TextUnderflow(3, 128, 3 / 128, subject="a"),
            ImageLetterbox(1, 1, 0, 0, subject="b"),
            EmptyBracket(BracketType.VIDEO, subject="c"),
        ]
        text = compose_check(summary({BracketType.TEXT: 3}, 50, diags)).text
        assert "Text underflow in bracket a: 3 of 128 characters." in text
        assert "Media mismatch in bracket b: empty space on the left and right." in text
        assert "Bracket c is empty." in text


class TestReadback:
    BRACKET = Bracket("u1", BracketType.TEXT, Footprint(1, 3, 2, 8))

    def test_text_readback_reports_size_and_count(self):
        utt = compose_readback(self.BRACKET, TextContent(lines=("Welcome",)))
        assert "Text bracket, size 2 by 8" in utt.text
        assert "7 characters" in utt.text
        assert "1 word" in utt.text
        assert "Welcome" in utt.text

    def test_empty_image_bracket(self):
        bracket = Bracket("u2", BracketType.IMAGE, Footprint(5, 1, 2, 2))
        utt = compose_readback(bracket, EmptyContent())
        assert utt.text.endswith("No media attached.")

    def test_video_readback_includes_dimensions(self):
        bracket = Bracket("u3", BracketType.VIDEO, Footprint(5, 1, 4, 6))
        media = MediaContent(MediaKind.VIDEO, "clip.mp4", 1920, 1080)
        utt = compose_readback(bracket, media)
        assert "video, 1920 by 1080" in utt.text

    def test_long_text_preview_is_truncated(self):
        long_text = "x" * 500
        utt = compose_readback(self.BRACKET, TextContent(lines=(long_text,)))
        assert "500 characters" in utt.text
        assert "x" * 40 in utt.text
        assert "x" * 41 not in utt.text


class TestCatalogDiscipline:
    def test_catalog_is_versioned(self):
        assert catalog_version() == 1

    def test_every_entry_has_pattern_and_severity(self):
        for template_id, entry in catalog()["templates"].items():
            assert set(entry) == {"pattern", "severity"}, template_id
            Severity(entry["severity"])

    def test_number_words(self):
        assert num_word(1) == "one"
        assert num_word(12) == "twelve"
        assert num_word(13) == "13"

    def test_rendered_utterances_match_their_template_pattern(self):
        samples = [
            compose_placement(BracketType.TEXT, Footprint(1, 3, 2, 8)),
            compose_text_fit(TextOverflow(20, 15, 10)),
            compose_text_fit(TextUnderflow(3, 128, 3 / 128)),
            compose_text_fit(TextFits(5, 10)),
            compose_image_fit(ImageLetterbox(1, 1, 0, 0), "image"),
            compose_image_fit(ImageFits(), "video"),
            compose_check(summary({BracketType.TEXT: 1}, 92, [TextOverflow(9, 5, 3, subject="u")])),
            compose_readback(self.bracket(), TextContent(lines=("hi",))),
            render("no_selection"),
            render("unknown_command", verb="dance"),
        ]
        for utt in samples:
            pattern = catalog()["templates"][utt.template_id]["pattern"]
            regex = "^" + re.sub(r"\\\{[a-z_]+\\\}", "(.*)", re.escape(pattern)) + "$"
            assert re.match(regex, utt.text, flags=re.DOTALL), (utt.template_id, utt.text)

    @staticmethod
    def bracket():
        return Bracket("u1", BracketType.TEXT, Footprint(1, 3, 2, 8))
