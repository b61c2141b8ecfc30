import re
import unicodedata

from extsum.logging_config import get_logger

logger = get_logger(__name__)

# Lowercased words that end with a period without ending the sentence. Abbreviations
# that double as ordinary words ("no.", "sat.", "sun.", "mar.", "rev.") are left out.
# fmt: off
ABBREVIATIONS = frozenset(
    {
        "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "mt.", "hon.",
        "lt.", "sgt.", "capt.", "cmdr.", "adm.", "gov.", "pres.",
        "jan.", "feb.", "apr.", "jun.", "jul.", "aug.", "sept.", "oct.", "nov.",
        "tue.", "thu.", "fri.",
        "inc.", "ltd.", "co.", "corp.", "bros.", "dept.", "univ.", "assn.",
        "vs.", "e.g.", "i.e.", "cf.", "al.", "approx.", "vol.", "fig.",
        "u.s.", "u.k.", "u.n.", "d.c.", "a.m.", "p.m.",
    }
)
# fmt: on

_CLOSERS = "\"'”’)]}"
_OPENERS = "\"'“‘([{"
_BOUNDARY = re.compile(r"[.!?]+[" + re.escape(_CLOSERS) + r"]*\s+")


def _is_stripped(char: str) -> bool:
    """Punctuation (Unicode P*) except connector punctuation such as '_'."""
    category = unicodedata.category(char)
    return category.startswith("P") and category != "Pc"


def _strip_punctuation(piece: str) -> str:
    start, end = 0, len(piece)
    while start < end and _is_stripped(piece[start]):
        start += 1
    while end > start and _is_stripped(piece[end - 1]):
        end -= 1
    return piece[start:end]


def tokenize(text: str) -> list[str]:
    """
    Lowercases the text, splits it on Unicode whitespace and strips leading and
    trailing punctuation from every piece. Pieces that end up empty are dropped.
    Internal punctuation survives, so "world—again" stays one token.
    """
    tokens = []
    for piece in text.lower().split():
        token = _strip_punctuation(piece)
        if token:
            tokens.append(token)
    return tokens


def _ends_with_abbreviation(text: str, period_index: int) -> bool:
    head = text[: period_index + 1]
    words = head.split()
    if not words:
        return False
    return words[-1].lower().lstrip(_OPENERS) in ABBREVIATIONS


def split_sentences(text: str) -> list[str]:
    """
    Splits raw text on sentence-final punctuation followed by whitespace and an
    uppercase letter or an opening quote/bracket. Periods closing a known
    abbreviation (see ABBREVIATIONS) never end a sentence.
    """
    sentences = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        end = match.end()
        if end >= len(text):
            break
        following = text[end]
        if not (following.isupper() or following in _OPENERS):
            continue

        terminator = match.group().rstrip().rstrip(_CLOSERS)
        if terminator == "." and _ends_with_abbreviation(text, match.start()):
            continue

        sentence = text[start:end].strip()
        if sentence:
            sentences.append(sentence)
        start = end

    tail = text[start:].strip()
    if tail:
        sentences.append(tail)

    logger.debug(f"Split text of {len(text)} characters into {len(sentences)} sentences")
    return sentences
