"""Word-level backoff classifier over word and character n-gram domains.

Each word of a document is scored in the most specific model domain
that knows anything about it. Domain precedence is fixed: original-cased
words, lowercased words, original-cased grams (longest length first),
lowercased grams (longest first). Within a gram domain the word's score
is the mean of per-gram values; a gram no language has ever seen backs
off by dropping its final character until something matches or the
minimum length is passed, in which case it drops out of the mean.

A word present in a language's model contributes -log of its relative
frequency; a word (or gram) the language is missing contributes that
language's penalty, pm * log(total tokens of the domain), the same
appeared-only-once smoothing rule the Naive Bayes scorer uses.

Document score is the mean of its word scores; lower is better.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path

from .corpus import Corpus, Document, normalize
from .ngram import ModelIOError, NgramModel, NgramRange, extract_ngrams
from .scorers import Prediction, to_prediction

# sub-model kinds, in domain-precedence order
KIND_WORD_ORIG = "wordO"
KIND_WORD_LOWER = "wordL"
KIND_GRAM_ORIG = "gramO"
KIND_GRAM_LOWER = "gramL"

WORD_LENGTH_KEY = 0  # word sub-models store everything under pseudo-length 0


@dataclass(frozen=True)
class HeliConfig:
    lnr: NgramRange | None
    onr: NgramRange | None
    lw: bool
    ow: bool
    pm: float

    def __post_init__(self) -> None:
        if not (self.lw or self.ow or self.lnr or self.onr):
            raise ValueError("at least one scoring domain must be enabled")
        if self.pm <= 0:
            raise ValueError(f"penalty modifier must be positive, got {self.pm}")

    def enabled_kinds(self) -> list[str]:
        kinds = []
        if self.ow:
            kinds.append(KIND_WORD_ORIG)
        if self.lw:
            kinds.append(KIND_WORD_LOWER)
        if self.onr:
            kinds.append(KIND_GRAM_ORIG)
        if self.lnr:
            kinds.append(KIND_GRAM_LOWER)
        return kinds


@dataclass
class HeliModelSet:
    """Per-language word and gram sub-models for each enabled domain."""

    config: HeliConfig
    submodels: dict[str, dict[str, NgramModel]]

    @property
    def languages(self) -> list[str]:
        for kind in self.config.enabled_kinds():
            return sorted(self.submodels[kind])
        return []

    def with_pm(self, pm: float, copy_counts: bool = False) -> "HeliModelSet":
        subs: dict[str, dict[str, NgramModel]] = {}
        for kind, by_lang in self.submodels.items():
            subs[kind] = {}
            for lang, m in by_lang.items():
                counts = (
                    {n: dict(d) for n, d in m.counts.items()}
                    if copy_counts
                    else m.counts
                )
                clone = NgramModel(language=lang, penalty_modifier=pm, counts=counts)
                clone.refresh()
                subs[kind][lang] = clone
        return HeliModelSet(config=replace(self.config, pm=pm), submodels=subs)


def _doc_items(doc: Document, config: HeliConfig) -> dict[str, Counter]:
    """Countable items of one document per enabled sub-model kind."""
    norm = normalize(doc.text)
    items: dict[str, Counter] = {}
    if config.ow:
        items[KIND_WORD_ORIG] = Counter(norm.words)
    if config.lw:
        items[KIND_WORD_LOWER] = Counter(norm.lowercased)
    if config.onr:
        items[KIND_GRAM_ORIG] = extract_ngrams(norm, config.onr, lowercase=False)
    if config.lnr:
        items[KIND_GRAM_LOWER] = extract_ngrams(norm, config.lnr, lowercase=True)
    return items


def _add_items(model: NgramModel, kind: str, items: Counter) -> None:
    if kind in (KIND_WORD_ORIG, KIND_WORD_LOWER):
        by_len = model.counts.setdefault(WORD_LENGTH_KEY, {})
        for word, c in items.items():
            by_len[word] = by_len.get(word, 0) + c
        model.refresh()
    else:
        model.add_grams(items)


def heli_build(train: Corpus, config: HeliConfig) -> HeliModelSet:
    """Count words and grams per language over a labeled corpus."""
    if not train.labeled:
        raise ValueError("heli_build requires a labeled corpus")
    languages = sorted(train.label_set)
    subs = {
        kind: {lang: NgramModel(lang, config.pm) for lang in languages}
        for kind in config.enabled_kinds()
    }
    words_seen: Counter = Counter()
    models = HeliModelSet(config=config, submodels=subs)
    for doc in train:
        words_seen[doc.label] += len(normalize(doc.text).words)
        for kind, items in _doc_items(doc, config).items():
            _add_items(subs[kind][doc.label], kind, items)
    for lang in languages:
        if words_seen[lang] == 0:
            raise ValueError(f"language {lang!r}: no words after normalization")
    return models


def heli_add_document(models: HeliModelSet, doc: Document, language: str) -> HeliModelSet:
    """Fold one document into a language's sub-models, in place."""
    if language not in models.languages:
        raise ValueError(f"unknown language {language!r}")
    for kind, items in _doc_items(doc, models.config).items():
        if items:
            _add_items(models.submodels[kind][language], kind, items)
    return models


def _word_domain_values(
    word: str, by_lang: dict[str, NgramModel]
) -> dict[str, float] | None:
    """Score in a word domain, or None when no language knows the word."""
    if not any(word in m.counts.get(WORD_LENGTH_KEY, {}) for m in by_lang.values()):
        return None
    values = {}
    for lang, m in by_lang.items():
        c = m.counts.get(WORD_LENGTH_KEY, {}).get(word)
        if c is None:
            values[lang] = m.penalty(WORD_LENGTH_KEY)
        else:
            values[lang] = -math.log(c / m.totals[WORD_LENGTH_KEY])
    return values


def _gram_domain_values(
    word: str, rng: NgramRange, by_lang: dict[str, NgramModel]
) -> dict[str, float] | None:
    """Score in a gram domain, trying lengths from the longest down.

    The word enters at length min(rng.max_n, len(word) + 2); the first
    length at which any of its grams is known to any language becomes
    the scoring length. Individually unknown grams then back off by
    truncation; grams unknown at every length are left out of the mean.
    """
    padded = f" {word} "
    size = len(padded)

    def known(gram: str, length: int) -> bool:
        return any(gram in m.counts.get(length, {}) for m in by_lang.values())

    for n in range(min(rng.max_n, size), rng.min_n - 1, -1):
        grams = [padded[i : i + n] for i in range(size - n + 1)]
        if not any(known(g, n) for g in grams):
            continue
        sums = {lang: 0.0 for lang in by_lang}
        used = 0
        for gram in grams:
            length = n
            while not known(gram, length):
                length -= 1
                if length < rng.min_n:
                    break
                gram = gram[:length]
            else:
                used += 1
                for lang, m in by_lang.items():
                    c = m.counts.get(length, {}).get(gram)
                    if c is None:
                        sums[lang] += m.penalty(length)
                    else:
                        sums[lang] += -math.log(c / m.totals[length])
        return {lang: s / used for lang, s in sums.items()}
    return None


def _last_resort_values(models: HeliModelSet) -> dict[str, float]:
    """Every language pays the penalty of the last domain in precedence."""
    config = models.config
    kind = config.enabled_kinds()[-1]
    by_lang = models.submodels[kind]
    if kind in (KIND_WORD_ORIG, KIND_WORD_LOWER):
        return {lang: m.penalty(WORD_LENGTH_KEY) for lang, m in by_lang.items()}
    rng = config.onr if kind == KIND_GRAM_ORIG else config.lnr
    return {lang: m.penalty(rng.min_n) for lang, m in by_lang.items()}


def heli_score_word(
    word_original: str, word_lowercased: str, models: HeliModelSet
) -> dict[str, float]:
    """Score one word in the first domain that recognizes it."""
    config = models.config
    if config.ow:
        values = _word_domain_values(word_original, models.submodels[KIND_WORD_ORIG])
        if values is not None:
            return values
    if config.lw:
        values = _word_domain_values(word_lowercased, models.submodels[KIND_WORD_LOWER])
        if values is not None:
            return values
    if config.onr:
        values = _gram_domain_values(
            word_original, config.onr, models.submodels[KIND_GRAM_ORIG]
        )
        if values is not None:
            return values
    if config.lnr:
        values = _gram_domain_values(
            word_lowercased, config.lnr, models.submodels[KIND_GRAM_LOWER]
        )
        if values is not None:
            return values
    return _last_resort_values(models)


def heli_score_doc(doc: Document, models: HeliModelSet) -> dict[str, float]:
    """Mean word score per language; all zero for a wordless document.

    Word scores are combined with an exactly rounded sum, so the result
    does not depend on word order.
    """
    norm = normalize(doc.text)
    languages = models.languages
    if not norm.words:
        return {lang: 0.0 for lang in languages}
    per_lang: dict[str, list[float]] = {lang: [] for lang in languages}
    for orig, lower in zip(norm.words, norm.lowercased):
        values = heli_score_word(orig, lower, models)
        for lang in languages:
            per_lang[lang].append(values[lang])
    n = len(norm.words)
    return {lang: math.fsum(vals) / n for lang, vals in per_lang.items()}


def heli_classify(doc: Document, models: HeliModelSet) -> Prediction:
    """Classify one document; lowest mean word score wins."""
    if not models.languages:
        raise ValueError("model set has no languages")
    return to_prediction(doc.id, heli_score_doc(doc, models), lower=True)


def _range_header(rng: NgramRange | None) -> str:
    return f"{rng.min_n} {rng.max_n}" if rng else "-"


def _parse_range_header(value: str) -> NgramRange | None:
    if value == "-":
        return None
    lo, hi = value.split()
    return NgramRange(int(lo), int(hi))


def save_heli_models(models: HeliModelSet, path: str | Path) -> None:
    """Write word+gram sub-models as UTF-8 text.

    Rows are ``language<TAB>kind<TAB>length<TAB>item<TAB>count`` sorted
    by (language, kind, length, item); word rows use length 0.
    """
    config = models.config
    lines = [
        "#version 1",
        f"#pm {config.pm!r}",
        "#log natural",
        f"#lnr {_range_header(config.lnr)}",
        f"#onr {_range_header(config.onr)}",
        f"#lw {int(config.lw)}",
        f"#ow {int(config.ow)}",
    ]
    rows = []
    for kind, by_lang in models.submodels.items():
        for lang, model in by_lang.items():
            for length, by_item in model.counts.items():
                for item, count in by_item.items():
                    rows.append((lang, kind, length, item, count))
    rows.sort()
    lines.extend(f"{la}\t{k}\t{n}\t{it}\t{c}" for la, k, n, it, c in rows)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_heli_models(path: str | Path) -> HeliModelSet:
    """Load a model set written by ``save_heli_models``."""
    from .ngram import _read_model_lines

    path = Path(path)
    header, rows, _ = _read_model_lines(path)
    try:
        config = HeliConfig(
            lnr=_parse_range_header(header["lnr"]),
            onr=_parse_range_header(header["onr"]),
            lw=bool(int(header["lw"])),
            ow=bool(int(header["ow"])),
            pm=float(header["pm"]),
        )
    except (KeyError, ValueError) as exc:
        raise ModelIOError(f"{path}: bad or missing header: {exc}") from exc

    kinds = set(config.enabled_kinds())
    subs: dict[str, dict[str, NgramModel]] = {kind: {} for kind in kinds}
    languages: set[str] = set()
    for fields in rows:
        if len(fields) != 5:
            raise ModelIOError(f"{path}: expected 5 fields per row, got {len(fields)}")
        lang, kind, length_s, item, count_s = fields
        if kind not in kinds:
            raise ModelIOError(f"{path}: row kind {kind!r} not enabled in header")
        try:
            length, count = int(length_s), int(count_s)
        except ValueError as exc:
            raise ModelIOError(f"{path}: non-integer length or count: {exc}") from exc
        is_word = kind in (KIND_WORD_ORIG, KIND_WORD_LOWER)
        if count < 1 or (is_word and length != 0) or (not is_word and length != len(item)):
            raise ModelIOError(f"{path}: inconsistent row {fields!r}")
        languages.add(lang)
        model = subs[kind].setdefault(lang, NgramModel(lang, config.pm))
        model.counts.setdefault(length, {})[item] = count
    if not languages:
        raise ModelIOError(f"{path}: model file holds no rows")
    for kind in kinds:
        for lang in languages:
            model = subs[kind].setdefault(lang, NgramModel(lang, config.pm))
            model.refresh()
    return HeliModelSet(config=config, submodels=subs)
