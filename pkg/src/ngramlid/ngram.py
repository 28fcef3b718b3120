"""Character n-gram frequency models.

Each word is padded with one leading and one trailing space before
extraction, so word-initial and word-final grams are distinct from
word-internal ones. Models keep raw counts and totals per gram length;
the relative frequency of a gram of length L is count / totals[L].

The smoothing value for a gram absent from a model ("penalty") is the
negative natural log of a gram that would appear exactly once,
multiplied by a penalty modifier:

    penalty[L] = pm * log(totals[L])

A length with no mass at all gets penalty 0, the continuous extension
of the same formula (totals of 1 also yields 0).
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, Document, NormalizedText, normalize

MAX_NGRAM_LENGTH = 12


class ModelIOError(ValueError):
    """Raised for unreadable or malformed model files."""


@dataclass(frozen=True)
class NgramRange:
    min_n: int
    max_n: int

    def __post_init__(self) -> None:
        if not (1 <= self.min_n <= self.max_n <= MAX_NGRAM_LENGTH):
            raise ValueError(
                f"need 1 <= min_n <= max_n <= {MAX_NGRAM_LENGTH}, "
                f"got {self.min_n}-{self.max_n}"
            )

    def __str__(self) -> str:
        return f"{self.min_n}-{self.max_n}"

    @classmethod
    def parse(cls, spec: str) -> "NgramRange":
        """Parse ``"2-6"`` (or a bare ``"3"`` meaning 3-3)."""
        parts = spec.split("-")
        if len(parts) == 1:
            return cls(int(parts[0]), int(parts[0]))
        if len(parts) == 2:
            return cls(int(parts[0]), int(parts[1]))
        raise ValueError(f"bad n-gram range spec {spec!r}")


def extract_ngrams(
    norm: NormalizedText,
    rng: NgramRange,
    lowercase: bool = True,
    pad: bool = True,
) -> Counter:
    """Extract the multiset of character n-grams of a normalized text.

    Every word ``w`` becomes ``" w "`` (unless ``pad`` is off) and all
    contiguous substrings with lengths in ``rng`` are emitted with
    multiplicity; a single word of length L yields max(0, L+3-n) grams
    of length n.
    """
    words = norm.lowercased if lowercase else norm.words
    grams: Counter = Counter()
    for w in words:
        s = f" {w} " if pad else w
        ls = len(s)
        for n in range(rng.min_n, min(rng.max_n, ls) + 1):
            grams.update([s[i : i + n] for i in range(ls - n + 1)])
    return grams


@dataclass
class NgramModel:
    """Per-language gram counts, totals, and penalties, keyed by length."""

    language: str
    penalty_modifier: float
    counts: dict[int, dict[str, int]] = field(default_factory=dict)
    totals: dict[int, int] = field(default_factory=dict)
    penalties: dict[int, float] = field(default_factory=dict)

    def add_grams(self, grams: Counter) -> None:
        for gram, c in grams.items():
            by_len = self.counts.setdefault(len(gram), {})
            by_len[gram] = by_len.get(gram, 0) + c
        self.refresh()

    def refresh(self) -> None:
        """Recompute totals and penalties from the raw counts."""
        self.totals = {n: sum(d.values()) for n, d in self.counts.items()}
        pm = self.penalty_modifier
        self.penalties = {
            n: (pm * math.log(t) if t > 0 else 0.0) for n, t in self.totals.items()
        }

    def penalty(self, length: int) -> float:
        return self.penalties.get(length, 0.0)

    def rel_freq(self, gram: str) -> float:
        by_len = self.counts.get(len(gram))
        if not by_len or gram not in by_len:
            return 0.0
        return by_len[gram] / self.totals[len(gram)]

    @property
    def grand_total(self) -> int:
        return sum(self.totals.values())


@dataclass
class ModelSet:
    """Language models sharing one gram range and preprocessing options."""

    models: dict[str, NgramModel]
    range: NgramRange
    penalty_modifier: float
    lowercase: bool = True
    pad: bool = True
    concatenate: bool = False

    def __post_init__(self) -> None:
        for lang, model in self.models.items():
            if model.penalty_modifier != self.penalty_modifier:
                raise ValueError(
                    f"model {lang!r} disagrees on the penalty modifier"
                )

    @property
    def languages(self) -> list[str]:
        return sorted(self.models)

    def doc_grams(self, doc: Document) -> Counter:
        """Gram multiset of a document under this model set's options."""
        norm = normalize(doc.text, concatenate=self.concatenate)
        return extract_ngrams(norm, self.range, self.lowercase, self.pad)

    def with_pm(self, pm: float, copy_counts: bool = False) -> "ModelSet":
        """Clone with a different penalty modifier.

        Counts are shared unless ``copy_counts`` is set; callers that go
        on to mutate the clone (adaptation) must request copies.
        """
        models = {}
        for lang, m in self.models.items():
            counts = (
                {n: dict(d) for n, d in m.counts.items()} if copy_counts else m.counts
            )
            clone = NgramModel(language=lang, penalty_modifier=pm, counts=counts)
            clone.refresh()
            models[lang] = clone
        return ModelSet(
            models=models,
            range=self.range,
            penalty_modifier=pm,
            lowercase=self.lowercase,
            pad=self.pad,
            concatenate=self.concatenate,
        )


def build_models(
    train: Corpus,
    rng: NgramRange,
    pm: float,
    lowercase: bool = True,
    pad: bool = True,
    concatenate: bool = False,
) -> ModelSet:
    """Accumulate per-language gram counts over a labeled training corpus.

    Raises if any label's documents normalize to zero words, since the
    resulting model would be empty.
    """
    if pm <= 0:
        raise ValueError(f"penalty modifier must be positive, got {pm}")
    if not train.labeled:
        raise ValueError("build_models requires a labeled corpus")

    per_lang: dict[str, Counter] = defaultdict(Counter)
    words_seen: dict[str, int] = defaultdict(int)
    for doc in train:
        norm = normalize(doc.text, concatenate=concatenate)
        words_seen[doc.label] += len(norm.words)
        per_lang[doc.label].update(extract_ngrams(norm, rng, lowercase, pad))

    models = {}
    for lang in sorted(per_lang):
        if words_seen[lang] == 0:
            raise ValueError(f"language {lang!r}: no words after normalization")
        model = NgramModel(language=lang, penalty_modifier=pm)
        model.add_grams(per_lang[lang])
        models[lang] = model
    return ModelSet(
        models=models,
        range=rng,
        penalty_modifier=pm,
        lowercase=lowercase,
        pad=pad,
        concatenate=concatenate,
    )


def add_document(model_set: ModelSet, doc: Document, language: str) -> ModelSet:
    """Fold one document's grams into a language's model, in place.

    Totals and penalties of that language are refreshed; other languages
    are untouched. Returns the same model set for convenience. Callers
    must serialize concurrent updates.
    """
    if language not in model_set.models:
        raise ValueError(f"unknown language {language!r}")
    grams = model_set.doc_grams(doc)
    if grams:
        model_set.models[language].add_grams(grams)
    return model_set


_BOOL_KEYS = {"lowercase": True, "pad": True, "concat": False}


def save_models(model_set: ModelSet, path: str | Path) -> None:
    """Write a model set as diffable UTF-8 text.

    Header lines pin version, range, penalty modifier, and log base;
    rows are ``language<TAB>length<TAB>gram<TAB>count`` sorted by
    (language, length, gram codepoint order).
    """
    lines = [
        "#version 1",
        f"#range {model_set.range.min_n} {model_set.range.max_n}",
        f"#pm {model_set.penalty_modifier!r}",
        "#log natural",
        f"#lowercase {int(model_set.lowercase)}",
        f"#pad {int(model_set.pad)}",
        f"#concat {int(model_set.concatenate)}",
    ]
    for lang in sorted(model_set.models):
        model = model_set.models[lang]
        for n in sorted(model.counts):
            for gram in sorted(model.counts[n]):
                lines.append(f"{lang}\t{n}\t{gram}\t{model.counts[n][gram]}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _read_model_lines(path: Path) -> tuple[dict[str, str], list[list[str]], int]:
    """Split a model file into header key/values and data rows.

    A well-formed file ends with a newline; a missing one means the file
    was truncated mid-write.
    """
    raw = path.read_text(encoding="utf-8")
    if not raw:
        raise ModelIOError(f"{path}: empty model file")
    if not raw.endswith("\n"):
        raise ModelIOError(f"{path}: truncated model file (no trailing newline)")
    header: dict[str, str] = {}
    rows: list[list[str]] = []
    n_fields = 0
    for lineno, line in enumerate(raw.split("\n")[:-1], start=1):
        if line.startswith("#"):
            key, _, value = line[1:].partition(" ")
            header[key] = value
        else:
            fields = line.split("\t")
            if not rows:
                n_fields = len(fields)
            elif len(fields) != n_fields:
                raise ModelIOError(f"{path}: line {lineno}: ragged row")
            rows.append(fields)
    if header.get("version") != "1":
        raise ModelIOError(
            f"{path}: unsupported model file version {header.get('version')!r}"
        )
    if header.get("log", "natural") != "natural":
        raise ModelIOError(f"{path}: unsupported log base {header['log']!r}")
    return header, rows, n_fields


def is_heli_model_file(path: str | Path) -> bool:
    """Sniff whether a model file holds word+gram sub-models (5 columns)."""
    header, _, n_fields = _read_model_lines(Path(path))
    return "lw" in header or n_fields == 5


def load_models(path: str | Path) -> ModelSet:
    """Load a model set written by ``save_models``. Round-trip identity holds."""
    path = Path(path)
    header, rows, _ = _read_model_lines(path)
    try:
        lo, hi = header["range"].split()
        rng = NgramRange(int(lo), int(hi))
        pm = float(header["pm"])
    except (KeyError, ValueError) as exc:
        raise ModelIOError(f"{path}: bad or missing header: {exc}") from exc
    opts = {
        key: bool(int(header.get(key, str(int(default)))))
        for key, default in _BOOL_KEYS.items()
    }

    models: dict[str, NgramModel] = {}
    for lineno, fields in enumerate(rows, start=1):
        if len(fields) != 4:
            raise ModelIOError(f"{path}: expected 4 fields per row, got {len(fields)}")
        lang, length_s, gram, count_s = fields
        try:
            length, count = int(length_s), int(count_s)
        except ValueError as exc:
            raise ModelIOError(f"{path}: non-integer length or count: {exc}") from exc
        if length != len(gram) or count < 1:
            raise ModelIOError(f"{path}: inconsistent row {fields!r}")
        model = models.setdefault(lang, NgramModel(language=lang, penalty_modifier=pm))
        model.counts.setdefault(length, {})[gram] = count
    if not models:
        raise ModelIOError(f"{path}: model file holds no gram rows")
    for model in models.values():
        model.refresh()
    return ModelSet(
        models=models,
        range=rng,
        penalty_modifier=pm,
        lowercase=opts["lowercase"],
        pad=opts["pad"],
        concatenate=opts["concat"],
    )
