"""Deterministic synthetic corpus generation.

Gives the test suite and CLI a desk-scale stand-in for real code-mixed
data: each language draws words from its own character inventory, and a
configurable fraction of words comes from a shared inventory instead,
imitating an embedded second language. Everything is driven by a
64-bit linear congruential generator (Knuth's MMIX constants,
multiplier 6364136209068709319, increment 1442695040888963407), so a
seed produces the identical corpus on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

from .corpus import Corpus, Document

_LCG_MULTIPLIER = 6364136209068709319
_LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


class Lcg:
    """64-bit linear congruential generator with documented constants."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state * _LCG_MULTIPLIER + _LCG_INCREMENT) & _MASK64
        return self.state

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def pick(self, cumulative: list[float]) -> int:
        """Index drawn proportionally to the cumulative weight table."""
        r = self.random() * cumulative[-1]
        for i, bound in enumerate(cumulative):
            if r < bound:
                return i
        return len(cumulative) - 1


@dataclass(frozen=True)
class LanguageSpec:
    """Character inventory and word-shape recipe for one language."""

    code: str
    inventory: str
    char_weights: tuple[float, ...] | None = None
    word_lengths: tuple[int, ...] = (2, 3, 4, 5, 6)
    length_weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not self.inventory:
            raise ValueError(f"language {self.code!r}: empty character inventory")
        if not self.word_lengths or any(n < 1 for n in self.word_lengths):
            raise ValueError(f"language {self.code!r}: bad word lengths")
        for name, weights, items in (
            ("char_weights", self.char_weights, self.inventory),
            ("length_weights", self.length_weights, self.word_lengths),
        ):
            if weights is not None:
                if len(weights) != len(items):
                    raise ValueError(f"language {self.code!r}: {name} length mismatch")
                if any(w <= 0 for w in weights):
                    raise ValueError(f"language {self.code!r}: {name} must be positive")


@dataclass(frozen=True)
class SynthSpec:
    languages: tuple[LanguageSpec, ...]
    lines_per_language: int
    words_per_line: int
    mixing_rate: float = 0.0
    shared: LanguageSpec | None = None
    seed: int = 1

    def __post_init__(self) -> None:
        if not self.languages:
            raise ValueError("need at least one language")
        if self.lines_per_language < 1 or self.words_per_line < 1:
            raise ValueError("lines per language and words per line must be >= 1")
        if not 0.0 <= self.mixing_rate < 1.0:
            raise ValueError(f"mixing rate must be in [0, 1), got {self.mixing_rate}")
        if self.mixing_rate > 0.0 and self.shared is None:
            raise ValueError("a positive mixing rate needs a shared inventory")


def _cumulative(weights: tuple[float, ...] | None, n: int) -> list[float]:
    if weights is None:
        weights = (1.0,) * n
    return list(accumulate(weights))


def _word(rng: Lcg, lang: LanguageSpec, cum_chars, cum_lengths) -> str:
    length = lang.word_lengths[rng.pick(cum_lengths)]
    return "".join(lang.inventory[rng.pick(cum_chars)] for _ in range(length))


def generate(spec: SynthSpec) -> Corpus:
    """Generate the labeled corpus a spec describes; same seed, same bytes."""
    rng = Lcg(spec.seed)
    tables = {
        lang.code: (
            lang,
            _cumulative(lang.char_weights, len(lang.inventory)),
            _cumulative(lang.length_weights, len(lang.word_lengths)),
        )
        for lang in spec.languages
    }
    shared_table = None
    if spec.shared is not None:
        shared_table = (
            spec.shared,
            _cumulative(spec.shared.char_weights, len(spec.shared.inventory)),
            _cumulative(spec.shared.length_weights, len(spec.shared.word_lengths)),
        )

    docs: list[Document] = []
    for lang in spec.languages:
        native = tables[lang.code]
        for _ in range(spec.lines_per_language):
            words = []
            for _ in range(spec.words_per_line):
                if shared_table is not None and rng.random() < spec.mixing_rate:
                    src, cum_chars, cum_lengths = shared_table
                else:
                    src, cum_chars, cum_lengths = native
                words.append(_word(rng, src, cum_chars, cum_lengths))
            docs.append(Document(id=len(docs), text=" ".join(words), label=lang.code))
    return Corpus(docs=tuple(docs))


def spec_from_dict(data: dict) -> SynthSpec:
    """Build a spec from parsed JSON (the CLI's ``synth --spec`` format)."""

    def lang_spec(entry: dict, code_required: bool = True) -> LanguageSpec:
        return LanguageSpec(
            code=entry["code"] if code_required else entry.get("code", "shared"),
            inventory=entry["inventory"],
            char_weights=tuple(entry["char_weights"]) if "char_weights" in entry else None,
            word_lengths=tuple(entry.get("word_lengths", (2, 3, 4, 5, 6))),
            length_weights=(
                tuple(entry["length_weights"]) if "length_weights" in entry else None
            ),
        )

    return SynthSpec(
        languages=tuple(lang_spec(e) for e in data["languages"]),
        lines_per_language=data["lines_per_language"],
        words_per_line=data["words_per_line"],
        mixing_rate=data.get("mixing_rate", 0.0),
        shared=lang_spec(data["shared"], code_required=False) if "shared" in data else None,
        seed=data.get("seed", 1),
    )
