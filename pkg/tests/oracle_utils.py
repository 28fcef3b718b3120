"""Independent brute-force scorers used as oracles by the tests.

Everything here is computed from (text, label) pairs with its own
tokenizer, its own gram enumeration, and exact rational arithmetic, so
agreement with the library is meaningful. Naive Bayes is evaluated in
linear space as a product of relative frequencies (absent grams
multiply by total**-pm), which only stays exact for integer penalty
modifiers; oracle corpora therefore use integer pm values.
"""

from __future__ import annotations

import re
from fractions import Fraction

_WORD_RE = re.compile(r"[a-z]+")


def brute_words(text: str) -> list[str]:
    return _WORD_RE.findall(text.lower())


def brute_grams(text: str, lo: int, hi: int) -> list[str]:
    """Every padded gram of every word, with repeats, via direct slicing."""
    grams = []
    for word in brute_words(text):
        padded = " " + word + " "
        for n in range(lo, hi + 1):
            for i in range(len(padded)):
                if i + n <= len(padded):
                    grams.append(padded[i : i + n])
    return grams


class BruteModel:
    """Per-language gram counts built by literal enumeration."""

    def __init__(self, pairs: list[tuple[str, str]], lo: int, hi: int):
        self.lo, self.hi = lo, hi
        self.counts: dict[str, dict[str, int]] = {}
        for text, label in pairs:
            table = self.counts.setdefault(label, {})
            for gram in brute_grams(text, lo, hi):
                table[gram] = table.get(gram, 0) + 1
        self.totals: dict[str, dict[int, int]] = {}
        for lang, table in self.counts.items():
            by_len: dict[int, int] = {}
            for gram, c in table.items():
                by_len[len(gram)] = by_len.get(len(gram), 0) + c
            self.totals[lang] = by_len

    @property
    def languages(self) -> list[str]:
        return sorted(self.counts)

    def simple_scores(self, text: str) -> dict[str, int]:
        grams = brute_grams(text, self.lo, self.hi)
        return {
            lang: sum(1 for g in grams if g in self.counts[lang])
            for lang in self.languages
        }

    def sum_rf_scores(self, text: str) -> dict[str, Fraction]:
        grams = brute_grams(text, self.lo, self.hi)
        scores = {}
        for lang in self.languages:
            total = Fraction(0)
            for g in grams:
                c = self.counts[lang].get(g)
                if c is not None:
                    total += Fraction(c, self.totals[lang][len(g)])
            scores[lang] = total
        return scores

    def nb_products(self, text: str, pm: int) -> dict[str, Fraction]:
        """Linear-space Naive Bayes: product of relative frequencies,
        with total**-pm for absent grams. Higher is better."""
        assert pm == int(pm), "exact oracle needs an integer penalty modifier"
        grams = brute_grams(text, self.lo, self.hi)
        scores = {}
        for lang in self.languages:
            product = Fraction(1)
            for g in grams:
                c = self.counts[lang].get(g)
                total = self.totals[lang].get(len(g), 0)
                if c is not None:
                    product *= Fraction(c, total)
                elif total > 0:
                    product *= Fraction(1, total**pm)
            scores[lang] = product
        return scores

    def _scores(self, text: str, method: str, pm: int):
        if method == "simple":
            return self.simple_scores(text)
        if method == "sum_rf":
            return self.sum_rf_scores(text)
        if method == "nb":
            return self.nb_products(text, pm)
        raise ValueError(method)

    def ranking(self, text: str, method: str, pm: int = 2) -> list[str]:
        scores = self._scores(text, method, pm)
        return sorted(scores, key=lambda lang: (-scores[lang], lang))

    def ranking_classes(self, text: str, method: str, pm: int = 2) -> list[set[str]]:
        """Ranking as ordered classes of exactly tied languages.

        Exact rational ties are legitimate either-order points for a
        float implementation; every strict comparison is still binding.
        """
        scores = self._scores(text, method, pm)
        classes: list[set[str]] = []
        for lang in self.ranking(text, method, pm):
            if classes and any(scores[o] == scores[lang] for o in classes[-1]):
                classes[-1].add(lang)
            else:
                classes.append({lang})
        return classes


def impl_ranking(scores: dict[str, float], lower: bool) -> list[str]:
    """Ranking of a library score map under the method's polarity."""
    return sorted(scores, key=lambda lang: (scores[lang] if lower else -scores[lang], lang))


def random_tiny_corpus(rnd) -> tuple[list[tuple[str, str]], list[str], int, int, int]:
    """A random toy task: labeled pairs, probe texts, gram range, and pm.

    Kept tiny on purpose: few languages over overlapping alphabets,
    short words, gram lengths of at most 3, integer pm.
    """
    n_langs = rnd.randint(2, 5)
    langs = [f"l{i}" for i in range(n_langs)]
    alphabets = {}
    for lang in langs:
        size = rnd.randint(3, 6)
        alphabets[lang] = rnd.sample("abcdefgh", size)

    def word(lang: str) -> str:
        return "".join(rnd.choice(alphabets[lang]) for _ in range(rnd.randint(1, 5)))

    def line(lang: str) -> str:
        return " ".join(word(lang) for _ in range(rnd.randint(1, 4)))

    pairs = [(line(lang), lang) for lang in langs]
    for _ in range(rnd.randint(0, 20 - n_langs)):
        lang = rnd.choice(langs)
        pairs.append((line(lang), lang))

    probes = [text for text, _ in rnd.sample(pairs, min(3, len(pairs)))]
    for _ in range(3):
        probes.append(line(rnd.choice(langs)))
    probes.append("zqz vw")  # grams mostly unseen anywhere

    lo = rnd.randint(1, 3)
    hi = rnd.randint(lo, 3)
    pm = rnd.choice([1, 2, 3])
    return pairs, probes, lo, hi, pm
