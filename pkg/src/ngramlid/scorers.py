"""Document scoring: simple scoring, sum of relative frequencies, and
the penalty-smoothed Naive Bayes formulation.

Simple scoring and the frequency sum are higher-is-better; Naive Bayes
accumulates negative log relative frequencies, so lower is better. The
penalty modifier only ever matters for Naive Bayes.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .corpus import Document
from .ngram import ModelSet, NgramModel

METHODS = ("simple", "sum_rf", "nb")


@dataclass(frozen=True)
class Prediction:
    doc_id: int
    best: str
    scores: dict[str, float]
    margin: float


def _grams_by_length(grams: Counter) -> list[tuple[int, list[tuple[str, int]]]]:
    by_len: dict[int, list[tuple[str, int]]] = {}
    for gram, mult in grams.items():
        by_len.setdefault(len(gram), []).append((gram, mult))
    return list(by_len.items())


def _score_simple(grouped, model: NgramModel) -> float:
    hit = 0
    for length, items in grouped:
        counts = model.counts.get(length)
        if not counts:
            continue
        for gram, mult in items:
            if gram in counts:
                hit += mult
    return hit


def _score_sum_rf(grouped, model: NgramModel) -> float:
    # integer accumulation per length, one division each: equal exact
    # scores come out as equal floats, whatever grams produced them
    terms = []
    for length, items in grouped:
        counts = model.counts.get(length)
        if not counts:
            continue
        acc = 0
        for gram, mult in items:
            c = counts.get(gram)
            if c is not None:
                acc += mult * c
        if acc:
            terms.append(acc / model.totals[length])
    return math.fsum(terms)


def _score_nb(grouped, model: NgramModel) -> float:
    # Present grams cost -log(count/total); absent ones cost the
    # model's penalty at that gram length. fsum keeps the score
    # independent of gram enumeration order.
    terms = []
    for length, items in grouped:
        counts = model.counts.get(length, {})
        denom = model.totals.get(length, 0)
        pen = model.penalty(length)
        for gram, mult in items:
            c = counts.get(gram)
            if c is None:
                terms.append(mult * pen)
            else:
                terms.append(mult * -math.log(c / denom))
    return math.fsum(terms)


_SCORERS = {"simple": _score_simple, "sum_rf": _score_sum_rf, "nb": _score_nb}


def score_simple(grams: Counter, model_set: ModelSet) -> dict[str, float]:
    """Number of gram tokens (with multiplicity) found in each model."""
    return score_with("simple", grams, model_set)


def score_sum_rf(grams: Counter, model_set: ModelSet) -> dict[str, float]:
    """Sum of per-gram relative frequencies; absent grams contribute 0."""
    return score_with("sum_rf", grams, model_set)


def score_nb(grams: Counter, model_set: ModelSet) -> dict[str, float]:
    """Sum of negative log relative frequencies, penalty-smoothed. Lower wins."""
    return score_with("nb", grams, model_set)


def score_with(method: str, grams: Counter, model_set: ModelSet) -> dict[str, float]:
    """Score all languages of a model set over a precomputed gram multiset."""
    scorer = _SCORERS[method]
    grouped = _grams_by_length(grams)
    return {lang: scorer(grouped, m) for lang, m in model_set.models.items()}


def score_language(method: str, grams: Counter, model: NgramModel) -> float:
    """Score a single language; bit-identical to its entry in ``score_with``."""
    return _SCORERS[method](_grams_by_length(grams), model)


def lower_is_better(method: str) -> bool:
    return method == "nb"


def to_prediction(
    doc_id: int, scores: dict[str, float], lower: bool
) -> Prediction:
    """Pick the winner under the given polarity.

    Ties go to the lexicographically smallest language code; the margin
    is the absolute gap between the two best scores (0.0 when there is
    only one language).
    """
    if not scores:
        raise ValueError("cannot predict from an empty score map")
    ordered = sorted(
        scores.items(), key=lambda kv: ((kv[1] if lower else -kv[1]), kv[0])
    )
    best = ordered[0][0]
    margin = abs(ordered[1][1] - ordered[0][1]) if len(ordered) > 1 else 0.0
    return Prediction(doc_id=doc_id, best=best, scores=dict(scores), margin=float(margin))


def classify(doc: Document, model_set: ModelSet, method: str) -> Prediction:
    """Score one document with the chosen method and pick a language."""
    if method not in _SCORERS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if not model_set.models:
        raise ValueError("model set has no languages")
    grams = model_set.doc_grams(doc)
    scores = score_with(method, grams, model_set)
    return to_prediction(doc.id, scores, lower=lower_is_better(method))
