from __future__ import annotations

import pytest

from ngramlid import Corpus, Document


@pytest.fixture
def make_corpus():
    def build(pairs) -> Corpus:
        docs = tuple(
            Document(id=i, text=text, label=label)
            for i, (text, label) in enumerate(pairs)
        )
        return Corpus(docs=docs)

    return build


@pytest.fixture
def make_unlabeled():
    def build(texts) -> Corpus:
        return Corpus(docs=tuple(Document(id=i, text=t) for i, t in enumerate(texts)))

    return build
