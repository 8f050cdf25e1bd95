"""Reference ROUGE-2 scorer used to freeze the conformance fixture.

Mirrors the standard n-gram scoring routine (clipped counts against the
target, precision/recall over n-gram mass, harmonic mean), with this
project's lowercase + whitespace tokenizer in place of the reference's
regex tokenizer. Independent of the package under test.
"""

import collections


def _create_ngrams(tokens, n):
    ngrams = collections.Counter()
    for i in range(len(tokens) - n + 1):
        ngrams[tuple(tokens[i : i + n])] += 1
    return ngrams


def _score_ngrams(target_ngrams, prediction_ngrams):
    intersection_ngrams_count = 0
    for ngram in target_ngrams:
        intersection_ngrams_count += min(
            target_ngrams[ngram], prediction_ngrams[ngram]
        )
    target_ngrams_count = sum(target_ngrams.values())
    prediction_ngrams_count = sum(prediction_ngrams.values())

    precision = intersection_ngrams_count / max(prediction_ngrams_count, 1)
    recall = intersection_ngrams_count / max(target_ngrams_count, 1)
    if precision + recall > 0:
        fmeasure = 2 * precision * recall / (precision + recall)
    else:
        fmeasure = 0.0
    return fmeasure


def rouge2_pair(prediction, reference):
    """Bigram F-measure for one pair, 0-1 scale."""
    pred_tokens = prediction.lower().split()
    ref_tokens = reference.lower().split()
    return _score_ngrams(_create_ngrams(ref_tokens, 2), _create_ngrams(pred_tokens, 2))


def rouge2_corpus(predictions, references):
    """Mean pair score scaled to 0-100."""
    assert len(predictions) == len(references) and predictions
    total = sum(rouge2_pair(p, r) for p, r in zip(predictions, references))
    return 100 * total / len(predictions)
