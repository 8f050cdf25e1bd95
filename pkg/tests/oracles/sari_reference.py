"""Reference SARI scorer used to freeze the conformance fixture.

Transcription of the widely used evaluation-library variant of the SARI
scorer (the one that defines 0/0 = 1 so an exact match with a reference
scores perfectly, and computes keep recall over n-gram mass). Kept
structurally close to that code on purpose, including the Counter
arithmetic, so it can be eyeballed against it; only the tokenizer differs
(lowercase + whitespace, matching this project's preprocessing contract).

Do not import the package under test here.
"""

from collections import Counter


def SARIngram(sgrams, cgrams, rgramslist, numref):
    rgramsall = [rgram for rgrams in rgramslist for rgram in rgrams]
    rgramcounter = Counter(rgramsall)

    sgramcounter = Counter(sgrams)
    sgramcounter_rep = Counter()
    for sgram, scount in sgramcounter.items():
        sgramcounter_rep[sgram] = scount * numref

    cgramcounter = Counter(cgrams)
    cgramcounter_rep = Counter()
    for cgram, ccount in cgramcounter.items():
        cgramcounter_rep[cgram] = ccount * numref

    # KEEP
    keepgramcounter_rep = sgramcounter_rep & cgramcounter_rep
    keepgramcountergood_rep = keepgramcounter_rep & rgramcounter
    keepgramcounterall_rep = sgramcounter_rep & rgramcounter

    keeptmpscore1 = 0
    keeptmpscore2 = 0
    for keepgram in keepgramcountergood_rep:
        keeptmpscore1 += keepgramcountergood_rep[keepgram] / keepgramcounter_rep[keepgram]
        # corrected keep-recall numerator: n-gram mass, not a ratio
        keeptmpscore2 += keepgramcountergood_rep[keepgram]
    # 0/0 = 1 so an output identical to a reference scores perfectly
    keepscore_precision = 1
    keepscore_recall = 1
    if len(keepgramcounter_rep) > 0:
        keepscore_precision = keeptmpscore1 / len(keepgramcounter_rep)
    if len(keepgramcounterall_rep) > 0:
        keepscore_recall = keeptmpscore2 / sum(keepgramcounterall_rep.values())
    keepscore = 0
    if keepscore_precision > 0 or keepscore_recall > 0:
        keepscore = (
            2 * keepscore_precision * keepscore_recall
            / (keepscore_precision + keepscore_recall)
        )

    # DELETION (precision only)
    delgramcounter_rep = sgramcounter_rep - cgramcounter_rep
    delgramcountergood_rep = delgramcounter_rep - rgramcounter
    deltmpscore1 = 0
    for delgram in delgramcountergood_rep:
        deltmpscore1 += delgramcountergood_rep[delgram] / delgramcounter_rep[delgram]
    delscore_precision = 1
    if len(delgramcounter_rep) > 0:
        delscore_precision = deltmpscore1 / len(delgramcounter_rep)

    # ADDITION
    addgramcounter = set(cgramcounter) - set(sgramcounter)
    addgramcountergood = set(addgramcounter) & set(rgramcounter)
    addgramcounterall = set(rgramcounter) - set(sgramcounter)

    addtmpscore = 0
    for addgram in addgramcountergood:
        addtmpscore += 1

    addscore_precision = 1
    addscore_recall = 1
    if len(addgramcounter) > 0:
        addscore_precision = addtmpscore / len(addgramcounter)
    if len(addgramcounterall) > 0:
        addscore_recall = addtmpscore / len(addgramcounterall)
    addscore = 0
    if addscore_precision > 0 or addscore_recall > 0:
        addscore = (
            2 * addscore_precision * addscore_recall
            / (addscore_precision + addscore_recall)
        )

    return (keepscore, delscore_precision, addscore)


def _grams_up_to_4(words):
    one = list(words)
    two, three, four = [], [], []
    for i in range(0, len(one) - 1):
        if i < len(one) - 1:
            two.append(one[i] + " " + one[i + 1])
        if i < len(one) - 2:
            three.append(one[i] + " " + one[i + 1] + " " + one[i + 2])
        if i < len(one) - 3:
            four.append(one[i] + " " + one[i + 1] + " " + one[i + 2] + " " + one[i + 3])
    return one, two, three, four


def normalize(sentence):
    """This project's preprocessing: lowercase + whitespace tokens."""
    return " ".join(sentence.lower().split())


def SARIsent(ssent, csent, rsents):
    """Per-sentence (keep, delete, add, final) on the 0-1 scale."""
    numref = len(rsents)
    s1, s2, s3, s4 = _grams_up_to_4(ssent.split(" "))
    c1, c2, c3, c4 = _grams_up_to_4(csent.split(" "))
    r1list, r2list, r3list, r4list = [], [], [], []
    for rsent in rsents:
        r1, r2, r3, r4 = _grams_up_to_4(rsent.split(" "))
        r1list.append(r1)
        r2list.append(r2)
        r3list.append(r3)
        r4list.append(r4)

    (keep1, del1, add1) = SARIngram(s1, c1, r1list, numref)
    (keep2, del2, add2) = SARIngram(s2, c2, r2list, numref)
    (keep3, del3, add3) = SARIngram(s3, c3, r3list, numref)
    (keep4, del4, add4) = SARIngram(s4, c4, r4list, numref)
    avgkeepscore = sum([keep1, keep2, keep3, keep4]) / 4
    avgdelscore = sum([del1, del2, del3, del4]) / 4
    avgaddscore = sum([add1, add2, add3, add4]) / 4
    finalscore = (avgkeepscore + avgdelscore + avgaddscore) / 3
    return avgkeepscore, avgdelscore, avgaddscore, finalscore


def sari_corpus(sources, predictions, references_list):
    """Corpus (keep, delete, add, final), macro-averaged and scaled to 0-100."""
    assert len(sources) == len(predictions) == len(references_list)
    keep = delete = add = 0.0
    for src, pred, refs in zip(sources, predictions, references_list):
        k, d, a, _ = SARIsent(
            normalize(src), normalize(pred), [normalize(r) for r in refs]
        )
        keep += k
        delete += d
        add += a
    n = len(sources)
    keep = 100 * keep / n
    delete = 100 * delete / n
    add = 100 * add / n
    return keep, delete, add, (keep + delete + add) / 3
