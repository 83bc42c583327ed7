#!/usr/bin/env python3
"""Brute-force recount of the fixture corpus statistics.

Shares no code with the crate: words come from whitespace splitting,
edge-punctuation stripping and clitic splitting written out here.

usage: corpus_stats.py CORPUS LEXICON
"""
import json
import re
import sys

EDGE = ".,!?;:\"'()"


def words(text):
    out = []
    for chunk in text.split():
        core = chunk.strip(EDGE).lower().replace("’", "'")
        m = re.fullmatch(r"(.+)(n't)", core)
        if m:
            out += [m.group(1), m.group(2)]
            continue
        m = re.fullmatch(r"(.+)('s|'re|'ve|'ll|'d|'m)", core)
        if m:
            out += [m.group(1), m.group(2)]
            continue
        if core:
            out.append(core)
    return [w for w in out if any(c.isalnum() for c in w)]


def main(corpus_path, lexicon_path):
    lex = {}
    for line in open(lexicon_path, encoding="utf-8"):
        if line.strip() and not line.startswith("#"):
            w, score = line.rstrip("\n").split("\t")
            lex[w] = float(score)

    docs = []
    for line in open(corpus_path, encoding="utf-8"):
        if line.strip() and not line.startswith("#"):
            _, text, target = line.rstrip("\n").split("\t")
            docs.append((text, target))

    total, vocab = 0, set()
    targeted, target_len, target_pol, rest_pol = 0, 0, 0.0, 0.0
    for text, target in docs:
        ws = words(text)
        total += len(ws)
        vocab.update(ws)
        rest = list(ws)
        if target != "OUTSIDE":
            gold = [g.lower() for g in target.split("|")]
            targeted += 1
            target_len += len(gold)
            target_pol += sum(abs(lex.get(g, 0.0)) for g in gold)
            for g in gold:
                rest.remove(g)
        rest_pol += sum(abs(lex.get(w, 0.0)) for w in rest)

    print(json.dumps({
        "count": len(docs),
        "avg_words": total / len(docs),
        "vocabulary": len(vocab),
        "total_words": total,
        "avg_target_length": target_len / targeted,
        "avg_target_polarity_strength": target_pol / targeted,
        "avg_rest_polarity_strength": rest_pol / len(docs),
    }, indent=1))


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
