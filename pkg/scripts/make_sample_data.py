#!/usr/bin/env python3
"""Regenerate the toy sample embedding + lexicon shipped under data/.

The vectors are synthetic: every word is a random base plus a planted
component along a hidden gender axis. Masculine/feminine counterparts
share a base and sit on opposite sides of the axis; attribute words get
axis components that correlate with nothing semantic, which is exactly
the kind of spurious association the audit should detect and remove.
"""
import json
import pathlib

import numpy as np

from genbias.embedding_store import EmbeddingSpace, save_vec

DIM = 10
OUT = pathlib.Path(__file__).resolve().parent.parent / "data"

TARGET_PAIRS = [
    ["raja", "rani"],
    ["purush", "mahila"],
    ["ladka", "ladki"],
    ["pita", "mata"],
]
NEUTRAL_OCCUPATIONS = ["daktar", "vakil", "shikshak", "vaigyanik", "lekhak", "sainik"]
ANGER = ["krodh", "gussa", "rosh", "aakrosh", "chidh"]
JOY = ["khushi", "anand", "harsh", "ullas", "umang"]
GENDERED_OCCUPATIONS = [
    ["abhineta", "abhinetri"],
    ["gayak", "gayika"],
    ["adhyapak", "adhyapika"],
    ["nayak", "nayika"],
]


def main():
    rng = np.random.default_rng(20220714)
    gender_axis = rng.normal(size=DIM)
    gender_axis /= np.linalg.norm(gender_axis)

    def planted(base, along, wobble=0.25):
        return base + along * gender_axis + wobble * rng.normal(size=DIM)

    entries = {}
    for masc, fem in TARGET_PAIRS:
        base = rng.normal(size=DIM)
        entries[masc] = planted(base, -0.8)
        entries[fem] = planted(base, +0.8)
    for i, word in enumerate(NEUTRAL_OCCUPATIONS):
        # alternating, unevenly sized spurious gender components
        along = (-1) ** i * (0.15 + 0.1 * i)
        entries[word] = planted(rng.normal(size=DIM), along)
    for i, word in enumerate(ANGER):
        entries[word] = planted(rng.normal(size=DIM), -0.5 + 0.45 * i)
    for i, word in enumerate(JOY):
        entries[word] = planted(rng.normal(size=DIM), 0.1 * (-1) ** i)
    for i, (masc, fem) in enumerate(GENDERED_OCCUPATIONS):
        base = rng.normal(size=DIM)
        # asymmetric offsets so the pair ranks drift apart at baseline
        entries[masc] = planted(base, -0.5 - 0.1 * i)
        entries[fem] = planted(base, +0.7 - 0.05 * i)

    OUT.mkdir(exist_ok=True)
    save_vec(EmbeddingSpace(dim=DIM, entries=entries), OUT / "sample_embeddings.vec")

    lexicon = {
        "language": "sample",
        "target_pairs": TARGET_PAIRS,
        "categories": [
            {"name": "neutral_occupations", "kind": "neutral", "words": NEUTRAL_OCCUPATIONS},
            {"name": "anger", "kind": "neutral", "words": ANGER},
            {"name": "joy", "kind": "neutral", "words": JOY},
            {"name": "gendered_occupations", "kind": "gendered_pairs", "words": GENDERED_OCCUPATIONS},
        ],
    }
    with open(OUT / "sample_lexicon.json", "w", encoding="utf-8") as fh:
        json.dump(lexicon, fh, ensure_ascii=False, indent=2)
        fh.write("\n")
    print(f"wrote {OUT / 'sample_embeddings.vec'} and {OUT / 'sample_lexicon.json'}")


if __name__ == "__main__":
    main()
