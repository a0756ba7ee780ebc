"""Regenerates the mini fixture embedding (d = 10).

Dimension 0 carries warmth, dimension 1 competence, dimension 2 a shared
"trait adjective" component; the rest is small deterministic noise.
"""
import numpy as np

rng = np.random.default_rng(20211)
D = 10

# word: (warmth, competence, trait, extra-dim, extra-value)
WORDS = {
    # seeds
    "friendly": (0.9, 0.1, 0.5), "warm": (0.9, 0.0, 0.5), "trustworthy": (0.8, 0.2, 0.5),
    "cold": (-0.9, 0.0, 0.5), "dishonest": (-0.8, -0.1, 0.5), "selfish": (-0.85, 0.1, 0.5),
    "smart": (0.1, 0.9, 0.5), "able": (0.0, 0.85, 0.5), "confident": (0.1, 0.8, 0.5),
    "stupid": (-0.1, -0.9, 0.5), "ignorant": (-0.1, -0.8, 0.5), "fearful": (0.0, -0.8, 0.5),
    # extended lexicon
    "amusing": (0.7, -0.2, 0.4), "fun": (0.8, -0.3, 0.4), "modest": (0.6, 0.1, 0.4), "donor": (0.5, 0.2, 0.4),
    "detached": (-0.6, 0.2, 0.4), "grim": (-0.7, -0.1, 0.4), "surly": (-0.75, 0.1, 0.4), "cheat": (-0.7, 0.3, 0.4),
    "bravery": (0.2, 0.7, 0.4), "decisive": (-0.2, 0.75, 0.4), "analytic": (-0.1, 0.7, 0.4), "thorough": (0.1, 0.6, 0.4),
    "quitter": (0.1, -0.7, 0.4), "minion": (0.0, -0.6, 0.4), "forgetful": (0.2, -0.65, 0.4), "silly": (0.3, -0.7, 0.4),
    # stereotype / anti-stereotype vocabulary
    "kind": (0.8, 0.1, 0.8), "feeble": (0.2, -0.7, 0.8), "gentle": (0.6, -0.2, 0.8), "old": (0.1, -0.4, 0.8),
    "strong": (0.0, 0.7, 0.8), "young": (0.3, 0.3, 0.8), "mean": (-0.7, 0.1, 0.8), "energetic": (0.3, 0.4, 0.8),
    "intelligent": (0.05, 0.85, 0.8), "egotistical": (-0.7, 0.3, 0.8), "dumb": (-0.1, -0.8, 0.8),
    "altruistic": (0.8, 0.1, 0.8), "social": (0.6, 0.0, 0.8),
    "caring": (0.85, 0.0, 0.8), "childish": (0.3, -0.75, 0.8), "loving": (0.8, -0.1, 0.8),
    "uncaring": (-0.8, 0.0, 0.8), "mature": (0.2, 0.7, 0.8), "hateful": (-0.85, 0.0, 0.8),
    "poor": (-0.3, -0.6, 0.8), "uneducated": (-0.2, -0.8, 0.8), "rich": (-0.1, 0.6, 0.8),
    "educated": (0.1, 0.8, 0.8), "wealthy": (-0.05, 0.6, 0.8),
    "helpful": (0.7, 0.4, 0.8), "competent": (0.2, 0.8, 0.8), "rude": (-0.8, -0.1, 0.8),
    "lazy": (-0.2, -0.7, 0.8), "incompetent": (-0.1, -0.85, 0.8),
    "bossy": (-0.6, 0.4, 0.8), "ruthless": (-0.8, 0.4, 0.8), "weak": (0.1, -0.7, 0.8),
    "compassionate": (0.85, 0.1, 0.8), "merciful": (0.7, 0.0, 0.8), "polite": (0.7, 0.2, 0.8),
    "cruel": (-0.85, 0.1, 0.8), "unkind": (-0.75, 0.0, 0.8), "hardworking": (0.2, 0.7, 0.8),
    # off-cluster words
    "nerdy": (-0.05, 0.1, 0.0, 9, 1.0),
    "black": (0.0, 0.0, 0.3, 4, 0.9),
    "norwegian": (0.1, 0.1, 0.0, 5, 1.0),
}

rows = []
for word, spec in WORDS.items():
    v = np.zeros(D)
    v[0], v[1], v[2] = spec[:3]
    v[3:] = rng.normal(0.0, 0.03, D - 3)
    if len(spec) == 5:
        v[spec[3]] = spec[4]
    v /= np.linalg.norm(v)
    rows.append((word, v))

with open("embeddings.txt", "w") as f:
    f.write(f"{len(rows)} {D}\n")
    for word, v in rows:
        f.write(word + " " + " ".join(f"{x:.6f}" for x in v) + "\n")
