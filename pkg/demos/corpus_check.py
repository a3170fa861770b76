"""Test the Jordan criterion for doubles across the randomized bracket corpus.

For every sample J(Gamma, br) two independent answers are computed: the
superidentities evaluated on J, and the conjunction "Gamma supercommutative and
br satisfies the general Jordan bracket identities". They must coincide.

    python3 demos/corpus_check.py [seed]
"""

import sys
import time
from collections import Counter

from superkantor import double_jordan_verdict
from superkantor.corpus import build_corpus

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
corpus = build_corpus(seed=seed)
print(f"{len(corpus)} samples, seed {seed}")

start = time.perf_counter()
tally = Counter()
for s in corpus:
    v = double_jordan_verdict(s.gamma, s.bracket)
    tally[s.gamma.name, s.family, v.lhs] += 1
    if not v.agree:
        print("DISAGREE", s.label, v)
elapsed = time.perf_counter() - start

print(f"{'algebra':<16}{'family':<16}{'Jordan':>8}{'not':>6}")
for gamma, family in sorted({k[:2] for k in tally}):
    print(f"{gamma:<16}{family:<16}{tally[gamma, family, True]:>8}{tally[gamma, family, False]:>6}")
print(f"done in {elapsed:.1f}s")
