"""Words built by concatenating earlier words, their letter frequencies and k-gram counts."""

import mpmath

from recurlab.words import (
    WordSystem,
    algorithm_A_permutation,
    apply_algorithm_A_system,
    grammar_condition_classify,
    kgram_frequencies,
    letter_frequency_limits,
)

s = WordSystem(("A", "AB", "CA"), (3, 2))
print("first words:", s.words(10))

lim = letter_frequency_limits(s, 80)
print("letter limits:", {c: mpmath.nstr(v, 12) for c, v in lim.limits.items()})
print("length ratio:", mpmath.nstr(lim.length_ratio, 15))

t = kgram_frequencies(s, 2, 40)
print("bigram counts at p=40:", dict(sorted(t.counts[40].items())))

for n in range(3, 7):
    print(f"algorithm A permutation for n={n}:", algorithm_A_permutation(n))

run = apply_algorithm_A_system("ABC", 8)
print("algorithm A system:", run.words, "stopped at", run.stopped_at)
print("grammar condition for A, AB, CA:", grammar_condition_classify(["A", "AB", "CA"]))
