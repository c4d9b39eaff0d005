"""Words built by concatenating earlier words: counts, k-gram statistics and permuted variants.

Lengths, letter counts and k-gram counts obey the same additive recurrence
as the words themselves, so nothing below ever needs a giant string.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice, permutations
from typing import Iterable, Sequence

import mpmath
from sympy import primerange

from ._precision import DEFAULT_DPS
from .polyalgebra.roots import real_roots
from .rulecore import RecurrenceRule, characteristic_polynomial

MATERIALIZE_CAP = 10**6
ALGORITHM_A_CAP = 8


class MaterializationCapError(ValueError):
    pass


@dataclass(frozen=True)
class _Summary:
    """Length, letter counts, k-gram counts and the (k-1)-letter prefix and suffix of one word."""

    length: int
    letters: Counter
    grams: Counter
    prefix: str
    suffix: str


def _summarize(word: str, k: int) -> _Summary:
    grams = Counter(word[s:s + k] for s in range(len(word) - k + 1))
    h = k - 1
    return _Summary(len(word), Counter(word), grams, word[:h] if h else "", word[-h:] if h else "")


def _join(x: _Summary, y: _Summary, k: int) -> _Summary:
    h = k - 1
    grams = x.grams + y.grams
    if h:
        s = x.suffix + y.prefix
        cut = len(x.suffix)
        for start in range(max(0, cut - h), cut):
            g = s[start:start + k]
            if len(g) == k:
                grams[g] += 1
        prefix = (x.prefix + y.prefix)[:h] if x.length < h else x.prefix
        suffix = (x.suffix + y.suffix)[-h:] if y.length < h else y.suffix
    else:
        prefix = suffix = ""
    return _Summary(x.length + y.length, x.letters + y.letters, grams, prefix, suffix)


@dataclass
class WordSystem:
    """u_p = u_(p - order[0]) # u_(p - order[1]) # ... for p beyond the initial words.

    ``order`` lists the lags in concatenation order. By default it is the lag
    set in descending order, which turns A, AB, CA with lags {2, 3} into
    AAB, ABCA, CAAAB, ...
    """

    init_words: tuple[str, ...]
    lags: tuple[int, ...]
    order: tuple[int, ...] | None = None
    alphabet: tuple[str, ...] | None = None
    cap: int = MATERIALIZE_CAP
    _words: list = field(default_factory=list, repr=False)
    _lengths: list = field(default_factory=list, repr=False)
    _letters: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.init_words = tuple(self.init_words)
        lags = tuple(sorted(set(int(i) for i in self.lags)))
        if not lags or lags[0] < 1:
            raise ValueError("lags must be positive integers")
        if len(self.init_words) != lags[-1]:
            raise ValueError(f"lag set {lags} needs {lags[-1]} initial words")
        if any(not w for w in self.init_words):
            raise ValueError("initial words must be non-empty")
        self.lags = lags
        order = tuple(sorted(lags, reverse=True)) if self.order is None else tuple(int(i) for i in self.order)
        if sorted(order) != list(lags):
            raise ValueError("order must be a permutation of the lag set")
        self.order = order
        letters = sorted(set("".join(self.init_words)))
        self.alphabet = tuple(letters) if self.alphabet is None else tuple(self.alphabet)
        if not set(letters) <= set(self.alphabet):
            raise ValueError("initial words use letters outside the alphabet")
        self._words = list(self.init_words)
        self._lengths = [len(w) for w in self.init_words]
        self._letters = [Counter(w) for w in self.init_words]

    @property
    def n(self) -> int:
        return self.lags[-1]

    def __len__(self) -> int:
        return len(self._lengths)

    def next_word(self, materialize: bool = True) -> dict:
        """Append u_p and return its metadata; the word itself is kept while its length is within the cap."""
        p = len(self._lengths) + 1
        parts = [p - i for i in self.order]
        length = sum(self._lengths[q - 1] for q in parts)
        letters = Counter()
        for q in parts:
            letters.update(self._letters[q - 1])
        word = None
        if materialize and length <= self.cap and all(self._words[q - 1] is not None for q in parts):
            word = "".join(self._words[q - 1] for q in parts)
        self._lengths.append(length)
        self._letters.append(letters)
        self._words.append(word)
        return {"p": p, "length": length, "letters": {c: letters[c] for c in self.alphabet}, "word": word}

    def extend(self, p_max: int, materialize: bool = True) -> None:
        while len(self._lengths) < p_max:
            self.next_word(materialize)

    def length(self, p: int) -> int:
        self.extend(p)
        return self._lengths[p - 1]

    def letter_counts(self, p: int) -> dict[str, int]:
        self.extend(p)
        return {c: self._letters[p - 1][c] for c in self.alphabet}

    def word(self, p: int) -> str:
        self.extend(p)
        w = self._words[p - 1]
        if w is None:
            raise MaterializationCapError(f"u_{p} has length {self._lengths[p - 1]} > cap {self.cap}")
        return w

    def word_or_none(self, p: int) -> str | None:
        self.extend(p)
        return self._words[p - 1]

    def words(self, count: int) -> list[str]:
        return [self.word(p) for p in range(1, count + 1)]

    def length_rule(self) -> RecurrenceRule:
        return RecurrenceRule.from_lags(self.lags)

    def to_json(self) -> str:
        return json.dumps({"alphabet": list(self.alphabet), "init_words": list(self.init_words),
                           "lags": list(self.lags), "order": list(self.order)})

    @classmethod
    def from_config(cls, cfg: dict | str) -> "WordSystem":
        """Build from {alphabet?, init_words, lags, order?, permuted_middle?}."""
        if isinstance(cfg, str):
            cfg = json.loads(cfg)
        if cfg.get("permuted_middle"):
            raise ValueError("permuted_middle systems are built with apply_algorithm_A_system")
        return cls(tuple(cfg["init_words"]), tuple(cfg["lags"]), cfg.get("order"), cfg.get("alphabet"))


def permuted_system(init_words: Sequence[str], formula: Sequence[int]) -> WordSystem:
    """``formula`` lists lags in concatenation order, e.g. (2, 3, 1) for W_(n+3) = W_(n+1) # W_n # W_(n+2)."""
    return WordSystem(tuple(init_words), tuple(formula), tuple(formula))


# --- frequencies --------------------------------------------------------------------------------


def _aitken(x0, x1, x2):
    d = x2 - 2 * x1 + x0
    return x2 if d == 0 else x2 - (x2 - x1) ** 2 / d


@dataclass
class LetterLimits:
    p_max: int
    frequencies: dict[str, Fraction]  # at p_max, exact
    differences: dict[str, float]  # |f(p_max) - f(p_max - 1)|
    limits: dict[str, mpmath.mpf]  # Aitken estimate from the last three values
    length_ratio: mpmath.mpf
    dominant_root: mpmath.mpf

    def to_dict(self, digits: int = 15) -> dict:
        return {
            "p_max": self.p_max,
            "frequencies": {c: str(f) for c, f in self.frequencies.items()},
            "differences": self.differences,
            "limits": {c: mpmath.nstr(v, digits) for c, v in self.limits.items()},
            "length_ratio": mpmath.nstr(self.length_ratio, digits),
            "dominant_root": mpmath.nstr(self.dominant_root, digits),
        }


def lag_set_root(lags: Iterable[int], dps: int = DEFAULT_DPS):
    """Largest real root of x^n - sum_j x^(n - i(j))."""
    return max(real_roots(characteristic_polynomial(RecurrenceRule.from_lags(lags)), dps=dps))


def letter_frequency_limits(system: WordSystem, p_max: int, dps: int = DEFAULT_DPS) -> LetterLimits:
    if p_max < system.n + 5:
        raise ValueError("p_max must be >= n + 5")
    system.extend(p_max, materialize=False)
    freq = {}
    diffs = {}
    limits = {}
    with mpmath.workdps(dps):
        for c in system.alphabet:
            f = [Fraction(system._letters[p - 1][c], system._lengths[p - 1]) for p in (p_max - 2, p_max - 1, p_max)]
            freq[c] = f[-1]
            diffs[c] = float(abs(f[2] - f[1]))
            mp = [mpmath.mpf(x.numerator) / x.denominator for x in f]
            limits[c] = _aitken(*mp)
        ratio = mpmath.mpf(system._lengths[p_max - 1]) / system._lengths[p_max - 2]
        root = lag_set_root(system.lags, dps)
    return LetterLimits(p_max, freq, diffs, limits, ratio, root)


@dataclass
class FrequencyTable:
    k: int
    counts: dict[int, Counter]  # p -> gram counts of u_p
    lengths: dict[int, int]

    def frequencies(self, p: int) -> dict[str, Fraction]:
        total = self.lengths[p] - self.k + 1
        if total <= 0:
            return {}
        return {g: Fraction(c, total) for g, c in sorted(self.counts[p].items())}

    def to_csv(self, ps: Iterable[int] | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "gram", "count", "frequency"])
        for p in (sorted(self.counts) if ps is None else ps):
            for g, f in self.frequencies(p).items():
                w.writerow([p, g, self.counts[p][g], str(f)])
        return buf.getvalue()


def kgram_frequencies(system: WordSystem, k: int, p_max: int) -> FrequencyTable:
    """k-gram counts of u_1..u_p_max from the concatenation recurrence and (k-1)-letter borders."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    summ = [_summarize(w, k) for w in system.init_words]
    while len(summ) < p_max:
        p = len(summ) + 1
        acc = None
        for i in system.order:
            part = summ[p - i - 1]
            acc = part if acc is None else _join(acc, part, k)
        summ.append(acc)
    return FrequencyTable(k, {p: summ[p - 1].grams for p in range(1, p_max + 1)},
                          {p: summ[p - 1].length for p in range(1, p_max + 1)})


def direct_kgram_counts(word: str, k: int) -> Counter:
    return Counter(word[s:s + k] for s in range(len(word) - k + 1))


# --- algorithm A ------------------------------------------------------------------------------------


def algorithm_A_permutation(n: int) -> tuple[int, ...]:
    """m-th lexicographic permutation of 1..n, m being term (n-1)^(n-1) of the periodic sequence of primes < n!.

    Both indices are 1-based. For n <= 2 there is no usable prime and the identity is returned with a warning.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > ALGORITHM_A_CAP:
        raise ValueError(f"n={n} exceeds the cap {ALGORITHM_A_CAP}")
    if n <= 2:
        warnings.warn(f"algorithm A is undefined for n={n}; returning the identity", stacklevel=2)
        return tuple(range(1, n + 1))
    fact = 1
    for q in range(2, n + 1):
        fact *= q
    primes = list(primerange(2, fact))
    m = primes[((n - 1) ** (n - 1) - 1) % len(primes)]
    return next(islice(permutations(range(1, n + 1)), m - 1, None))


def apply_permutation(word: str, perm: Sequence[int]) -> str:
    """Letter i of the result is letter perm[i] of ``word``."""
    return "".join(word[q - 1] for q in perm)


@dataclass
class AlgorithmARun:
    words: list[str]
    stopped_at: int | None  # index p whose middle word exceeded the cap, or None

    def to_dict(self) -> dict:
        return {"words": self.words, "stopped_at": self.stopped_at}


def apply_algorithm_A_system(init_words: Sequence[str], count: int, formula: Sequence[int] = (2, 1, 3),
                             permuted_slot: int = 1) -> AlgorithmARun:
    """Concatenate per ``formula`` with the part at ``permuted_slot`` (a lag) reordered by algorithm A.

    The default gives W_(n+3) = W_(n+1) # P_(A,|W_(n+2)|)(W_(n+2)) # W_n. Stops, keeping
    what was built, once the middle word is longer than the algorithm A cap.
    """
    formula = tuple(formula)
    if permuted_slot not in formula:
        raise ValueError("permuted_slot must be one of the lags")
    n = max(formula)
    if len(init_words) != n:
        raise ValueError(f"formula needs {n} initial words")
    words = list(init_words)
    while len(words) < count:
        p = len(words) + 1
        parts = []
        for i in formula:
            w = words[p - i - 1]
            if i == permuted_slot:
                if len(w) > ALGORITHM_A_CAP:
                    return AlgorithmARun(words, p)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    w = apply_permutation(w, algorithm_A_permutation(len(w)))
            parts.append(w)
        words.append("".join(parts))
    return AlgorithmARun(words, None)


# --- grammar condition ------------------------------------------------------------------------------

CONTEXT_FREE = "context-free-achievable"
POSSIBLY_NOT = "possibly-not-context-free"


def grammar_condition_classify(init_words: Sequence[str]) -> str:
    """Context-free achievable iff every initial word is a single letter and they are pairwise distinct."""
    words = list(init_words)
    if all(len(w) == 1 for w in words) and len(set(words)) == len(words):
        return CONTEXT_FREE
    return POSSIBLY_NOT
