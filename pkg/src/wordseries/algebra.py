"""Truncated coefficient algebra on words.

Words are tuples of letter ids ``0 .. alphabet_size-1``.  A :class:`CoeffMap`
stores one coefficient for *every* word of length at most ``order``, densely,
in length-then-lexicographic order.  The convolution product is the
deconcatenation product; characters (the group) and infinitesimal characters
(the Lie algebra) are cut out by the shuffle relations.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import coefficients as cf
from .errors import (AlphabetMismatchError, ModeMismatchError, NotInvertibleError,
                     PreconditionError, TruncationError)

Word = tuple
EMPTY: Word = ()

MAX_WORDS = 10**6
FLOAT_TOL = 1e-12


def word_count(alphabet_size: int, order: int) -> int:
    if alphabet_size == 1:
        return order + 1
    return (alphabet_size ** (order + 1) - 1) // (alphabet_size - 1)


class WordTable:
    """Canonical enumeration of all words of length <= ``order``."""

    def __init__(self, alphabet_size: int, order: int):
        if alphabet_size < 1:
            raise ValueError("alphabet must have at least one letter")
        if order < 0:
            raise ValueError("order must be nonnegative")
        n = word_count(alphabet_size, order)
        if n > MAX_WORDS:
            raise TruncationError(
                f"{n} words for |A|={alphabet_size}, N={order} exceeds cap {MAX_WORDS}")
        self.alphabet_size = alphabet_size
        self.order = order
        self.words: list[Word] = []
        self.offsets: list[int] = []
        for length in range(order + 1):
            self.offsets.append(len(self.words))
            self.words.extend(product(range(alphabet_size), repeat=length))
        self.index = {w: i for i, w in enumerate(self.words)}
        self._splits: list | None = None

    def __len__(self):
        return len(self.words)

    def level(self, n: int) -> range:
        """Index range of the words of length ``n``."""
        start = self.offsets[n]
        stop = self.offsets[n + 1] if n < self.order else len(self.words)
        return range(start, stop)

    @property
    def splits(self) -> list[list[tuple[int, int]]]:
        """For word ``i``: index pairs (prefix, suffix) over all deconcatenations."""
        if self._splits is None:
            idx = self.index
            self._splits = [[(idx[w[:j]], idx[w[j:]]) for j in range(len(w) + 1)]
                            for w in self.words]
        return self._splits


@lru_cache(maxsize=64)
def word_table(alphabet_size: int, order: int) -> WordTable:
    return WordTable(alphabet_size, order)


def words_up_to(alphabet_size: int, order: int) -> list[Word]:
    return word_table(alphabet_size, order).words


class CoeffMap:
    """A family of coefficients indexed by all words of length <= ``order``.

    Instances are immutable; arithmetic returns new maps.  ``values`` follows
    the canonical word order of :class:`WordTable`.
    """

    __slots__ = ("alphabet_size", "order", "mode", "values")

    def __init__(self, alphabet_size: int, order: int, values: Sequence, mode: str | None = None):
        table = word_table(alphabet_size, order)
        if len(values) != len(table):
            raise ValueError(f"expected {len(table)} values, got {len(values)}")
        if mode is None:
            mode = cf.mode_of(values[0])
        if mode == cf.EXACT:
            for c in values:
                if not cf.is_exact(c):
                    raise ModeMismatchError(f"non-exact value {c!r} in exact CoeffMap")
            vals = tuple(values)
        elif mode == cf.FLOAT:
            vals = tuple(cf.to_complex(c) if cf.is_exact(c) else complex(c) for c in values)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        object.__setattr__(self, "alphabet_size", alphabet_size)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, key, value):
        raise AttributeError("CoeffMap is immutable")

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, alphabet_size: int, order: int, mode: str = cf.EXACT) -> "CoeffMap":
        z = cf.zero(mode)
        return cls(alphabet_size, order, [z] * word_count(alphabet_size, order), mode)

    @classmethod
    def unit(cls, alphabet_size: int, order: int, mode: str = cf.EXACT) -> "CoeffMap":
        vals = [cf.zero(mode)] * word_count(alphabet_size, order)
        vals[0] = cf.one(mode)
        return cls(alphabet_size, order, vals, mode)

    @classmethod
    def from_dict(cls, alphabet_size: int, order: int, entries: Mapping, mode: str = cf.EXACT):
        table = word_table(alphabet_size, order)
        vals = [cf.zero(mode)] * len(table)
        for w, c in entries.items():
            w = tuple(w)
            if w not in table.index:
                raise TruncationError(f"word {w} not representable at order {order}")
            vals[table.index[w]] = cf.coerce(c, mode)
        return cls(alphabet_size, order, vals, mode)

    @classmethod
    def from_function(cls, alphabet_size: int, order: int, fn: Callable[[Word], object],
                      mode: str = cf.EXACT):
        return cls(alphabet_size, order,
                   [cf.coerce(fn(w), mode) for w in words_up_to(alphabet_size, order)], mode)

    @classmethod
    def letters(cls, alphabet_size: int, order: int, mode: str = cf.EXACT, weights=None):
        """Element supported on one-letter words (all ones unless ``weights`` given)."""
        if weights is None:
            weights = [1] * alphabet_size
        return cls.from_dict(alphabet_size, order,
                             {(a,): weights[a] for a in range(alphabet_size)}, mode)

    # access -------------------------------------------------------------
    @property
    def table(self) -> WordTable:
        return word_table(self.alphabet_size, self.order)

    @property
    def words(self) -> list[Word]:
        return self.table.words

    def __len__(self):
        return len(self.values)

    def __getitem__(self, word) -> object:
        word = tuple(word)
        try:
            return self.values[self.table.index[word]]
        except KeyError:
            if len(word) > self.order:
                raise TruncationError(f"word {word} longer than order {self.order}") from None
            raise KeyError(word) from None

    def items(self) -> Iterator[tuple[Word, object]]:
        return zip(self.words, self.values)

    def support(self) -> list[Word]:
        return [w for w, c in self.items() if not cf.is_zero(c)]

    def to_dict(self, nonzero_only: bool = True) -> dict:
        return {w: c for w, c in self.items() if not (nonzero_only and cf.is_zero(c))}

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "CoeffMap"):
        if not isinstance(other, CoeffMap):
            raise TypeError(f"expected CoeffMap, got {type(other).__name__}")
        if other.alphabet_size != self.alphabet_size:
            raise AlphabetMismatchError(
                f"alphabet sizes differ: {self.alphabet_size} vs {other.alphabet_size}")
        if other.mode != self.mode:
            raise ModeMismatchError(f"mixing {self.mode} and {other.mode} coefficients")
        return min(self.order, other.order)

    def __add__(self, other: "CoeffMap") -> "CoeffMap":
        n = self._check(other)
        m = word_count(self.alphabet_size, n)
        return CoeffMap(self.alphabet_size, n,
                        [a + b for a, b in zip(self.values[:m], other.values[:m])], self.mode)

    def __sub__(self, other: "CoeffMap") -> "CoeffMap":
        n = self._check(other)
        m = word_count(self.alphabet_size, n)
        return CoeffMap(self.alphabet_size, n,
                        [a - b for a, b in zip(self.values[:m], other.values[:m])], self.mode)

    def __neg__(self) -> "CoeffMap":
        return CoeffMap(self.alphabet_size, self.order, [-a for a in self.values], self.mode)

    def scale(self, c) -> "CoeffMap":
        c = cf.coerce(c, self.mode)
        return CoeffMap(self.alphabet_size, self.order, [c * a for a in self.values], self.mode)

    def scale_words(self, fn: Callable[[Word], object]) -> "CoeffMap":
        """Diagonal scaling ``w -> fn(w) * self[w]`` (``fn`` returns mode-compatible scalars)."""
        return CoeffMap(self.alphabet_size, self.order,
                        [fn(w) * c for w, c in self.items()], self.mode)

    def graded(self, epsilon) -> "CoeffMap":
        """Multiply each coefficient by ``epsilon**len(w)``."""
        e = cf.coerce(epsilon, self.mode)
        powers = [cf.one(self.mode)]
        for _ in range(self.order):
            powers.append(powers[-1] * e)
        return CoeffMap(self.alphabet_size, self.order,
                        [powers[len(w)] * c for w, c in self.items()], self.mode)

    def truncate(self, order: int) -> "CoeffMap":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        m = word_count(self.alphabet_size, order)
        return CoeffMap(self.alphabet_size, order, self.values[:m], self.mode)

    def to_float(self) -> "CoeffMap":
        if self.mode == cf.FLOAT:
            return self
        return CoeffMap(self.alphabet_size, self.order, self.values, cf.FLOAT)

    def is_zero(self) -> bool:
        return all(cf.is_zero(c) for c in self.values)

    def max_abs(self) -> float:
        return max((abs(cf.to_complex(c)) for c in self.values), default=0.0)

    def max_abs_diff(self, other: "CoeffMap") -> float:
        if other.alphabet_size != self.alphabet_size:
            raise AlphabetMismatchError("alphabet sizes differ")
        m = word_count(self.alphabet_size, min(self.order, other.order))
        return max((abs(cf.to_complex(a) - cf.to_complex(b))
                    for a, b in zip(self.values[:m], other.values[:m])), default=0.0)

    def allclose(self, other: "CoeffMap", tol: float = FLOAT_TOL) -> bool:
        return self.max_abs_diff(other) <= tol

    def __eq__(self, other):
        if not isinstance(other, CoeffMap):
            return NotImplemented
        return (self.alphabet_size == other.alphabet_size and self.order == other.order
                and self.mode == other.mode and self.values == other.values)

    __hash__ = None

    def __repr__(self):
        shown = ", ".join(f"{''.join(map(str, w)) or '∅'}: {cf.format_coeff(c)}"
                          for w, c in list(self.to_dict().items())[:8])
        more = "" if len(self.support()) <= 8 else ", ..."
        return f"CoeffMap(|A|={self.alphabet_size}, N={self.order}, {self.mode}, {{{shown}{more}}})"


# ---------------------------------------------------------------------------
# shuffles

@lru_cache(maxsize=None)
def _shuffle(w: Word, w2: Word) -> tuple:
    if not w:
        return (w2,)
    if not w2:
        return (w,)
    return (tuple((w[0],) + s for s in _shuffle(w[1:], w2))
            + tuple((w2[0],) + s for s in _shuffle(w, w2[1:])))


def shuffle(w: Sequence[int], w2: Sequence[int], max_order: int | None = None) -> list[Word]:
    """All riffle interleavings of ``w`` and ``w2`` (a multiset, as a list)."""
    w, w2 = tuple(w), tuple(w2)
    if max_order is not None and len(w) + len(w2) > max_order:
        raise TruncationError(
            f"shuffle of lengths {len(w)}+{len(w2)} exceeds order {max_order}")
    return list(_shuffle(w, w2))


def shuffle_relations(alphabet_size: int, order: int) -> Iterator[tuple[Word, Word, tuple]]:
    """Yield ``(w, w2, w ⧢ w2)`` for nonempty words with ``len(w)+len(w2) <= order``."""
    words = words_up_to(alphabet_size, order)
    for w in words[1:]:
        for w2 in words[1:]:
            if len(w) + len(w2) > order:
                break
            yield w, w2, _shuffle(w, w2)


def _close(lhs, rhs, scale, tol):
    if cf.is_exact(lhs):
        return lhs == rhs
    return abs(lhs - rhs) <= tol * max(1.0, scale)


def shuffle_defects(g: CoeffMap, infinitesimal: bool, tol: float = FLOAT_TOL) -> list:
    """Word pairs whose shuffle relation fails for ``g``."""
    idx = g.table.index
    vals = g.values
    bad = []
    for w, w2, sh in shuffle_relations(g.alphabet_size, g.order):
        terms = [vals[idx[s]] for s in sh]
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        lhs = cf.zero(g.mode) if infinitesimal else vals[idx[w]] * vals[idx[w2]]
        scale = sum(abs(cf.to_complex(t)) for t in terms) + abs(cf.to_complex(lhs))
        if not _close(lhs, total, scale, tol):
            bad.append((w, w2))
    return bad


def is_character(g: CoeffMap, tol: float = FLOAT_TOL) -> bool:
    """True if ``g`` satisfies γ_∅ = 1 and all shuffle relations through its order."""
    e = g.values[0]
    if cf.is_exact(e):
        if e != cf.one(cf.EXACT):
            return False
    elif abs(e - 1) > tol:
        return False
    return not shuffle_defects(g, False, tol)


def is_infinitesimal(b: CoeffMap, tol: float = FLOAT_TOL) -> bool:
    """True if ``b`` satisfies β_∅ = 0 and Σ β over every nontrivial shuffle is 0."""
    e = b.values[0]
    if (cf.is_exact(e) and not cf.is_zero(e)) or (not cf.is_exact(e) and abs(e) > tol):
        return False
    return not shuffle_defects(b, True, tol)


# ---------------------------------------------------------------------------
# convolution and friends

def convolve(d: CoeffMap, d2: CoeffMap) -> CoeffMap:
    """Deconcatenation product ``d ⋆ d2``."""
    n = d._check(d2)
    table = word_table(d.alphabet_size, n)
    a, b = d.values, d2.values
    out = []
    zero = cf.zero(d.mode)
    for sp in table.splits:
        acc = zero
        for i, j in sp:
            x = a[i]
            if x:
                y = b[j]
                if y:
                    acc = acc + x * y
        out.append(acc)
    return CoeffMap(d.alphabet_size, n, out, d.mode)


def convolve_many(*maps: CoeffMap) -> CoeffMap:
    out = maps[0]
    for m in maps[1:]:
        out = convolve(out, m)
    return out


def inverse(g: CoeffMap) -> CoeffMap:
    """Convolution inverse, solved word by word in order of increasing length."""
    g0 = g.values[0]
    if cf.is_zero(g0):
        raise NotInvertibleError("coefficient of the empty word is zero")
    table = g.table
    vals = g.values
    inv0 = cf.one(g.mode) / g0
    h = [cf.zero(g.mode)] * len(table)
    h[0] = inv0
    for i in range(1, len(table)):
        acc = cf.zero(g.mode)
        for p, s in table.splits[i][1:]:
            x = vals[p]
            if x and h[s]:
                acc = acc + x * h[s]
        h[i] = -acc * inv0
    return CoeffMap(g.alphabet_size, g.order, h, g.mode)


def _check_empty(c, expected: int, what: str):
    if cf.is_exact(c):
        ok = c == cf.coerce(expected, cf.EXACT)
    else:
        ok = abs(c - expected) <= FLOAT_TOL
    if not ok:
        raise PreconditionError(f"{what}: coefficient of the empty word must be {expected}")


def exp_star(b: CoeffMap) -> CoeffMap:
    """Truncated ⋆-exponential; requires ``b[∅] == 0``."""
    _check_empty(b.values[0], 0, "exp_star")
    result = CoeffMap.unit(b.alphabet_size, b.order, b.mode)
    term = result
    for k in range(1, b.order + 1):
        term = convolve(term, b).scale(Fraction(1, k) if b.mode == cf.EXACT else 1 / k)
        result = result + term
    return result


def log_star(g: CoeffMap) -> CoeffMap:
    """Truncated ⋆-logarithm; requires ``g[∅] == 1``."""
    _check_empty(g.values[0], 1, "log_star")
    x = g - CoeffMap.unit(g.alphabet_size, g.order, g.mode)
    result = CoeffMap.zeros(g.alphabet_size, g.order, g.mode)
    power = x
    for k in range(1, g.order + 1):
        coef = Fraction((-1) ** (k + 1), k)
        result = result + power.scale(coef if g.mode == cf.EXACT else float(coef))
        power = convolve(power, x)
    return result


def bracket(b: CoeffMap, b2: CoeffMap) -> CoeffMap:
    """Commutator ``b ⋆ b2 - b2 ⋆ b``."""
    return convolve(b, b2) - convolve(b2, b)


def dynkin_expansion(b: CoeffMap) -> list[tuple[Word, object]]:
    """Pairs ``(w, b_w / len(w))`` for all nonempty words.

    Re-summing ``Σ (b_w/n) [[..[f_l1, f_l2], ..], f_ln]`` gives the word series
    of an infinitesimal ``b`` written with iterated commutators.
    """
    out = []
    for w, c in list(b.items())[1:]:
        n = len(w)
        out.append((w, c * (cf.gauss(Fraction(1, n)) if b.mode == cf.EXACT else 1 / n)))
    return out


# ---------------------------------------------------------------------------
# random elements (for property suites)

def random_rational(rng: random.Random, size: int = 5, complex_: bool = True):
    re = Fraction(rng.randint(-size, size), rng.randint(1, size))
    im = Fraction(rng.randint(-size, size), rng.randint(1, size)) if complex_ else 0
    return cf.gauss(re, im)


@lru_cache(maxsize=16)
def left_normed_brackets(alphabet_size: int, order: int) -> tuple:
    """Coefficient maps of the brackets [[..[a1,a2],..],an] for every nonempty word.

    These span the truncated Lie algebra, so random combinations of them give
    random infinitesimal characters.
    """
    basis = {}
    for w in words_up_to(alphabet_size, order)[1:]:
        if len(w) == 1:
            basis[w] = CoeffMap.from_dict(alphabet_size, order, {w: 1})
        else:
            basis[w] = bracket(basis[w[:-1]], basis[(w[-1],)])
    return tuple(basis.items())


def random_infinitesimal(alphabet_size: int, order: int, rng: random.Random,
                         size: int = 3, complex_: bool = True, density: float = 1.0) -> CoeffMap:
    acc = CoeffMap.zeros(alphabet_size, order)
    for w, elt in left_normed_brackets(alphabet_size, order):
        if rng.random() < density:
            acc = acc + elt.scale(random_rational(rng, size, complex_))
    return acc


def random_character(alphabet_size: int, order: int, rng: random.Random, **kw) -> CoeffMap:
    return exp_star(random_infinitesimal(alphabet_size, order, rng, **kw))


def random_map(alphabet_size: int, order: int, rng: random.Random, size: int = 5,
               empty=None) -> CoeffMap:
    """Arbitrary (not necessarily shuffle-compatible) exact coefficients."""
    vals = [random_rational(rng, size) for _ in range(word_count(alphabet_size, order))]
    if empty is not None:
        vals[0] = cf.coerce(empty, cf.EXACT)
    return CoeffMap(alphabet_size, order, vals, cf.EXACT)
