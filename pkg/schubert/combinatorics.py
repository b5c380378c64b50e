"""Type A coset combinatorics on I_{d,n}: Bruhat order and chart index sets."""
from dataclasses import dataclass
from itertools import combinations

from .exceptions import BruhatOrderError, SchubertError, ShapeMismatchError


@dataclass(frozen=True)
class GrassShape:
    d: int
    n: int

    def __post_init__(self):
        if not (1 <= self.d < self.n):
            raise SchubertError(f"Need 1 <= d < n, got d={self.d}, n={self.n}")

    @property
    def dimension(self):
        return self.d * (self.n - self.d)

    def __str__(self):
        return f"G({self.d},{self.n})"


@dataclass(frozen=True, order=True)
class CosetRep:
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, 'entries', entries)
        if any(a >= b for a, b in zip(entries, entries[1:])):
            raise SchubertError(f"Coset representative {entries} is not strictly increasing")

    @classmethod
    def parse(cls, text, shape=None):
        """Accept "256" or "2,5,10".

        Without commas each digit is an entry, unless ``shape`` has n > 9: then
        the text is a single entry and only d = 1 may omit the commas.
        """
        text = str(text).strip()
        if ',' in text:
            try:
                return cls(tuple(int(part) for part in text.split(',') if part.strip()))
            except ValueError:
                raise SchubertError(f"Cannot read a coset representative from '{text}'") from None
        if not text.isdigit():
            raise SchubertError(f"Cannot read a coset representative from '{text}'")
        if shape is not None and shape.n > 9:
            if shape.d > 1:
                raise SchubertError(f"'{text}' is ambiguous for n = {shape.n}; separate the entries with commas")
            return cls((int(text),))
        return cls(tuple(int(ch) for ch in text))

    def check(self, shape):
        if len(self.entries) != shape.d:
            raise ShapeMismatchError(f"{self} has {len(self.entries)} entries, {shape} needs {shape.d}")
        if self.entries[0] < 1 or self.entries[-1] > shape.n:
            raise ShapeMismatchError(f"{self} has values outside [1, {shape.n}]")
        return self

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, value):
        return value in self.entries

    def serialize(self, n):
        if n > 9:
            return ','.join(str(e) for e in self.entries)
        return ''.join(str(e) for e in self.entries)

    def __str__(self):
        if any(e > 9 for e in self.entries):
            return ','.join(str(e) for e in self.entries)
        return ''.join(str(e) for e in self.entries)


@dataclass(frozen=True, order=True)
class RootIndex:
    """Coordinate label (q, p): row q outside the pivots, pivot p."""
    q: int
    p: int

    @property
    def positive(self):
        return self.p < self.q

    @classmethod
    def parse(cls, text):
        try:
            q, p = str(text).split('.')
            return cls(int(q), int(p))
        except ValueError:
            raise SchubertError(f"Cannot read a root index from '{text}'") from None

    def __str__(self):
        return f"{self.q}.{self.p}"


def bruhat_leq(a, b):
    """Componentwise comparison of increasing tuples."""
    if len(a) != len(b):
        raise ShapeMismatchError(f"Cannot compare {a} and {b}: different lengths")
    return all(x <= y for x, y in zip(a, b))


def require_leq(a, b, left='v', right='w'):
    if not bruhat_leq(a, b):
        raise BruhatOrderError(f"Need {left} <= {right} in Bruhat order, got {left}={a}, {right}={b}")


def length(tau):
    """Inversion count of the Grassmannian permutation: dim X_tau."""
    return sum(t - k for k, t in enumerate(tau, start=1))


def coset_reps(shape):
    return [CosetRep(c) for c in combinations(range(1, shape.n + 1), shape.d)]


def minimal_rep(shape):
    return CosetRep(tuple(range(1, shape.d + 1)))


def maximal_rep(shape):
    return CosetRep(tuple(range(shape.n - shape.d + 1, shape.n + 1)))


def bruhat_interval(shape, v, w):
    return [tau for tau in coset_reps(shape) if bruhat_leq(v, tau) and bruhat_leq(tau, w)]


def richardson_triples(shape):
    """All (v, tau, w) with v <= tau <= w, in lexicographic order."""
    reps = coset_reps(shape)
    return [
        (v, tau, w)
        for w in reps
        for v in reps if bruhat_leq(v, w)
        for tau in reps if bruhat_leq(v, tau) and bruhat_leq(tau, w)
    ]


def chart_index_set(shape, tau):
    tau.check(shape)
    return sorted(
        RootIndex(q, p)
        for p in tau
        for q in range(1, shape.n + 1) if q not in tau
    )


def positive_root_indices(shape, tau):
    return [idx for idx in chart_index_set(shape, tau) if idx.positive]


def schubert_descents(shape, w):
    """Rows j carrying an essential rank condition for X_w: j in w, j + 1 not in w."""
    return [j for j in w if j < shape.n and j + 1 not in w]


def opposite_descents(shape, v):
    """Rows j carrying an essential rank condition for X^v: j in v, j - 1 not in v."""
    return [j for j in v if j > 1 and j - 1 not in v]
