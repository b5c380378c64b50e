"""Hilbert series of monomial ideals by pivot splitting.

For a monomial ideal I and a variable x,

    N(I) = N(I + (x)) + t * N(I : x)

where N is the numerator of the Hilbert series over (1 - t)^n. Minimal
generating sets are memoized in the ``hilbert`` cache.
"""
from dataclasses import dataclass
import hashlib
import logging

import numpy as np
from django.core.cache import caches

from .groebner import groebner_basis
from .polynomials import DEFAULT_ORDER

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple
    dimension: int
    degree: int
    nvars: int

    def series_value(self, degree):
        """Hilbert function value h(degree) of the graded quotient ring."""
        # coefficient of t^degree in numerator / (1 - t)^dimension
        total = 0
        for k, c in enumerate(self.numerator):
            if k > degree:
                break
            total += c * _binomial(degree - k + self.dimension - 1, self.dimension - 1)
        return total


def _binomial(a, b):
    if b < 0:
        return 1 if a == -1 else 0
    if a < b or a < 0:
        return 0
    result = 1
    for i in range(b):
        result = result * (a - i) // (i + 1)
    return result


def _poly_add(p, q):
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def minimalize(monomials):
    """Keep the minimal generators among the rows of ``monomials``."""
    kept = []
    for m in sorted(monomials.tolist(), key=lambda row: (sum(row), row)):
        row = np.array(m)
        if not any(np.all(g <= row) for g in kept):
            kept.append(row)
    if not kept:
        return np.zeros((0, monomials.shape[1]), dtype=np.int64)
    return np.array(kept, dtype=np.int64)


def _cache_key(gens):
    return 'hilbert:%d:%s' % (gens.shape[1], hashlib.sha1(gens.tobytes()).hexdigest())


def hilbert_numerator(gens):
    """Numerator N(t) of the Hilbert series of S/I, I given by minimal generators."""
    if gens.shape[0] == 0:
        return [1]
    cache = caches['hilbert']
    key = _cache_key(gens)
    cached = cache.get(key)
    if cached is not None:
        return list(cached)

    support = np.count_nonzero(gens, axis=0)
    if np.all(support <= 1):
        # pairwise coprime generators
        result = [1]
        for row in gens:
            deg = int(row.sum())
            if deg == 0:
                result = []
                break
            result = _poly_mul(result, [1] + [0] * (deg - 1) + [-1])
    else:
        pivot = int(np.argmax(support))
        with_pivot = gens[gens[:, pivot] == 0]
        # I + (x): the pivot is coprime to the surviving generators
        left = _poly_mul([1, -1], hilbert_numerator(with_pivot))
        colon = gens.copy()
        colon[:, pivot] = np.maximum(colon[:, pivot] - 1, 0)
        right = [0] + hilbert_numerator(minimalize(colon))
        result = _poly_add(left, right)

    cache.set(key, tuple(result))
    return result


def hilbert_series(leading_monomials, nvars):
    """Hilbert data of S/I for a monomial ideal I on ``nvars`` variables."""
    rows = [tuple(m) for m in leading_monomials]
    if rows:
        gens = minimalize(np.array(rows, dtype=np.int64).reshape(len(rows), nvars))
    else:
        gens = np.zeros((0, nvars), dtype=np.int64)
    numerator = hilbert_numerator(gens)
    if not numerator:
        # the unit ideal
        return HilbertData(numerator=(), dimension=-1, degree=0, nvars=nvars)
    dimension = nvars
    while dimension > 0 and sum(numerator) == 0:
        quotient = []
        carry = 0
        for c in numerator[:-1]:
            carry += c
            quotient.append(carry)
        numerator = _trim(quotient)
        dimension -= 1
    return HilbertData(
        numerator=tuple(numerator),
        dimension=dimension,
        degree=sum(numerator),
        nvars=nvars,
    )


def leading_monomials(basis, order=DEFAULT_ORDER):
    return [g.leading_monomial(order) for g in basis]


def ideal_hilbert_data(ideal):
    """Hilbert data of k[x]/LT(I) under the ideal's graded order."""
    basis = groebner_basis(ideal.generators, ideal.order)
    return hilbert_series(leading_monomials(basis, ideal.order), ideal.ring.ngens)
