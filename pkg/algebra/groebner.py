"""Buchberger's algorithm over the rationals.

Pairs are processed smallest-lcm first under the graded order, and skipped by
the coprime-leading-monomial and chain criteria.
"""
import heapq
import logging

from .polynomials import DEFAULT_ORDER, Polynomial, PolyIdeal

logger = logging.getLogger(__name__)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _quotient(b, a):
    return tuple(y - x for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def normal_form(poly, basis, order=DEFAULT_ORDER):
    """Fully reduce ``poly`` by ``basis``; zero iff membership when ``basis`` is a Gröbner basis."""
    leads = [(g.leading_term(order), g) for g in basis if not g.is_zero()]
    work = dict(poly.terms)
    remainder = {}
    while work:
        exps = max(work, key=order.key)
        coeff = work[exps]
        for (lm, lc), g in leads:
            if _divides(lm, exps):
                shift = _quotient(exps, lm)
                factor = coeff / lc
                for m, c in g.terms.items():
                    target = tuple(a + b for a, b in zip(m, shift))
                    value = work.get(target, 0) - factor * c
                    if value:
                        work[target] = value
                    else:
                        work.pop(target, None)
                break
        else:
            remainder[exps] = coeff
            del work[exps]
    return Polynomial(poly.ring, remainder)


def s_polynomial(f, g, order=DEFAULT_ORDER):
    (lf, cf), (lg, cg) = f.leading_term(order), g.leading_term(order)
    top = _lcm(lf, lg)
    return f.mul_term(_quotient(top, lf), 1 / cf) - g.mul_term(_quotient(top, lg), 1 / cg)


def _interreduce(basis, order):
    """Minimalize and tail-reduce a Gröbner basis into the reduced basis."""
    basis = sorted(basis, key=lambda g: order.key(g.leading_monomial(order)))
    minimal = []
    for g in basis:
        lm = g.leading_monomial(order)
        if not any(_divides(h.leading_monomial(order), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lt = g.leading_term(order)
        tail = Polynomial(g.ring, {m: c for m, c in g.terms.items() if m != lt[0]})
        tail = normal_form(tail, others, order)
        reduced.append((tail + Polynomial(g.ring, {lt[0]: lt[1]})).monic(order))
    return tuple(sorted(reduced, key=lambda g: order.key(g.leading_monomial(order))))


def groebner_basis(generators, order=DEFAULT_ORDER):
    """Return the reduced Gröbner basis (monic, ascending leading monomials)."""
    gens = [g.monic(order) for g in generators if not g.is_zero()]
    if not gens:
        return ()
    ring = gens[0].ring
    if any(g.is_constant() for g in gens):
        return (ring.one(),)

    basis = []
    leads = []
    pending = set()
    queue = []

    def add(poly):
        k = len(basis)
        basis.append(poly)
        leads.append(poly.leading_monomial(order))
        for i in range(k):
            top = _lcm(leads[i], leads[k])
            pending.add((i, k))
            heapq.heappush(queue, (order.key(top), i, k))

    def chain_skip(i, j):
        top = _lcm(leads[i], leads[j])
        for k in range(len(basis)):
            if k in (i, j) or not _divides(leads[k], top):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    for g in gens:
        r = normal_form(g, basis, order)
        if r.is_zero():
            continue
        if r.is_constant():
            return (ring.one(),)
        add(r.monic(order))

    reductions = 0
    while queue:
        _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        if _coprime(leads[i], leads[j]) or chain_skip(i, j):
            continue
        reductions += 1
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        if r.is_constant():
            return (ring.one(),)
        add(r.monic(order))

    result = _interreduce(basis, order)
    logger.debug(f"Groebner basis of {len(gens)} generators: {len(result)} elements, "
                 f"{reductions} S-polynomials reduced")
    return result


def ideal_basis(ideal, order=None):
    return groebner_basis(ideal.generators, order or ideal.order)


def is_groebner(basis, order=DEFAULT_ORDER):
    basis = [g for g in basis if not g.is_zero()]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero():
                return False
    return True


def is_reduced(basis, order=DEFAULT_ORDER):
    for i, g in enumerate(basis):
        if g.leading_coeff(order) != 1:
            return False
        others = [h.leading_monomial(order) for j, h in enumerate(basis) if j != i]
        if any(_divides(lm, m) for lm in others for m in g.terms):
            return False
    return True


def contains(ideal, poly):
    """Ideal membership by normal form."""
    return normal_form(poly, ideal_basis(ideal), ideal.order).is_zero()


def minimal_generators(ideal):
    """Drop generators that lie in the ideal of the remaining ones."""
    if ideal.is_unit_marker():
        return PolyIdeal.unit(ideal.ring, ideal.order)
    kept = list(ideal.canonical().generators)
    for g in sorted(kept, key=lambda p: (-p.degree(), str(p))):
        others = [h for h in kept if h is not g]
        if normal_form(g, groebner_basis(others, ideal.order), ideal.order).is_zero():
            kept = others
    return PolyIdeal(ideal.ring, tuple(kept), ideal.order).canonical()
