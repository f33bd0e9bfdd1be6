"""Pseudo-irreducibility and complete comaximal factorization in Z and in
maximal imaginary quadratic orders.

In a Dedekind domain two elements are comaximal exactly when their prime
supports are disjoint, so a complete comaximal factorization of b is a set
partition of the prime support of (b) (each prime carrying its full
exponent) whose block products are principal, with every block admitting no
further both-principal split.  Enumerating partitions therefore enumerates
every complete comaximal factorization, which is what makes the uniqueness
analysis exhaustive.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

from .core import xgcd
from .quadring import (
    QuadElem,
    QuadError,
    QuadOrder,
    bezout_pair,
    divides,
    factor_principal,
    ideal_is_principal,
    principal_ideal,
)
from .rings import IntegerRing, ZZ

DEFAULT_SUPPORT_CAP = 8


class SupportBoundExceeded(ValueError):
    pass


class ComaxInputError(ValueError):
    pass


def support_cap_from_env(default: int = DEFAULT_SUPPORT_CAP) -> int:
    raw = os.environ.get("PRINC_LAB_SUPPORT_CAP")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ComaxInputError(f"PRINC_LAB_SUPPORT_CAP={raw!r} is not an integer") from exc


@dataclass
class SplitRecord:
    left: tuple[int, ...]
    right: tuple[int, ...]
    left_generator: Any
    right_generator: Any

    @property
    def comaximal_split(self) -> bool:
        return self.left_generator is not None and self.right_generator is not None


@dataclass
class IrreducibilityTranscript:
    element: Any
    support: list  # [(prime description, exponent)]
    splits: list[SplitRecord] = field(default_factory=list)
    pseudo_irreducible: bool = True
    witness_split: SplitRecord | None = None


@dataclass
class ComaxFactorization:
    ring: Any
    element: Any
    factors: list
    unit: Any
    pairwise: list  # (i, j, lam, mu) with lam*f_i + mu*f_j == 1
    transcripts: list[IrreducibilityTranscript]
    blocks: list  # index blocks into the support, parallel to factors
    support: list

    def verify(self) -> bool:
        ring = self.ring
        prod = ring.one
        for f in self.factors:
            prod = prod * f
        if prod * self.unit != self.element:
            return False
        if not ring.is_unit(self.unit):
            return False
        for i, j, lam, mu in self.pairwise:
            if lam * self.factors[i] + mu * self.factors[j] != ring.one:
                return False
        return all(t.pseudo_irreducible for t in self.transcripts)

    def factor_strs(self):
        return [str(f) for f in self.factors]


def _int_support(n: int):
    from sympy import factorint

    return [(p, e) for p, e in sorted(factorint(abs(n)).items())]


def _quad_support(b: QuadElem):
    fp = factor_principal(b)
    return sorted(fp, key=lambda pe: (pe[0].norm(), pe[0].key()))


def _support_of(b, ring):
    if isinstance(ring, IntegerRing):
        if b == 0 or b in (1, -1):
            raise ComaxInputError("need a nonzero nonunit of Z")
        return _int_support(b)
    if isinstance(ring, QuadOrder):
        if not b:
            raise ComaxInputError("need a nonzero element")
        if b.is_unit():
            raise ComaxInputError("need a nonunit")
        return _quad_support(b)
    raise ComaxInputError(f"comaximal factorization is not supported over {ring}")


def _block_generator(support, idxs, ring):
    """Generator of the product of the chosen prime powers, or None."""
    if isinstance(ring, IntegerRing):
        prod = 1
        for i in idxs:
            p, e = support[i]
            prod *= p**e
        return prod
    ideal = principal_ideal(QuadElem(1, 0, ring.d))
    for i in idxs:
        P, e = support[i]
        ideal = ideal.mul(P.pow(e))
    verdict = ideal_is_principal(ideal)
    return verdict.generator if verdict.principal else None


def _two_partitions(k: int):
    # each unordered split of range(k) into two nonempty parts, once
    for mask in range(1, 1 << (k - 1)):
        left = tuple(i for i in range(k) if mask >> i & 1)
        right = tuple(i for i in range(k) if not mask >> i & 1)
        yield left, right


def _irreducibility(element, support, idxs, ring) -> IrreducibilityTranscript:
    idxs = tuple(idxs)
    transcript = IrreducibilityTranscript(
        element, [(support[i][0], support[i][1]) for i in idxs]
    )
    for lpos, rpos in _two_partitions(len(idxs)):
        left = tuple(idxs[i] for i in lpos)
        right = tuple(idxs[i] for i in rpos)
        rec = SplitRecord(
            left,
            right,
            _block_generator(support, left, ring),
            _block_generator(support, right, ring),
        )
        transcript.splits.append(rec)
        if rec.comaximal_split:
            transcript.pseudo_irreducible = False
            transcript.witness_split = rec
            break
    return transcript


def is_pseudo_irreducible(b, ring) -> IrreducibilityTranscript:
    support = _support_of(b, ring)
    return _irreducibility(b, support, range(len(support)), ring)


def _bezout_for(f, g, ring):
    if isinstance(ring, IntegerRing):
        gg, s, t = xgcd(f, g)
        if gg != 1:
            raise QuadError("factors are not comaximal")
        return s, t
    cert = bezout_pair(f, g)
    if cert is None:
        raise QuadError("factors are not comaximal")
    return cert


def _factor_sort_key(f, ring):
    if isinstance(ring, IntegerRing):
        return (abs(f), -f)
    return (f.norm(), f.x, f.y)


def _build_factorization(b, support, blocks, generators, ring) -> ComaxFactorization:
    order = sorted(range(len(blocks)), key=lambda i: _factor_sort_key(generators[i], ring))
    blocks = [tuple(blocks[i]) for i in order]
    factors = [generators[i] for i in order]
    prod = ring.one
    for f in factors:
        prod = prod * f
    if isinstance(ring, IntegerRing):
        unit = b // prod
    else:
        unit = divides(prod, b)
    if unit is None or not ring.is_unit(unit) or prod * unit != b:
        raise QuadError("factorization does not re-multiply to the input")
    pairwise = []
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            lam, mu = _bezout_for(factors[i], factors[j], ring)
            pairwise.append((i, j, lam, mu))
    transcripts = [_irreducibility(factors[i], support, blocks[i], ring) for i in range(len(blocks))]
    fact = ComaxFactorization(ring, b, factors, unit, pairwise, transcripts, blocks, support)
    if not fact.verify():
        raise QuadError("factorization certificates failed to verify")
    return fact


def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def enumerate_complete_factorizations(b, ring, support_cap: int | None = None) -> list[ComaxFactorization]:
    """Every complete comaximal factorization of b, one per valid partition
    of the prime support; length 1 means the factorization is unique."""
    cap = support_cap if support_cap is not None else support_cap_from_env()
    support = _support_of(b, ring)
    if len(support) > cap:
        raise SupportBoundExceeded(
            f"support size {len(support)} exceeds the cap {cap}"
        )
    out = []
    for partition in _set_partitions(range(len(support))):
        generators = []
        ok = True
        for block in partition:
            g = _block_generator(support, tuple(block), ring)
            if g is None:
                ok = False
                break
            generators.append(g)
        if not ok:
            continue
        if any(
            not _irreducibility(generators[i], support, partition[i], ring).pseudo_irreducible
            for i in range(len(partition))
        ):
            continue
        out.append(_build_factorization(b, support, partition, generators, ring))
    out.sort(key=lambda f: (len(f.factors), [_factor_sort_key(x, ring) for x in f.factors]))
    return out


def comax_factor_int(n: int) -> ComaxFactorization:
    """The complete comaximal factorization of an integer |n| >= 2: its
    prime-power parts, with extended-Euclid comaximality certificates."""
    if n == 0 or n in (1, -1):
        raise ComaxInputError("need a nonzero nonunit of Z")
    support = _int_support(n)
    blocks = [(i,) for i in range(len(support))]
    generators = [p**e for p, e in support]
    return _build_factorization(n, support, blocks, generators, ZZ)


def _quad_elements_of_norm(n: int, d: int):
    """Canonical associate representatives with norm n, in (x, y) lex order."""
    from math import isqrt

    out = []
    ad = -d
    y = 1
    while ad * y * y <= n:
        rem = n - ad * y * y
        x = isqrt(rem)
        if x * x == rem:
            out.append((x, y))
            if x:
                out.append((-x, y))
        y += 1
    x = isqrt(n)
    if x * x == n:
        out.append((x, 0))
    out.sort()
    return [QuadElem(x, y, d) for x, y in out]


def find_nonunique_witness(ring, norm_bound: int, support_cap: int | None = None):
    """Smallest-norm element (scan order: norm, then lex (x, y)) with at
    least two complete comaximal factorizations, or None within the bound."""
    if isinstance(ring, IntegerRing):
        for n in range(2, norm_bound + 1):
            facts = enumerate_complete_factorizations(n, ring, support_cap)
            if len(facts) > 1:
                return n, facts
        return None
    if not isinstance(ring, QuadOrder):
        raise ComaxInputError(f"witness hunt is not supported over {ring}")
    for n in range(2, norm_bound + 1):
        for b in _quad_elements_of_norm(n, ring.d):
            if b.is_unit():
                continue
            facts = enumerate_complete_factorizations(b, ring, support_cap)
            if len(facts) > 1:
                return b, facts
    return None
