"""Integer partitions in multiplicity form and the unitriangular matrices
built from them.

A partition q of T is stored as the vector sigma with sigma[j-1] = number of
parts equal to j, so sum_j j*sigma(j) = T.  The matrix M has entries

    M[k, l] = sum over q of prod_j kappa_j^{sigma_q(j)} / sigma_q(j)!

for l > k with the sum over partitions q of l - k, ones on the diagonal and
zeros below; it depends on l - k only.  Its inverse is the same sum with
kappa negated, and d/dz M replaces one factor kappa_r by kappa_r'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class Partition:
    """Multiplicity vector sigma(1..T) of a partition of T."""

    sigma: tuple

    @property
    def total(self):
        return sum((j + 1) * s for j, s in enumerate(self.sigma))

    def parts(self):
        """The parts in descending order, e.g. (2, 1, 1) for sigma = (2, 1)."""
        out = []
        for j in range(len(self.sigma), 0, -1):
            out.extend([j] * self.sigma[j - 1])
        return tuple(out)


@lru_cache(maxsize=None)
def partitions_of(T):
    """All partitions of T as Partition values; T = 0 gives the empty partition."""
    if T < 0:
        raise ConfigError("cannot partition a negative integer")
    result = []

    def descend(remaining, max_part, sigma):
        if remaining == 0:
            result.append(Partition(tuple(sigma)))
            return
        for part in range(min(remaining, max_part), 0, -1):
            sigma[part - 1] += 1
            descend(remaining - part, part, sigma)
            sigma[part - 1] -= 1

    descend(T, T, [0] * T)
    return tuple(result)


def _partition_term(kappas, sigma):
    term = 1.0 + 0.0j
    for j, mult in enumerate(sigma, start=1):
        if mult:
            term *= kappas[j - 1] ** mult / math.factorial(mult)
    return term


def _offset_value(kappas, d):
    return sum(_partition_term(kappas, q.sigma) for q in partitions_of(d))


def _check_length(kappas, p, name):
    if len(kappas) < p - 1:
        raise ConfigError(f"need at least p-1={p - 1} values of {name}, got {len(kappas)}")


def m_matrix(kappas, p):
    """The p x p upper unitriangular Toeplitz matrix built from kappa_1..kappa_{p-1}."""
    _check_length(kappas, p, "kappa")
    out = np.eye(p, dtype=complex)
    for d in range(1, p):
        val = _offset_value(kappas, d)
        for k in range(p - d):
            out[k, k + d] = val
    return out


def m_inverse(kappas, p):
    """Inverse of m_matrix: the same partition sum with every kappa negated."""
    return m_matrix([-v for v in kappas[: p - 1]], p)


def m_derivative(kappas, kappa_primes, p):
    """Entrywise z-derivative of m_matrix given kappa and kappa' values.

    For each partition, each part size r with sigma(r) >= 1 contributes the
    term with one factor kappa_r replaced by kappa_r'.
    """
    _check_length(kappas, p, "kappa")
    _check_length(kappa_primes, p, "kappa'")
    out = np.zeros((p, p), dtype=complex)
    for d in range(1, p):
        val = 0.0 + 0.0j
        for q in partitions_of(d):
            for r, mult in enumerate(q.sigma, start=1):
                if mult == 0:
                    continue
                term = kappa_primes[r - 1]
                term *= kappas[r - 1] ** (mult - 1) / math.factorial(mult - 1)
                for j, oth in enumerate(q.sigma, start=1):
                    if j != r and oth:
                        term *= kappas[j - 1] ** oth / math.factorial(oth)
                val += term
        for k in range(p - d):
            out[k, k + d] = val
    return out
