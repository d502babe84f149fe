"""Monomials are plain tuples of nonnegative integer exponents."""

from itertools import combinations_with_replacement


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if a | b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(n_vars, d):
    """All exponent tuples in n_vars variables of total degree exactly d."""
    if n_vars == 0:
        return [()] if d == 0 else []
    out = []
    for bars in combinations_with_replacement(range(n_vars), d):
        exps = [0] * n_vars
        for i in bars:
            exps[i] += 1
        out.append(tuple(exps))
    return out


def monomials_up_to_degree(n_vars, d):
    """All exponent tuples of total degree <= d, ascending by degree."""
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n_vars, k))
    return out


def minimalize_monomials(monos):
    """Minimal generators of the monomial ideal generated by monos (unique)."""
    monos = sorted(set(monos), key=lambda m: (mono_deg(m), m))
    out = []
    for m in monos:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out
