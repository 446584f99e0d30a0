"""Truncated power series as plain coefficient lists over a field."""
from __future__ import annotations


def trim(a, n):
    return a[:n]


def add(a, b, zero):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]


def sub(a, b, zero):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero) for i in range(n)]


def scale(a, c):
    return [x * c for x in a]


def mul(a, b, n, zero):
    """a * b mod T^n."""
    out = [zero] * min(n, max(len(a) + len(b) - 1, 0))
    for i, x in enumerate(a):
        if i >= n:
            break
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def inverse(a, n, one, zero):
    """1/a mod T^n by Newton iteration; a[0] must be nonzero."""
    out = [one / a[0]]
    k = 1
    while k < n:
        k = min(2 * k, n)
        # out <- out * (2 - a*out)
        e = mul(a[:k], out, k, zero)
        e = [-x for x in e]
        e[0] = e[0] + 2 * one
        out = mul(out, e, k, zero)
    return out[:n]


def order(a):
    """Index of the first nonzero coefficient, or None."""
    for i, x in enumerate(a):
        if x:
            return i
    return None


def compose_monomial(a, c, q, n, zero):
    """a(c T^q) mod T^n."""
    out = [zero] * n
    power = c ** 0
    for i, x in enumerate(a):
        if i * q >= n:
            break
        if x:
            out[i * q] = x * power
        power = power * c
    return out


def powers(a, k, n, one, zero):
    """[a^0, a^1, ..., a^k] mod T^n."""
    out = [[one]]
    for _ in range(k):
        out.append(mul(out[-1], a, n, zero))
    return out
