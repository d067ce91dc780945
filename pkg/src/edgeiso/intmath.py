"""Exact integer-root arithmetic.

Every closed formula in this package (minimum perimeters, Wulff side
lengths, carve depths) floors or ceils a real root of an integer.
Floating point misrounds those near perfect powers, so all roots here
are computed with pure integer arithmetic and are exact for arbitrary
magnitudes.
"""
from math import isqrt

__all__ = ["isqrt", "iroot", "icbrt", "ceil_2sqrt", "third_of_root12"]


def iroot(n: int, k: int) -> int:
    """Largest integer x with x**k <= n (n >= 0, k >= 1).

    Integer Newton iteration; converges from above and lands exactly on
    the floor of the real k-th root.
    """
    if k < 1:
        raise ValueError("root order must be >= 1")
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return isqrt(n)
    # Initial overestimate: 2**ceil(bitlen/k) >= n**(1/k).
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def icbrt(n: int) -> int:
    """Largest integer x with x**3 <= n."""
    return iroot(n, 3)


def ceil_2sqrt(d: int) -> int:
    """ceil(2*sqrt(d)) for d >= 0, exactly."""
    t = isqrt(4 * d)
    return t if t * t == 4 * d else t + 1


def third_of_root12(n: int) -> int:
    """floor(n**(1/12) / 3), defined by (3t)**12 <= n < (3(t+1))**12.

    Equal to iroot(n, 12) // 3 by the nested-floor identity
    floor(x/m) == floor(floor(x)/m); the defining predicate is enforced
    directly so the value is correct by construction.
    """
    t = iroot(n, 12) // 3
    while (3 * (t + 1)) ** 12 <= n:
        t += 1
    while t > 0 and (3 * t) ** 12 > n:
        t -= 1
    return t
