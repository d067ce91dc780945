import random

import pytest

from edgeiso.intmath import ceil_2sqrt, icbrt, iroot, third_of_root12


def test_iroot_small_and_boundaries():
    for k in (1, 2, 3, 5, 12):
        for base in (0, 1, 2, 3, 10, 12345):
            for off in (-1, 0, 1):
                v = base ** k + off
                if v < 0:
                    continue
                r = iroot(v, k)
                assert r ** k <= v < (r + 1) ** k, (v, k)


def test_iroot_random_large():
    rng = random.Random(0)
    for _ in range(300):
        v = rng.randrange(0, 1 << 120)
        k = rng.randrange(2, 13)
        r = iroot(v, k)
        assert r ** k <= v < (r + 1) ** k


def test_iroot_rejects_bad_args():
    with pytest.raises(ValueError):
        iroot(-1, 2)
    with pytest.raises(ValueError):
        iroot(4, 0)


def test_icbrt_contract():
    for n in list(range(1, 1000)) + [3 ** 33, 3 ** 33 + 1, 10 ** 18]:
        ell = icbrt(n)
        assert ell ** 3 <= n < (ell + 1) ** 3


def test_ceil_2sqrt():
    from math import ceil, sqrt

    for d in range(0, 3000):
        assert ceil_2sqrt(d) == ceil(2 * sqrt(d))
    # perfect squares where floats misround
    big = (3 << 40) ** 2
    assert ceil_2sqrt(big) == 2 * (3 << 40)


def test_third_of_root12_predicate():
    rng = random.Random(1)
    values = [rng.randrange(0, 1 << 90) for _ in range(200)]
    values += [(3 * t) ** 12 + off for t in (1, 2, 5) for off in (-1, 0, 1)]
    for n in values:
        if n < 0:
            continue
        t = third_of_root12(n)
        assert (3 * t) ** 12 <= n < (3 * (t + 1)) ** 12
        assert t == iroot(n, 12) // 3  # nested-floor identity
