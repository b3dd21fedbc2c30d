"""The compiled kernels and the pure-Python fallback must agree exactly."""

import random

import pytest

from twistlab._kernels import _pyops

try:
    from twistlab._kernels import _fastops
except ImportError:  # pragma: no cover - build-environment dependent
    _fastops = None

needs_ext = pytest.mark.skipif(_fastops is None, reason="compiled kernels not built")


@needs_ext
def test_impl_tags():
    assert _pyops.IMPL == "python"
    assert _fastops.IMPL == "cython"


@needs_ext
def test_cross_agreement_free_ops():
    rng = random.Random(3)
    for _ in range(500):
        a = tuple(rng.choice((1, -1, 2, -2, 3, -3)) for _ in range(rng.randint(0, 25)))
        b = tuple(rng.choice((1, -1, 2, -2, 3, -3)) for _ in range(rng.randint(0, 25)))
        assert _pyops.free_reduce(a) == _fastops.free_reduce(a)
        ra, rb = _pyops.free_reduce(a), _pyops.free_reduce(b)
        assert _pyops.free_mul(ra, rb) == _fastops.free_mul(ra, rb)


@needs_ext
def test_cross_agreement_bs():
    rng = random.Random(4)
    for n in (2, 3, 5):
        for _ in range(300):
            flat = []
            for _ in range(rng.randint(0, 10)):
                flat.append(rng.choice((1, 2)))
                flat.append(rng.randint(-6, 6))
            t = tuple(flat)
            assert _pyops.bs_normalize(t, n) == _fastops.bs_normalize(t, n)


def test_selection_env(monkeypatch):
    import importlib

    import twistlab._kernels as k

    monkeypatch.setenv("TWISTLAB_KERNEL", "py")
    mod = importlib.reload(k)
    assert mod.IMPL == "python"
    monkeypatch.delenv("TWISTLAB_KERNEL")
    importlib.reload(k)
