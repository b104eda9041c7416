import random
from fractions import Fraction

from jacpair import _kernels
from jacpair._kernels import _pykernels


def _rand_dense(rng, n):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]


def test_backend_name():
    assert _kernels.BACKEND in ("python", "cython")


def test_convolve_backends_agree():
    rng = random.Random(3)
    for _ in range(50):
        a, b = _rand_dense(rng, rng.randint(1, 12)), _rand_dense(rng, rng.randint(1, 12))
        assert _kernels.convolve(a, b) == _pykernels.convolve(a, b)
    assert _kernels.convolve([], [1]) == []


def test_sparse_mul_backends_agree():
    rng = random.Random(4)
    for _ in range(50):
        a = {rng.randint(0, 500): rng.randint(-5, 5) for _ in range(rng.randint(1, 20))}
        b = {rng.randint(0, 500): Fraction(rng.randint(-5, 5), 3) for _ in range(rng.randint(1, 20))}
        assert _kernels.sparse_mul(a, b) == _pykernels.sparse_mul(a, b)


def test_sparse_mul_drops_zeros():
    assert _pykernels.sparse_mul({0: 1, 1: 1}, {0: 1, 1: -1}) == {0: 1, 2: -1}


def test_env_forces_pure_python():
    import os
    import subprocess
    import sys
    env = dict(os.environ, JACPAIR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from jacpair import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
