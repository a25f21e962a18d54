import random

import pytest

from quadhier import _pykernels, kernels
from quadhier.subspaces import pivot_patterns

try:
    from quadhier import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def _tables(p, m, seed):
    rng = random.Random(seed)
    member = bytes([0] + [int(rng.random() < 0.4) for _ in range(p**m - 1)])
    cols = [tuple(rng.randrange(p) for _ in range(m)) for _ in range(rng.randint(5, 40))]
    return member, cols


@needs_ext
@pytest.mark.parametrize("p,m", [(3, 3), (3, 4), (5, 3), (3, 5), (7, 2)])
def test_backends_agree(p, m):
    for seed in range(3):
        member, cols = _tables(p, m, seed)
        for k in range(m + 1):
            pats = pivot_patterns(m, k)
            assert _ckernels.max_intersection(p, m, k, member, pats) == _pykernels.max_intersection(p, m, k, member, pats)
            assert _ckernels.max_orthogonal_columns(p, m, k, cols, pats) == _pykernels.max_orthogonal_columns(
                p, m, k, cols, pats
            )


@pytest.mark.parametrize("impl", [_pykernels, pytest.param(_ckernels, marks=needs_ext)])
def test_edge_cases(impl):
    member = bytes([0, 1, 1] + [0] * 6)
    assert impl.max_intersection(3, 2, 0, member, [()]) == 0
    assert impl.max_intersection(3, 2, 2, member, [(0, 1)]) == 2
    assert impl.max_intersection(3, 2, 1, member, []) == -1
    cols = [(1, 0), (0, 1), (1, 1)]
    assert impl.max_orthogonal_columns(3, 2, 0, cols, [()]) == 3
    assert impl.max_orthogonal_columns(3, 2, 2, cols, [(0, 1)]) == 0
    with pytest.raises(ValueError):
        impl.max_intersection(3, 2, 1, b"\x00", [(0,)])


def test_threads_do_not_change_results():
    p, m = 3, 5
    member, cols = _tables(p, m, 11)
    for k in range(m + 1):
        pats = pivot_patterns(m, k)
        ref = kernels.max_intersection(p, m, k, member, pats, threads=1)
        assert kernels.max_intersection(p, m, k, member, pats, threads=4) == ref
        refc = kernels.max_orthogonal_columns(p, m, k, cols, pats, threads=1)
        assert kernels.max_orthogonal_columns(p, m, k, cols, pats, threads=3) == refc


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
