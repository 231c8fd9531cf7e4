import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairdiff import hilbert
from pairdiff.errors import InvalidIndex, InvalidLattice, InvalidRecord, InvalidSpec, OutOfRange
from pairdiff.hilbert import HilbertConfig

from oracles import hilbert2_traversal, is_dyadic_traversal


def cfg(p, b, **kw):
    return HilbertConfig(p=p, bits_per_dim=b, **kw)


def test_order_one_square():
    c = cfg(2, 1)
    assert [hilbert.encode(pt, c) for pt in [(0, 0), (0, 1), (1, 1), (1, 0)]] == [0, 1, 2, 3]
    assert [hilbert.decode(i, c) for i in range(4)] == [(0, 0), (0, 1), (1, 1), (1, 0)]


def test_one_dimension_is_identity(backend):
    c = cfg(1, 8)
    pts = np.arange(256, dtype=np.uint64).reshape(-1, 1)
    assert np.array_equal(hilbert.encode_many(pts, c), pts[:, 0])


def test_scalar_score_examples():
    c = cfg(2, 1)
    assert hilbert.score([0, 0], c) == 0.0
    assert hilbert.score([1, 0], c) == 0.75
    assert hilbert.score([0.5], cfg(1, 1)) == 0.5
    assert hilbert.score([0.2], cfg(1, 52)) == pytest.approx(0.2, abs=2**-52)


def test_default_bits():
    assert HilbertConfig(p=3).bits_per_dim == 21
    assert HilbertConfig(p=1).total_bits == 64


@pytest.mark.parametrize("bits", range(1, 7))
def test_square_matches_recursive_traversal(backend, bits):
    c = cfg(2, bits)
    n = 1 << (2 * bits)
    got = hilbert.decode_many(np.arange(n, dtype=np.uint64), c)
    assert [tuple(map(int, row)) for row in got] == hilbert2_traversal(bits)


@pytest.mark.parametrize("p,bits", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (4, 2), (5, 1)])
def test_exhaustive_bijection_and_adjacency(backend, p, bits):
    c = cfg(p, bits)
    n = 1 << (p * bits)
    pts = hilbert.decode_many(np.arange(n, dtype=np.uint64), c).astype(np.int64)
    assert len({tuple(r) for r in pts}) == n
    steps = np.abs(np.diff(pts, axis=0)).sum(axis=1)
    assert np.all(steps == 1)
    assert pts[0].tolist() == [0] * p
    back = hilbert.encode_many(pts.astype(np.uint64), c)
    assert np.array_equal(back, np.arange(n, dtype=np.uint64))
    assert is_dyadic_traversal([tuple(r) for r in pts.tolist()], p, bits)


@pytest.mark.parametrize("p,bits", [(2, 8), (3, 8), (2, 32), (4, 16), (1, 64), (8, 8)])
def test_random_round_trip(backend, rng, p, bits):
    c = cfg(p, bits)
    hi = np.uint64((1 << bits) - 1)
    pts = rng.integers(0, hi, size=(20_000, p), dtype=np.uint64, endpoint=True)
    idx = hilbert.encode_many(pts, c)
    assert np.array_equal(hilbert.decode_many(idx, c), pts)


def test_backends_agree(rng):
    from pairdiff import _backend, _pykernels

    if _backend.BACKEND != "cython":
        pytest.skip("compiled extension not built")
    from pairdiff import _ckernels

    for p, bits in [(2, 32), (3, 21), (5, 12), (1, 64)]:
        pts = rng.integers(0, 1 << bits, size=(2000, p), dtype=np.uint64)
        a = _ckernels.hilbert_encode(pts, bits)
        assert np.array_equal(a, _pykernels.hilbert_encode(pts, bits))
        assert np.array_equal(_ckernels.hilbert_decode(a, p, bits),
                              _pykernels.hilbert_decode(a, p, bits))


def test_quantize():
    assert hilbert.quantize([0.0, 1.0, 0.5], 1).tolist() == [0, 1, 1]
    assert hilbert.quantize([0.0, 1 / 3, 1.0], 2).tolist() == [0, 1, 3]
    top = hilbert.quantize([1.0, 0.0, 0.5], 64)
    assert top.tolist() == [2**64 - 1, 0, 2**63]
    # exact integer path agrees with the float path where both are exact
    u = np.array([0.0, 0.25, 0.75, 1.0])
    assert (hilbert.quantize(u, 53) >> np.uint64(1)).tolist() == hilbert.quantize(u, 52).tolist()


def test_quantize_monotone(rng):
    u = np.sort(rng.uniform(0, 1, 1000))
    for bits in (4, 21, 32, 60, 64):
        assert np.all(np.diff(hilbert.quantize(u, bits).astype(object)) >= 0)


def test_indices_reject_out_of_range():
    c = cfg(2, 4)
    for bad in ([[0.5, 1.5]], [[-0.1, 0.2]], [[np.nan, 0.2]]):
        with pytest.raises(OutOfRange):
            hilbert.indices(np.array(bad), c)


def test_lattice_and_index_errors():
    c = cfg(2, 3)
    with pytest.raises(InvalidLattice):
        hilbert.encode((8, 0), c)
    with pytest.raises(InvalidLattice):
        hilbert.encode((1, 2, 3), c)
    with pytest.raises(InvalidLattice):
        hilbert.encode_many(np.array([[1, -1]]), c)
    with pytest.raises(InvalidLattice):
        hilbert.encode_many(np.array([[0.5, 1.0]]), c)
    with pytest.raises(InvalidIndex):
        hilbert.decode(64, c)
    with pytest.raises(InvalidIndex):
        hilbert.decode_many(np.array([-1]), c)


@pytest.mark.parametrize("kw", [
    dict(p=0), dict(p=2, bits_per_dim=33), dict(p=2, bits_per_dim=0),
    dict(p=2, tie_mode="jitter"), dict(p=2, seed=-1), dict(p=2, seed=2**64),
])
def test_config_errors(kw):
    with pytest.raises(InvalidSpec):
        HilbertConfig(**kw)


def test_normalize_covariates():
    x = np.array([[1.0, 5.0, 2.0], [3.0, 5.0, 4.0], [2.0, 5.0, 8.0]])
    u = hilbert.normalize_covariates(x)
    assert u[:, 0].tolist() == [0.0, 1.0, 0.5]
    assert u[:, 1].tolist() == [0.5, 0.5, 0.5]
    assert u[:, 2].tolist() == [0.0, 1 / 3, 1.0]
    with pytest.raises(InvalidRecord) as exc:
        hilbert.normalize_covariates(np.array([[0.0], [np.inf]]))
    assert exc.value.index == 1


def test_normalize_scores():
    assert hilbert.normalize_scores([2.0, 4.0, 3.0]).tolist() == [0.0, 1.0, 0.5]
    assert hilbert.normalize_scores([7.0, 7.0]).tolist() == [0.5, 0.5]


def test_break_ties_aggregate_is_identity():
    v = np.array([0.0, 0.0, 1.0])
    assert np.array_equal(hilbert.break_ties(v, cfg(1, 8)), v)


def test_break_ties_perturb():
    v = np.repeat(np.linspace(0, 1, 11), 50)
    c = cfg(1, 8, tie_mode="perturb", seed=17)
    a = hilbert.break_ties(v, c)
    assert len(np.unique(a)) == len(a)
    assert np.max(np.abs(a - v)) <= c.perturb_scale
    assert np.array_equal(a, hilbert.break_ties(v, c))
    other = hilbert.break_ties(v, cfg(1, 8, tie_mode="perturb", seed=18))
    assert not np.array_equal(a, other)


def test_break_ties_redraws_collisions():
    # a tiny span forces collisions that must be re-drawn
    v = np.zeros(2000)
    c = HilbertConfig(p=1, bits_per_dim=8, tie_mode="perturb", perturb_scale=1e-300)
    a = hilbert.break_ties(v, c)
    assert len(np.unique(a)) == len(a)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.data())
def test_nearby_indices_are_nearby_points(p, data):
    bits = data.draw(st.integers(1, 64 // p if p > 1 else 20))
    bits = min(bits, 20)
    c = cfg(p, bits)
    n = 1 << (p * bits)
    i = data.draw(st.integers(0, n - 2))
    a = np.array(hilbert.decode(i, c), dtype=np.int64)
    b = np.array(hilbert.decode(i + 1, c), dtype=np.int64)
    assert np.abs(a - b).sum() == 1
    assert hilbert.encode(tuple(a), c) == i
