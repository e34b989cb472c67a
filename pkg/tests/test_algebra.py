import numpy as np
import pytest

from ybe7.algebra import DimensionError, E2, embed12, embed23, kron, matmul, max_abs

from conftest import random_complex


def naive_matmul(a, b):
    n, m = a.shape
    p = b.shape[1]
    out = np.zeros((n, p), dtype=complex)
    for i in range(n):
        for j in range(p):
            for t in range(m):
                out[i, j] += a[i, t] * b[t, j]
    return out


def test_kron_trivial_cases():
    assert np.array_equal(kron(E2, E2), np.eye(4))
    assert np.array_equal(kron(np.diag([2, 3]), E2), np.diag([2, 2, 3, 3]))


def test_kron_block_structure(rng):
    a = random_complex(rng, (2, 3))
    b = random_complex(rng, (3, 2))
    k = kron(a, b)
    assert k.shape == (6, 6)
    for i in range(2):
        for j in range(3):
            assert np.allclose(k[3 * i:3 * i + 3, 2 * j:2 * j + 2], a[i, j] * b, atol=0)


def test_mixed_product(rng):
    A, B, C, D = (random_complex(rng, (2, 2)) for _ in range(4))
    lhs = matmul(kron(A, B), kron(C, D))
    rhs = kron(A @ C, B @ D)
    assert max_abs(lhs - rhs) <= 1e-12


def test_kron_bilinear(rng):
    A, B, C = (random_complex(rng, (2, 2)) for _ in range(3))
    alpha = 0.3 - 1.7j
    assert max_abs(kron(alpha * A + B, C) - (alpha * kron(A, C) + kron(B, C))) <= 1e-14
    assert max_abs(kron(C, alpha * A + B) - (alpha * kron(C, A) + kron(C, B))) <= 1e-14


def test_matmul_against_triple_loop(rng):
    a, b = random_complex(rng, (4, 4)), random_complex(rng, (4, 4))
    assert max_abs(matmul(a, b) - naive_matmul(a, b)) <= 1e-13
    assert np.array_equal(matmul(np.eye(4), a), a)
    assert not np.any(matmul(a, np.zeros((4, 4))))


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionError):
        matmul(np.eye(2), np.eye(3))


def test_embeddings_of_identity():
    assert np.array_equal(embed12(np.eye(4)), np.eye(8))
    assert np.array_equal(embed23(np.eye(4)), np.eye(8))


@pytest.mark.parametrize("bad", [np.eye(2), np.eye(8), np.ones((4, 3))])
def test_embeddings_reject_non_4x4(bad):
    with pytest.raises(DimensionError):
        embed12(bad)
    with pytest.raises(DimensionError):
        embed23(bad)


def test_embedding_product_index_contraction(rng):
    # (R (x) E)(E (x) R') as an explicit six-index contraction
    R = random_complex(rng, (4, 4))
    Rp = random_complex(rng, (4, 4))
    r = R.reshape(2, 2, 2, 2)  # r[a, b, c, d] = R[(a, b), (c, d)]
    rp = Rp.reshape(2, 2, 2, 2)
    want = np.zeros((2, 2, 2, 2, 2, 2), dtype=complex)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    for e in range(2):
                        for f in range(2):
                            want[a, b, c, d, e, f] = sum(r[a, b, d, g] * rp[g, c, e, f] for g in range(2))
    got = (embed12(R) @ embed23(Rp)).reshape(2, 2, 2, 2, 2, 2)
    assert max_abs(got - want) <= 1e-13


def test_max_abs():
    assert max_abs(np.zeros((3, 3))) == 0
    assert max_abs(np.diag([1, -2j])) == 2
    assert max_abs(np.empty((0, 0))) == 0


def test_max_abs_transpose_and_triangle(rng):
    a, b = random_complex(rng, (5, 3)), random_complex(rng, (5, 3))
    assert max_abs(a) == max_abs(a.T)
    assert max_abs(a + b) <= max_abs(a) + max_abs(b)


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        kron(np.array([[np.nan]]), E2)
