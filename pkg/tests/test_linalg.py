from fractions import Fraction

import numpy as np

from ybx.linalg import SparseMatrix, embed
from ybx.report import Report, merge


def dense(m):
    return np.array(m.to_dense(), dtype=object)


def sample(shape, seed):
    rng = np.random.default_rng(seed)
    vals = rng.integers(-3, 4, size=shape)
    return SparseMatrix.from_entries(shape, {(r, c): Fraction(int(v), 2) for (r, c), v in np.ndenumerate(vals) if v})


def test_product_and_kron_match_dense():
    a, b = sample((3, 4), 0), sample((4, 2), 1)
    assert (dense(a @ b) == dense(a).dot(dense(b))).all()
    c, d = sample((2, 2), 2), sample((3, 3), 3)
    assert (dense(c.kron(d)) == np.kron(dense(c), dense(d))).all()


def test_embed_matches_kron_on_adjacent_legs():
    m = sample((6, 6), 4)
    dims = (2, 3, 2)
    assert embed(m, dims, (0, 1)) == m.kron(SparseMatrix.identity(2))
    assert embed(m, (2, 2, 3), (1, 2)) == SparseMatrix.identity(2).kron(m)


def test_embed_outer_legs_via_swap():
    # P_{23} (M (x) 1) P_{23} is M acting on legs 1 and 3
    m = sample((4, 4), 5)
    dims = (2, 3, 2)
    swap = {}
    for x in range(2):
        for y in range(3):
            for z in range(2):
                swap[(x * 6 + y * 2 + z, x * 6 + z * 3 + y)] = Fraction(1)
    p = SparseMatrix.from_entries((12, 12), swap)
    pt = SparseMatrix.from_entries((12, 12), {(c, r): v for (r, c), v in swap.items()})
    assert embed(m, dims, (0, 2)) == p @ m.kron(SparseMatrix.identity(3)) @ pt


def test_arithmetic_and_diff():
    a = sample((3, 3), 6)
    assert (a - a).nnz() == 0
    assert a + a == a.scale(2)
    b = a + SparseMatrix.from_entries((3, 3), {(1, 1): Fraction(1)})
    assert a.diff_entries(b) == [{"row": 1, "col": 1, "lhs": str(a.get(1, 1)), "rhs": str(b.get(1, 1))}]


def test_report_helpers():
    ok = Report("x", "identity", True, [], 3, {"v": Fraction(1, 3)})
    bad = Report("x", "identity", False, [{"at": 1}], 1)
    assert ok.to_dict()["v"] == "1/3"
    assert ok.summary() == "[PASS] x: identity (3 cases)"
    merged = merge("all", "both", [ok, bad])
    assert not merged.passed and merged.checked == 4 and merged.mismatches == [{"at": 1}]
