import pytest
from hypothesis import given, strategies as st

from nilcascade.errors import OrderDomainError, ValidationError
from nilcascade.roots import (GREATER, LESS, EQUAL, IndexStream, OrderSpec, Root, Window,
                              parse_root, positive_roots, window_roots)


def order_strategies():
    return st.sampled_from([
        OrderSpec.natural("A"),
        OrderSpec.reverse_natural("A"),
        OrderSpec.interleaved("A"),
        OrderSpec("A", IndexStream.explicit([2, 1]), IndexStream.arithmetic(3, 1)).check(),
        OrderSpec("A", IndexStream.explicit([1, 3, 2]), IndexStream.arithmetic(4, 1)).check(),
    ])


class TestPositiveRoots:
    def test_a3(self):
        assert [str(r) for r in positive_roots("A", 3)] == ["e1-e2", "e1-e3", "e2-e3"]

    def test_c2(self):
        assert {str(r) for r in positive_roots("C", 2)} == {"e1-e2", "e1+e2", "2e1", "2e2"}

    def test_d2(self):
        assert {str(r) for r in positive_roots("D", 2)} == {"e1-e2", "e1+e2"}

    @pytest.mark.parametrize("system,count", [("A", lambda n: n * (n - 1) // 2),
                                              ("B", lambda n: n * n),
                                              ("C", lambda n: n * n),
                                              ("D", lambda n: n * (n - 1))])
    def test_counts(self, system, count):
        for n in range(2, 7):
            assert len(positive_roots(system, n)) == count(n)

    def test_rank_below_minimum(self):
        with pytest.raises(ValidationError):
            positive_roots("D", 1)
        with pytest.raises(ValidationError):
            positive_roots("A", 0)


class TestRootParsing:
    @pytest.mark.parametrize("text", ["e1-e2", "e2+e5", "2e3", "e7"])
    def test_roundtrip(self, text):
        assert str(parse_root(text)) == text

    def test_sum_canonical(self):
        assert parse_root("e5+e2") == Root.sum_(2, 5)

    def test_rejects_garbage(self):
        for bad in ["e1", "x", "e1-e1", "e0-e2", "2e0", "-e1"]:
            if bad == "e1":
                continue  # short root, valid
            with pytest.raises(ValidationError):
                parse_root(bad)


class TestCompare:
    def test_interleaved_examples(self):
        order = OrderSpec.interleaved("A")
        assert order.compare(1, 3) == GREATER
        assert order.compare(5, 5) == EQUAL
        assert order.compare(4, 2) == GREATER
        assert order.compare(2, 4) == LESS

    def test_uncovered_index(self):
        finite = OrderSpec.finite("A", [3, 1, 2])
        with pytest.raises(OrderDomainError):
            finite.compare(1, 5)

    @given(order_strategies(), st.integers(1, 30), st.integers(1, 30), st.integers(1, 30))
    def test_strict_total_order(self, order, i, j, k):
        cmp_ij = order.compare(i, j)
        assert cmp_ij == -order.compare(j, i)
        assert (cmp_ij == EQUAL) == (i == j)
        if cmp_ij == GREATER and order.compare(j, k) == GREATER:
            assert order.compare(i, k) == GREATER


class TestExtrema:
    def test_natural(self):
        nat = OrderSpec.natural("A")
        assert nat.max_remaining({1, 2}) == 3
        assert nat.min_remaining(()) is None

    def test_interleaved(self):
        order = OrderSpec.interleaved("A")
        assert order.max_remaining(()) == 1
        assert order.min_remaining(()) == 2

    def test_finite(self):
        order = OrderSpec.finite("B", [2, 3, 1])
        assert order.max_remaining(()) == 2
        assert order.min_remaining(()) == 1
        assert order.max_remaining({2, 3, 1}) is None

    @given(order_strategies(), st.sets(st.integers(1, 12), max_size=6))
    def test_max_is_maximal(self, order, excluded):
        m = order.max_remaining(excluded)
        if m is not None:
            assert m not in excluded
            for other in range(1, 15):
                if other not in excluded and other != m:
                    assert order.compare(m, other) == GREATER


class TestCounts:
    def test_natural_counts(self):
        nat = OrderSpec.natural("A")
        assert nat.count_geq(4) == 4
        assert nat.count_leq(4) is None
        assert nat.count_gt(1) == 0

    def test_interleaved_counts(self):
        order = OrderSpec.interleaved("A")
        assert order.count_geq(5) == 3  # 1, 3, 5
        assert order.count_geq(4) is None
        assert order.count_leq(4) == 2  # 2, 4
        assert order.count_leq(5) is None


class TestOrderValidation:
    def test_overlap_rejected(self):
        spec = OrderSpec("A", IndexStream.arithmetic(1, 2), IndexStream.arithmetic(1, 2))
        with pytest.raises(ValidationError):
            spec.check()

    def test_gap_rejected(self):
        spec = OrderSpec("A", IndexStream.arithmetic(1, 3), IndexStream.arithmetic(2, 3))
        with pytest.raises(ValidationError):
            spec.check()

    def test_list_plus_tail(self):
        OrderSpec("A", IndexStream.explicit([2, 1]), IndexStream.arithmetic(3, 1)).check()

    def test_json_roundtrip(self):
        order = OrderSpec.interleaved("C")
        again = OrderSpec.from_json(order.to_json())
        assert again == order


class TestWindow:
    def test_relabel_descending(self):
        order = OrderSpec.interleaved("A")
        window = Window.build(order, [2, 4, 1, 3])
        assert window.indices == (1, 3, 4, 2)
        assert window.relabel(1) == 1
        assert window.position(2) == 4

    def test_relabel_preserves_order(self):
        order = OrderSpec.interleaved("A")
        window = Window.build(order, [5, 2, 6, 1])
        idx = window.indices
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                assert order.compare(idx[a], idx[b]) == GREATER

    def test_window_roots_match_standard_count(self):
        order = OrderSpec.interleaved("D")
        window = Window.build(order, [1, 2, 3, 4])
        assert len(window_roots(window)) == len(positive_roots("D", 4))
