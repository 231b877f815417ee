import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bggkit.polyseries import (
    T, ONE_POLY, ZERO_POLY, FactorizationError, LaurentPoly, PolyMatrix, TruncSeries,
    congruence_factor, eval_at, kl_expand, kl_recover, mat_inv_triangular, mat_mul,
    mat_transpose, twist_neg,
)

polys = st.dictionaries(st.integers(-4, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
nonneg_polys = st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=4).map(LaurentPoly)


def P(*coeffs):
    return LaurentPoly.from_list(coeffs)


class TestLaurentPoly:
    def test_eval_examples(self):
        assert eval_at(T, -1) == -1
        assert eval_at(ZERO_POLY, 7) == 0
        assert eval_at(P(1, 1, 1), -1) == 1

    def test_eval_zero_with_negative_exponent(self):
        with pytest.raises(ZeroDivisionError):
            eval_at(LaurentPoly({-1: 1}), 0)

    def test_eval_negative_exponent_at_minus_one(self):
        assert eval_at(LaurentPoly({-3: 2, 1: 1}), -1) == -3

    def test_twist_examples(self):
        assert twist_neg(-T) == T
        assert twist_neg(ONE_POLY) == ONE_POLY
        assert twist_neg(P(1, 1, 1)) == P(1, -1, 1)

    def test_no_stored_zeros(self):
        p = P(1, 1) - T
        assert p.coeffs == {0: 1}
        assert (T - T).is_zero()

    @given(polys)
    def test_twist_involution(self, p):
        assert twist_neg(twist_neg(p)) == p

    @given(polys)
    def test_value_at_one_is_coefficient_sum(self, p):
        assert eval_at(p, 1) == sum(p.coeffs.values())

    @given(polys, polys, st.sampled_from([-1, 1, 2, -2]))
    def test_eval_is_ring_map(self, p, q, x):
        if x not in (-1, 1) and not (p.is_polynomial() and q.is_polynomial()):
            return
        assert eval_at(p * q, x) == eval_at(p, x) * eval_at(q, x)
        assert eval_at(p + q, x) == eval_at(p, x) + eval_at(q, x)

    def test_str(self):
        assert str(P(1, -2, 0, 1)) == "1 - 2*t + t^3"
        assert str(ZERO_POLY) == "0"

    def test_pairs_roundtrip(self):
        p = LaurentPoly({-2: 3, 4: -1})
        assert LaurentPoly.from_pairs(p.to_pairs()) == p


class TestKLExpand:
    def test_examples(self):
        assert kl_expand(2, 3, [1]) == T
        assert kl_expand(0, 0, [1]) == ONE_POLY
        assert kl_expand(0, 3, [1, 1]) == T ** 3 + T

    def test_negative_exponents_allowed(self):
        assert kl_expand(0, 1, [0, 1]) == LaurentPoly({-1: 1})

    @given(st.integers(0, 8), st.integers(0, 8), st.lists(st.integers(-3, 3), max_size=4))
    def test_recover_inverts_expand(self, li, lj, p):
        while p and p[-1] == 0:
            p = p[:-1]
        assert kl_recover(li, lj, kl_expand(li, lj, p)) == p

    def test_recover_rejects_parity(self):
        assert kl_recover(0, 3, T ** 2) is None


class TestTruncSeries:
    def test_min_truncation(self):
        a = TruncSeries([1, 1, 1, 1], 3)
        b = TruncSeries([1, 1], 1)
        assert (a + b).N == 1
        assert (a * b).coeffs == (1, 2)

    def test_equality_up_to_shared_degree(self):
        assert TruncSeries([1, 2, 3], 2) == TruncSeries([1, 2], 1)
        assert TruncSeries([1, 2, 3], 2) != TruncSeries([1, 3], 1)

    def test_inverse_geometric(self):
        s = TruncSeries([1, -1], 5)
        assert s.inverse().coeffs == (1, 1, 1, 1, 1, 1)

    def test_non_unit_inverse(self):
        with pytest.raises(ZeroDivisionError):
            TruncSeries([2, 1], 3).inverse()

    @given(nonneg_polys, nonneg_polys)
    def test_series_matches_poly_arithmetic(self, p, q):
        N = 6
        sp, sq = TruncSeries.from_poly(p, N), TruncSeries.from_poly(q, N)
        assert (sp * sq).to_poly() == (p * q).truncate(N)
        assert (sp - sq).to_poly() == (p - q).truncate(N)


def hyperbolic_a(n):
    labels = list(range(n + 1))
    return PolyMatrix.from_function(labels, lambda p, q: T ** (q - p) if p <= q else ZERO_POLY)


class TestMatrices:
    def test_a_times_inverse_n1(self):
        a = hyperbolic_a(1)
        ainv = PolyMatrix.from_function([0, 1], lambda p, q: (-T) ** (q - p) if p <= q <= p + 1 else ZERO_POLY)
        assert mat_mul(a, ainv) == PolyMatrix.identity([0, 1])

    def test_identity_and_transpose(self):
        a = hyperbolic_a(2)
        assert mat_mul(a, PolyMatrix.identity(a.labels)) == a
        assert mat_transpose(mat_transpose(a)) == a

    def test_label_mismatch(self):
        with pytest.raises(ValueError):
            mat_mul(hyperbolic_a(1), PolyMatrix.identity(["x", "y"]))

    def test_duplicate_labels(self):
        with pytest.raises(ValueError):
            PolyMatrix.identity([0, 0])

    def test_inverse_hyperbolic_n2(self):
        inv = mat_inv_triangular(hyperbolic_a(2), [0, 1, 2])
        for p, q, e in inv.entries():
            expected = (-T) ** (q - p) if p <= q <= p + 1 else ZERO_POLY
            assert e == expected, (p, q)

    def test_inverse_small(self):
        a = PolyMatrix.from_dict(["x", "y"], {("x", "x"): ONE_POLY, ("x", "y"): T, ("y", "y"): ONE_POLY})
        inv = mat_inv_triangular(a, ["x", "y"])
        assert inv["x", "y"] == -T and inv["x", "x"] == 1 and inv["y", "x"] == 0
        assert mat_inv_triangular(PolyMatrix.identity("ab"), "ab") == PolyMatrix.identity("ab")

    def test_inverse_rejects_non_unitriangular(self):
        a = hyperbolic_a(1)
        with pytest.raises(ValueError):
            mat_inv_triangular(a, [1, 0])

    def test_inverse_of_series_matrix(self):
        a = hyperbolic_a(2).truncate(4)
        inv = mat_inv_triangular(a, [0, 1, 2])
        assert mat_mul(a, inv) == PolyMatrix.identity([0, 1, 2])

    @settings(max_examples=60)
    @given(st.integers(1, 4), st.data())
    def test_unitriangular_inverse_property(self, n, data):
        labels = list(range(n))
        order = data.draw(st.permutations(labels))
        pos = {l: k for k, l in enumerate(order)}
        ent = {}
        for i in labels:
            for j in labels:
                if i == j:
                    ent[i, j] = ONE_POLY
                elif pos[i] < pos[j]:
                    ent[i, j] = data.draw(polys)
        a = PolyMatrix.from_dict(labels, ent)
        assert mat_mul(a, mat_inv_triangular(a, order)) == PolyMatrix.identity(labels)
        assert mat_mul(mat_inv_triangular(a, order), a) == PolyMatrix.identity(labels)


def brute_force_congruence(E, order, max_deg=3, coeff_range=(-1, 0, 1)):
    """Search unitriangular a with small polynomial entries; d then solves diagonally."""
    labels = list(order)
    n = len(labels)
    upper = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    monos = [LaurentPoly.from_list(c) for c in itertools.product(coeff_range, repeat=max_deg + 1)]
    found = []
    for choice in itertools.product(monos, repeat=len(upper)):
        ent = {(l, l): ONE_POLY for l in labels}
        ent.update(dict(zip(upper, choice)))
        a = PolyMatrix.from_dict(E.labels, ent)
        ainv = mat_inv_triangular(a, order)
        d = mat_mul(mat_mul(mat_transpose(ainv), E), ainv)
        if d.is_diagonal():
            found.append((a, d))
    return found


class TestCongruence:
    E = PolyMatrix.from_dict([0, 1], {
        (0, 0): P(1, 1), (0, 1): P(0, 1, 1), (1, 0): P(0, 1, 1), (1, 1): P(1, 0, 0, 1)})

    def test_example(self):
        res = congruence_factor(self.E, [0, 1], 6)
        assert res.a == PolyMatrix.from_dict([0, 1], {(0, 0): ONE_POLY, (0, 1): T, (1, 1): ONE_POLY})
        assert res.d == PolyMatrix.diagonal([0, 1], {0: P(1, 1), 1: P(1, 0, -1)})

    def test_matches_brute_force_oracle(self):
        found = brute_force_congruence(self.E, [0, 1])
        assert len(found) == 1
        res = congruence_factor(self.E, [0, 1], 6)
        assert (res.a, res.d) == found[0]

    def test_diagonal_input(self):
        res = congruence_factor(PolyMatrix.identity([0, 1]), [0, 1], 3)
        assert res.a == PolyMatrix.identity([0, 1]) and res.d == PolyMatrix.identity([0, 1])

    def test_perturbed_divisibility(self):
        E = PolyMatrix.from_dict([0, 1], {
            (0, 0): P(1, 1), (0, 1): P(0, 1, 1, 1), (1, 0): P(0, 1, 1, 1), (1, 1): P(1, 0, 0, 1)})
        with pytest.raises(FactorizationError) as err:
            congruence_factor(E, [0, 1], 6)
        assert err.value.kind == "divisibility" and err.value.position == (0, 1)
        assert brute_force_congruence(E, [0, 1]) == []

    def test_asymmetric(self):
        E = PolyMatrix.from_dict([0, 1], {(0, 0): ONE_POLY, (0, 1): T, (1, 1): ONE_POLY})
        with pytest.raises(FactorizationError) as err:
            congruence_factor(E, [0, 1], 3)
        assert err.value.kind == "asymmetric"

    def test_pivot(self):
        with pytest.raises(FactorizationError) as err:
            congruence_factor(PolyMatrix.diagonal(["x"], {"x": T}), ["x"], 3)
        assert err.value.kind == "pivot" and err.value.position == ("x",)

    @settings(max_examples=60)
    @given(st.integers(1, 4), st.data())
    def test_roundtrip_and_uniqueness(self, n, data):
        labels = list(range(n))
        order = data.draw(st.permutations(labels))
        pos = {l: k for k, l in enumerate(order)}
        ent = {(l, l): ONE_POLY for l in labels}
        for i in labels:
            for j in labels:
                if pos[i] < pos[j]:
                    ent[i, j] = data.draw(nonneg_polys)
        a = PolyMatrix.from_dict(labels, ent)
        unit_const = st.tuples(st.sampled_from([1, -1]), nonneg_polys).map(lambda x: x[1].shift(1) + x[0])
        d = PolyMatrix.diagonal(labels, {l: data.draw(unit_const) for l in labels})
        E = mat_mul(mat_mul(mat_transpose(a), d), a)
        N = 40
        res = congruence_factor(E, order, N)
        assert res.a == a and res.d == d
        again = congruence_factor(E, order, N)
        assert again == res
