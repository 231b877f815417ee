import pytest
from hypothesis import given, settings, strategies as st

from bggkit import hyperbolic as hb, klv
from bggkit.polyseries import ONE_POLY, T, ZERO_POLY, LaurentPoly, PolyMatrix, mat_mul, mat_transpose


def P(*coeffs):
    return LaurentPoly.from_list(coeffs)


class TestClosedForms:
    def test_n1_matrices(self):
        assert hb.a_closed(1) == PolyMatrix.from_function([0, 1], lambda p, q: [[ONE_POLY, T], [ZERO_POLY, ONE_POLY]][p][q])
        assert hb.a_inv_closed(1)[0, 1] == -T
        assert hb.delta(0)[0, 0] == ONE_POLY + T

    def test_n1_ext(self):
        E = hb.ext_LL_closed(1)
        assert E[0, 0] == P(1, 0, 0, 1) and E[0, 1] == P(0, 1, 1) and E[1, 1] == P(1, 1)

    def test_n0(self):
        assert hb.ext_LL_closed(0)[0, 0] == ONE_POLY + T
        assert hb.verify_all(0).ok

    @pytest.mark.parametrize("n", range(0, 9))
    def test_telescoping(self, n):
        a, dl = hb.a_closed(n), hb.delta(n)
        prod = mat_mul(mat_mul(a, dl), mat_transpose(a))
        for p in range(n + 1):
            for q in range(n + 1):
                assert prod[p, q] == T ** abs(p - q) + T ** (2 * n + 1 - p - q)

    def test_grothendieck_expansion(self):
        assert hb.grothendieck_L(1, 0) == {0: 1, 1: -1}

    def test_socle_series(self):
        assert hb.socle_series_closed(2, 0) == {0: ONE_POLY, 1: T}
        assert hb.socle_series_closed(3, 3) == {3: ONE_POLY}

    def test_pdim_decreasing(self):
        assert [hb.pdim(3, p) for p in hb.indices(3)] == [7, 6, 5, 4]
        assert hb.model_order(3).lt(3, 0)


class TestShapes:
    def test_verma(self):
        assert hb.resolution_shape(2, "verma", 1).degrees == ((1,), (0,))

    def test_simple_n1(self):
        # star identification 2n+1-p, out of range dropped
        assert hb.resolution_shape(1, "simple", 1).degrees == ((1,), (1, 0), (0,), ())

    def test_middle_degree_one(self):
        n = 3
        assert sorted(hb.resolution_shape(n, "simple", n).degrees[1]) == sorted((n, n - 1))

    @given(st.integers(0, 6), st.data())
    @settings(max_examples=40)
    def test_shape_sizes(self, n, data):
        q = data.draw(st.integers(0, n))
        shape = hb.resolution_shape(n, "simple", q)
        assert shape.degrees[0] == (q,)
        assert all(len(d) <= 2 for d in shape.degrees)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            hb.resolution_shape(1, "other", 0)

    @pytest.mark.parametrize("n", range(0, 7))
    def test_verify_all(self, n):
        rep = hb.verify_all(n)
        assert rep.ok, [c.as_dict() for c in rep.checks if not c.ok]
        assert len(rep.checks) == 12


class TestStandardBridge:
    def test_transpose_and_reverse(self):
        std = hb.standard_convention(2)
        assert std.linear == [2, 1, 0]
        assert std.a[1, 0] == T and std.a[0, 1] == ZERO_POLY
        assert mat_mul(mat_mul(mat_transpose(std.a), std.d), std.a) == std.E


class TestKLV:
    def test_load_and_dump(self):
        doc = hb.synthetic_klv_document(2)
        data = klv.load_table(doc)
        assert klv.load_table(klv.dump_table(data)).polys == data.polys

    def test_missing_diagonal(self):
        doc = hb.synthetic_klv_document(1)
        doc["polys"] = [p for p in doc["polys"] if (p["i"], p["j"]) != (1, 1)]
        with pytest.raises(klv.KLVFormatError, match="1"):
            klv.load_table(doc)

    def test_negative_dim_a(self):
        doc = hb.synthetic_klv_document(1)
        doc["dim_a"]["0"] = -1
        with pytest.raises(klv.KLVFormatError):
            klv.load_table(doc)

    def test_duplicate_entry(self):
        doc = hb.synthetic_klv_document(1)
        doc["polys"].append(dict(doc["polys"][0]))
        with pytest.raises(klv.KLVFormatError):
            klv.load_table(doc)

    def _single(self, dim_a, p=(1,), ell=0):
        return klv.load_table({"format": "klv/1", "indices": ["x"], "ell_tilde": {"x": ell}, "dim_a": {"x": dim_a},
                               "polys": [{"i": "x", "j": "x", "p": list(p)}]})

    def test_dtilde(self):
        assert klv.build_dtilde(self._single(0))["x", "x"] == ONE_POLY
        assert klv.build_dtilde(self._single(1))["x", "x"] == ONE_POLY - T ** 2

    def test_single_index_products(self):
        assert klv.step_a(self._single(0), 4)["x", "x"] == ONE_POLY
        assert klv.step_a(self._single(1), 4)["x", "x"] == ONE_POLY - T ** 2

    def test_atilde_exponent(self):
        data = klv.load_table({"format": "klv/1", "indices": [1, 2], "ell_tilde": {"1": 0, "2": 2},
                               "dim_a": {"1": 0, "2": 0},
                               "polys": [{"i": 1, "j": 1, "p": [1]}, {"i": 2, "j": 2, "p": [1]},
                                         {"i": 1, "j": 2, "p": [1]}]})
        t = klv.build_atilde(data)
        assert t.matrix[1, 2] == T ** 2 and not t.warnings

    def test_negative_exponent_warning(self):
        data = klv.load_table({"format": "klv/1", "indices": [1, 2], "ell_tilde": {"1": 2, "2": 0},
                               "dim_a": {"1": 0, "2": 0},
                               "polys": [{"i": 1, "j": 1, "p": [1]}, {"i": 2, "j": 2, "p": [1]},
                                         {"i": 1, "j": 2, "p": [1]}]})
        assert klv.build_atilde(data).warnings

    def test_n1_adapter(self):
        data = klv.load_table(hb.synthetic_klv_document(1))
        N = klv.default_degree(data)
        E = klv.step_a(data, N)
        assert E == hb.ext_LL_closed(1) and E.is_symmetric()
        out = klv.step_cd(E, N)
        assert out.successful
        [o] = out.derived_orderings()
        assert o.lt(1, 0) and len(o.strict_pairs()) == 1
        r = out.result_for([1, 0])
        assert r.factorization.d[1, 1] == ONE_POLY + T

    @pytest.mark.parametrize("n", range(1, 7))
    def test_roundtrip(self, n):
        data = klv.load_table(hb.synthetic_klv_document(n))
        ok, res = klv.roundtrip(data, hb.model_order(n).linear_extension())
        assert ok
        # derived ordering is antisymmetric and reproduces E
        assert res.derived.same_relation(hb.model_order(n))

    def test_identity_factors_everywhere(self):
        I = PolyMatrix.identity([1, 2, 3])
        out = klv.step_cd(I, 3)
        assert len(out.successes()) == 6
        assert all(r.factorization.a == I and r.factorization.d == I for r in out.results)

    def test_non_unit_pivot(self):
        E = PolyMatrix.from_function(["x"], lambda i, j: T)
        out = klv.step_cd(E, 3)
        assert not out.successful and out.results[0].failure.kind == "pivot"

    def test_step_b(self):
        E = hb.ext_LL_closed(2)
        assert klv.step_b(E, klv.expectations_from(E)) == []
        ok = klv.Expectation(0, 0, degree=0, dim=1)
        bad = klv.Expectation(0, 1, degree=1, dim=5)
        diff = klv.step_b(E, [ok, bad])
        assert len(diff) == 1 and (diff[0]["i"], diff[0]["j"], diff[0]["degree"]) == (0, 1, 1)

    def test_parse_expectations(self):
        doc = {"format": "expect/1", "constraints": [{"i": 0, "j": 1, "degree": 1, "dim": 1},
                                                       {"i": 1, "j": 1, "series": [[0, 1], [1, 1]]}]}
        ex = klv.parse_expectations(doc, [0, 1])
        assert klv.step_b(hb.ext_LL_closed(1), ex) == []

    def test_perturbation_fails_every_order(self):
        E = hb.ext_LL_closed(3)
        out = klv.step_cd(klv.perturb(E, 0, 1), 8)
        assert not out.successful and len(out.results) == 24
        assert {r.failure.kind for r in out.results} <= {"divisibility", "pivot"}

    def test_too_many_indices(self):
        with pytest.raises(ValueError):
            klv.step_cd(PolyMatrix.identity(list(range(9))), 2)
