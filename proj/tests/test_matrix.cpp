#include <catch_amalgamated.hpp>

#include <barbasis/matrix.hpp>
#include <barbasis/oracle.hpp>

using namespace barbasis;

namespace {

template <class F>
matrix<F> from_rows(const F& field, std::vector<std::vector<std::int64_t>> rows) {
	index_t r = static_cast<index_t>(rows.size());
	index_t c = rows.empty() ? 0 : static_cast<index_t>(rows[0].size());
	matrix<F> m(field, r, c);
	for (index_t i = 0; i < r; ++i)
		for (index_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
	return m;
}

// Plain Gaussian elimination used as an independent rank check; deliberately
// not the library's rref.
template <class F>
index_t rank_by_elimination(matrix<F> m) {
	const F& fd = m.field();
	index_t rk = 0;
	for (index_t c = 0; c < m.cols() && rk < m.rows(); ++c) {
		index_t sel = -1;
		for (index_t i = rk; i < m.rows(); ++i)
			if (!fd.is_zero(m(i, c))) {
				sel = i;
				break;
			}
		if (sel < 0) continue;
		m.swap_rows(sel, rk);
		for (index_t i = rk + 1; i < m.rows(); ++i) {
			if (fd.is_zero(m(i, c))) continue;
			auto lam = fd.neg(fd.div(m(i, c), m(rk, c)));
			m.add_row_multiple(i, rk, lam);
		}
		++rk;
	}
	return rk;
}

// Independent statement of the reversed barcode form: 0/1 entries, at most
// one nonzero per row and column, nonzeros exactly in the last r columns with
// rows increasing left to right.
template <class F>
bool reversed_form_by_definition(const matrix<F>& m) {
	const F& fd = m.field();
	std::vector<std::pair<index_t, index_t>> ones;
	for (index_t i = 0; i < m.rows(); ++i)
		for (index_t j = 0; j < m.cols(); ++j) {
			if (fd.is_zero(m(i, j))) continue;
			if (!fd.is_one(m(i, j))) return false;
			ones.push_back({i, j});
		}
	index_t r = static_cast<index_t>(ones.size());
	std::sort(ones.begin(), ones.end(), [](auto a, auto b) { return a.second < b.second; });
	for (index_t t = 0; t < r; ++t) {
		if (ones[static_cast<std::size_t>(t)].second != m.cols() - r + t) return false;
		if (t > 0 && ones[static_cast<std::size_t>(t)].first <= ones[static_cast<std::size_t>(t - 1)].first)
			return false;
	}
	return true;
}

} // namespace

TEST_CASE("elementary row and column operations") {
	galois_field f5(5);
	auto a2 = matrix<galois_field>::identity(f5, 3);

	SECTION("zero scalar leaves the matrix unchanged") {
		auto before = a2;
		REQUIRE(row_op(a2, 1, 2, f5.zero()) == before);
		REQUIRE(col_op(a2, 2, 1, f5.zero()) == before);
	}

	SECTION("row operation on the identity") {
		auto got = row_op(a2, 1, 2, f5.one());
		REQUIRE(got == from_rows(f5, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}));
	}

	SECTION("column operation clearing an entry") {
		auto a3 = from_rows(f5, {{1, 0, 1}, {0, 1, 1}, {0, 0, 0}});
		auto got = col_op(a3, 2, 1, f5.neg(f5.one()));
		REQUIRE(got == from_rows(f5, {{1, 0, 1}, {0, 1, 0}, {0, 0, 0}}));
	}

	SECTION("row op with -lambda inverts the row op") {
		rng r(101);
		for (int t = 0; t < 50; ++t) {
			auto m = random_matrix(f5, r, 4, 3);
			auto lam = random_scalar(f5, r);
			auto back = row_op(row_op(m, 2, 0, lam), 2, 0, f5.neg(lam));
			REQUIRE(back == m);
		}
	}

	SECTION("operations agree with explicit elementary matrix products") {
		rng r(102);
		for (int t = 0; t < 50; ++t) {
			auto m = random_matrix(f5, r, 3, 4);
			index_t p = r.range(0, 2), q = r.range(0, 2);
			if (p == q) continue;
			auto lam = random_scalar(f5, r);
			REQUIRE(row_op(m, p, q, lam) == elementary_matrix(f5, 3, p, q, lam) * m);
			index_t cp = r.range(0, 3), cq = r.range(0, 3);
			if (cp == cq) continue;
			REQUIRE(col_op(m, cq, cp, lam) == m * elementary_matrix(f5, 4, cp, cq, lam));
		}
	}

	SECTION("index errors") {
		REQUIRE_THROWS(row_op(a2, 0, 0, f5.one()));
		REQUIRE_THROWS(row_op(a2, 0, 5, f5.one()));
	}
}

TEST_CASE("rref is a certified factorization") {
	galois_field f3(3);

	SECTION("identity and zero") {
		auto id = matrix<galois_field>::identity(f3, 4);
		auto f = rref(id);
		REQUIRE(f.rref == id);
		REQUIRE(f.transform == id);

		matrix<galois_field> z(f3, 3, 2);
		auto fz = rref(z);
		REQUIRE(fz.rref == z);
		REQUIRE(fz.transform == matrix<galois_field>::identity(f3, 3));
	}

	SECTION("random matrices over F_3") {
		rng r(7);
		for (int t = 0; t < 40; ++t) {
			auto m = random_matrix(f3, r, 5, 4);
			auto f = rref(m);
			REQUIRE(f.transform * m == f.rref);
			REQUIRE(is_invertible(f.transform));
			REQUIRE(static_cast<index_t>(f.pivot_cols.size()) == rank_by_elimination(m));
		}
	}
}

TEST_CASE("reversed column echelon is a certified factorization") {
	galois_field f2(2);

	SECTION("identity and zero") {
		auto id = matrix<galois_field>::identity(f2, 3);
		auto f = reversed_column_echelon(id);
		REQUIRE(f.echelon == id);
		REQUIRE(f.transform == id);

		matrix<galois_field> z(f2, 2, 3);
		auto fz = reversed_column_echelon(z);
		REQUIRE(fz.echelon == z);
		REQUIRE(fz.transform == matrix<galois_field>::identity(f2, 3));
	}

	SECTION("random matrices over F_2") {
		rng r(8);
		for (int t = 0; t < 60; ++t) {
			auto m = random_matrix(f2, r, 4, 5);
			auto f = reversed_column_echelon(m);
			REQUIRE(m * f.transform == f.echelon);
			REQUIRE(is_invertible(f.transform));
			index_t rk = static_cast<index_t>(f.pivot_rows.size());
			REQUIRE(rk == rank_by_elimination(m));
			// nonzero columns rightmost, pivot rows strictly increasing,
			// pivots are the lowest nonzero of their column
			for (index_t j = 0; j < f.echelon.cols() - rk; ++j) REQUIRE(f.echelon.col_is_zero(j));
			for (index_t t2 = 0; t2 < rk; ++t2) {
				index_t col = f.echelon.cols() - rk + t2;
				index_t pr = f.pivot_rows[static_cast<std::size_t>(t2)];
				REQUIRE(f.echelon.field().is_one(f.echelon(pr, col)));
				if (t2 > 0) REQUIRE(pr > f.pivot_rows[static_cast<std::size_t>(t2 - 1)]);
				for (index_t i = pr + 1; i < f.echelon.rows(); ++i)
					REQUIRE(f.echelon.field().is_zero(f.echelon(i, col)));
				for (index_t j = 0; j < f.echelon.cols(); ++j)
					if (j != col) REQUIRE(f.echelon.field().is_zero(f.echelon(pr, j)));
			}
		}
	}
}

TEST_CASE("barcode form recognition") {
	galois_field f2(2);

	SECTION("accepted matrices produce their profile") {
		auto m = from_rows(f2, {{1, 0, 0}, {0, 0, 1}});
		auto prof = barcode_form_profile(m);
		REQUIRE(prof.has_value());
		REQUIRE(prof->rank == 2);
		REQUIRE(prof->pivot_col == std::vector<index_t>{0, 2});
		REQUIRE(matrix_from_profile(f2, 2, 3, *prof) == m);
	}

	SECTION("zero and empty matrices are in barcode form with rank 0") {
		matrix<galois_field> z(f2, 3, 2);
		REQUIRE(barcode_form_profile(z)->rank == 0);
		matrix<galois_field> e(f2, 0, 4);
		REQUIRE(barcode_form_profile(e)->rank == 0);
		matrix<galois_field> e2(f2, 4, 0);
		REQUIRE(barcode_form_profile(e2)->rank == 0);
	}

	SECTION("pivot columns must strictly increase") {
		REQUIRE_FALSE(is_barcode_form(from_rows(f2, {{0, 1}, {1, 0}})));
	}

	SECTION("nonzero rows must come first") {
		REQUIRE_FALSE(is_barcode_form(from_rows(f2, {{0, 0}, {1, 0}})));
	}

	SECTION("entries must be 0 or 1") {
		galois_field f5(5);
		REQUIRE_FALSE(is_barcode_form(from_rows(f5, {{2, 0}, {0, 1}})));
	}

	SECTION("accepted implies rebuilt equality on random 0/1 matrices") {
		rng r(9);
		for (int t = 0; t < 200; ++t) {
			auto m = random_matrix(f2, r, 3, 4);
			auto prof = barcode_form_profile(m);
			if (prof) REQUIRE(matrix_from_profile(f2, 3, 4, *prof) == m);
		}
	}
}

TEST_CASE("reversed barcode form recognition") {
	galois_field f2(2);

	SECTION("zero and empty matrices accepted with rank 0") {
		matrix<galois_field> z(f2, 2, 2);
		REQUIRE(reversed_barcode_form_profile(z)->rank == 0);
		matrix<galois_field> e(f2, 0, 3);
		REQUIRE(reversed_barcode_form_profile(e)->rank == 0);
		matrix<galois_field> e2(f2, 3, 0);
		REQUIRE(reversed_barcode_form_profile(e2)->rank == 0);
	}

	SECTION("anti-diagonal transpose of a barcode form is accepted") {
		auto m = from_rows(f2, {{1, 0, 0}, {0, 0, 1}});
		REQUIRE(is_barcode_form(m));
		auto t = m.anti_transpose();
		REQUIRE(t == from_rows(f2, {{1, 0}, {0, 0}, {0, 1}}));
		REQUIRE(is_reversed_barcode_form(t));
	}

	SECTION("anti-diagonal transposes of random barcode forms are accepted") {
		rng r(10);
		for (int t = 0; t < 200; ++t) {
			auto m = random_matrix(f2, r, 3, 4);
			if (!is_barcode_form(m)) continue;
			REQUIRE(is_reversed_barcode_form(m.anti_transpose()));
		}
	}

	SECTION("exhaustive 2x2 0/1 matrices match the definition") {
		for (int mask = 0; mask < 16; ++mask) {
			matrix<galois_field> m(f2, 2, 2);
			for (index_t i = 0; i < 2; ++i)
				for (index_t j = 0; j < 2; ++j)
					m(i, j) = ((mask >> (2 * i + j)) & 1) ? f2.one() : f2.zero();
			REQUIRE(is_reversed_barcode_form(m) == reversed_form_by_definition(m));
		}
	}

	SECTION("a nonzero column left of a zero column is refused") {
		REQUIRE_FALSE(is_reversed_barcode_form(from_rows(f2, {{0, 0}, {1, 0}})));
	}
}

TEST_CASE("multiply, inverse and rank kernels") {
	galois_field f5(5);

	SECTION("inverse of identity") {
		auto id = matrix<galois_field>::identity(f5, 3);
		REQUIRE(inverse(id) == id);
	}

	SECTION("rank of zero is 0, singular inverse throws") {
		matrix<galois_field> z(f5, 3, 3);
		REQUIRE(rank(z) == 0);
		REQUIRE_THROWS_AS(inverse(z), std::domain_error);
	}

	SECTION("rank of the first example matrix") {
		auto a1 = from_rows(f5, {{1, 0}, {0, 1}, {0, 0}});
		REQUIRE(rank(a1) == 2);
	}

	SECTION("inverse(m) * m == identity on random invertible matrices") {
		rng r(11);
		rationals q;
		for (int t = 0; t < 20; ++t) {
			auto m = random_matrix(q, r, 4, 4);
			if (!is_invertible(m)) continue;
			REQUIRE(inverse(m) * m == matrix<rationals>::identity(q, 4));
		}
	}
}
