#include <catch_amalgamated.hpp>

#include <barbasis/intervals.hpp>
#include <barbasis/zigzag_order.hpp>

using namespace barbasis;

namespace {

std::vector<interval> all_intervals(int l) {
	std::vector<interval> v;
	for (int i = 0; i <= l; ++i)
		for (int j = i; j <= l; ++j) v.push_back({i, j});
	return v;
}

} // namespace

TEST_CASE("overlap relation") {
	REQUIRE(overlap_precedes({0, 1}, {0, 3}));
	REQUIRE_FALSE(overlap_precedes({1, 4}, {2, 3})); // nested bars are unrelated
	REQUIRE_FALSE(overlap_precedes({2, 3}, {1, 4}));

	SECTION("reflexive and antisymmetric but not transitive on l = 4") {
		auto ivs = all_intervals(4);
		for (auto& a : ivs) REQUIRE(overlap_precedes(a, a));
		for (auto& a : ivs)
			for (auto& b : ivs)
				if (overlap_precedes(a, b) && overlap_precedes(b, a)) REQUIRE(a == b);
		bool transitivity_fails = false;
		for (auto& a : ivs)
			for (auto& b : ivs)
				for (auto& c : ivs)
					if (overlap_precedes(a, b) && overlap_precedes(b, c) && !overlap_precedes(a, c))
						transitivity_fails = true;
		REQUIRE(transitivity_fails);
		// one concrete witness
		REQUIRE(overlap_precedes({0, 1}, {1, 2}));
		REQUIRE(overlap_precedes({1, 2}, {2, 3}));
		REQUIRE_FALSE(overlap_precedes({0, 1}, {2, 3}));
	}
}

TEST_CASE("lexicographic order") {
	REQUIRE(lex_precedes({0, 1}, {0, 3}));
	REQUIRE(lex_precedes({0, 3}, {1, 2}));

	SECTION("total order for l <= 6") {
		for (int l = 0; l <= 6; ++l) {
			auto ivs = all_intervals(l);
			for (auto& a : ivs)
				for (auto& b : ivs) {
					REQUIRE((lex_precedes(a, b) || lex_precedes(b, a)));
					if (lex_precedes(a, b) && lex_precedes(b, a)) REQUIRE(a == b);
					for (auto& c : ivs)
						if (lex_precedes(a, b) && lex_precedes(b, c)) REQUIRE(lex_precedes(a, c));
				}
		}
	}

	SECTION("overlap relation is compatible with lex order, l <= 6") {
		for (int l = 0; l <= 6; ++l)
			for (auto& a : all_intervals(l))
				for (auto& b : all_intervals(l))
					if (overlap_precedes(a, b)) REQUIRE(lex_precedes(a, b));
	}
}

TEST_CASE("strict nesting") {
	REQUIRE(strictly_nested({1, 4}, {2, 3}));
	REQUIRE_FALSE(strictly_nested({0, 3}, {0, 1})); // equal starts never nest

	SECTION("intersecting pairs: nested iff unrelated by overlap, l <= 6") {
		for (int l = 0; l <= 6; ++l)
			for (auto& a : all_intervals(l))
				for (auto& b : all_intervals(l)) {
					if (!intervals_intersect(a, b) || a == b) continue;
					bool unrelated = !overlap_precedes(a, b) && !overlap_precedes(b, a);
					bool nested = strictly_nested(a, b) || strictly_nested(b, a);
					REQUIRE(unrelated == nested);
				}
	}
}

TEST_CASE("barcode multiset") {
	barcode bc;
	bc.add({0, 3});
	bc.add({0, 1});
	bc.add({1, 3});
	REQUIRE(bc.total() == 3);
	REQUIRE(bc.dim_at(0) == 2);
	REQUIRE(bc.dim_at(1) == 3);
	REQUIRE(bc.dim_at(2) == 2);
	REQUIRE(bc.dim_at(3) == 2);
	REQUIRE(bc.multiplicity({2, 2}) == 0);
	REQUIRE_THROWS(bc.add({0, 0}, 0));
}
