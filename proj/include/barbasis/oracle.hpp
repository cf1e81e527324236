#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reduction.hpp"

namespace barbasis {

/* **************************************************************************
 * Rank invariant oracle
 * *************************************************************************/

// r(a,b) = rank of the composite map V_a -> V_b, with r(a,a) = n_a. Computed
// from exact matrix products only; shares nothing with the reduction engine.
struct rank_table {
	int length = 0;
	std::map<std::pair<int, int>, index_t> r;

	index_t at(int a, int b) const {
		if (a < 0 || b > length || a > b) return 0;
		return r.at({a, b});
	}
};

template <class F>
rank_table compute_rank_table(const persistence_module<F>& m) {
	if (auto err = validate(m)) throw std::invalid_argument("rank_table: " + *err);
	int l = m.length();
	rank_table t;
	t.length = l;
	for (int a = 0; a <= l; ++a) {
		t.r[{a, a}] = m.dims[static_cast<std::size_t>(a)];
		matrix<F> prod = matrix<F>::identity(m.field, m.dims[static_cast<std::size_t>(a)]);
		for (int b = a + 1; b <= l; ++b) {
			prod = m.maps[static_cast<std::size_t>(b - 1)] * prod;
			t.r[{a, b}] = rank(prod);
		}
	}
	return t;
}

// Inclusion-exclusion on the rank invariant:
// d_{i,j} = r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1), out-of-range terms 0.
template <class F>
barcode barcode_via_ranks(const persistence_module<F>& m) {
	auto t = compute_rank_table(m);
	int l = m.length();
	barcode bc;
	for (int i = 0; i <= l; ++i)
		for (int j = i; j <= l; ++j) {
			index_t d = t.at(i, j) - t.at(i - 1, j) - t.at(i, j + 1) + t.at(i - 1, j + 1);
			if (d < 0)
				throw std::logic_error("barcode_via_ranks: negative multiplicity at [" +
				                       std::to_string(i) + "," + std::to_string(j) + "]");
			if (d > 0) bc.add({i, j}, static_cast<int>(d));
		}
	return bc;
}

/* **************************************************************************
 * Deterministic generators
 * *************************************************************************/

// splitmix64; all generators are pure functions of their seed.
class rng {
	std::uint64_t s_;

public:
	explicit rng(std::uint64_t seed) : s_(seed) {}

	std::uint64_t next() {
		std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
		return z ^ (z >> 31);
	}

	// uniform in [0, n)
	std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

	int range(int lo, int hi) { // inclusive
		return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
	}

	bool flip() { return (next() & 1) != 0; }
};

template <class F>
typename F::element random_scalar(const F& field, rng& r) {
	if (field.characteristic() > 0) return field.from_int(static_cast<std::int64_t>(
	    r.below(static_cast<std::uint64_t>(field.characteristic()))));
	// small rationals keep products readable
	auto num = field.from_int(r.range(-3, 3));
	auto den = field.from_int(r.range(1, 3));
	return field.div(num, den);
}

template <class F>
typename F::element random_nonzero_scalar(const F& field, rng& r) {
	while (true) {
		auto v = random_scalar(field, r);
		if (!field.is_zero(v)) return v;
	}
}

template <class F>
matrix<F> random_matrix(const F& field, rng& r, index_t rows, index_t cols) {
	matrix<F> m(field, rows, cols);
	for (index_t i = 0; i < rows; ++i)
		for (index_t j = 0; j < cols; ++j) m(i, j) = random_scalar(field, r);
	return m;
}

template <class F>
persistence_module<F> random_module(const F& field, std::uint64_t seed, int max_length,
                                    index_t max_dim) {
	if (max_length < 0 || max_dim < 1) throw std::invalid_argument("random_module: bad bounds");
	rng r(seed);
	int l = r.range(0, max_length);
	persistence_module<F> m{field, {}, {}};
	for (int k = 0; k <= l; ++k) m.dims.push_back(r.range(0, static_cast<int>(max_dim)));
	for (int i = 1; i <= l; ++i)
		m.maps.push_back(random_matrix(field, r, m.dims[static_cast<std::size_t>(i)],
		                               m.dims[static_cast<std::size_t>(i - 1)]));
	return m;
}

template <class F>
zigzag_module<F> random_zigzag(const F& field, std::uint64_t seed, int max_length,
                               index_t max_dim) {
	if (max_length < 0 || max_dim < 1) throw std::invalid_argument("random_zigzag: bad bounds");
	rng r(seed);
	int l = r.range(0, max_length);
	zigzag_module<F> m{field, {}, {}, {}};
	for (int k = 0; k <= l; ++k) m.dims.push_back(r.range(0, static_cast<int>(max_dim)));
	for (int i = 0; i < l; ++i) m.type.backward.push_back(r.flip());
	for (int i = 1; i <= l; ++i) {
		index_t rows = m.type.is_backward(i - 1) ? m.dims[static_cast<std::size_t>(i - 1)]
		                                         : m.dims[static_cast<std::size_t>(i)];
		index_t cols = m.type.is_backward(i - 1) ? m.dims[static_cast<std::size_t>(i)]
		                                         : m.dims[static_cast<std::size_t>(i - 1)];
		m.maps.push_back(random_matrix(field, r, rows, cols));
	}
	return m;
}

// Invertible by construction: a product of random elementary, scaling and
// permutation factors at each level.
template <class F>
basis_change<F> random_basis_change(const F& field, std::uint64_t seed,
                                    const std::vector<index_t>& dims) {
	rng r(seed);
	auto g = basis_change<F>::identities(field, dims);
	for (std::size_t k = 0; k < dims.size(); ++k) {
		index_t n = dims[k];
		if (n == 0) continue;
		auto& c = g.comps[k];
		int steps = r.range(static_cast<int>(n), 3 * static_cast<int>(n));
		for (int s = 0; s < steps; ++s) {
			switch (r.below(3)) {
			case 0: {
				index_t p = r.range(0, static_cast<int>(n) - 1);
				index_t q = r.range(0, static_cast<int>(n) - 1);
				if (p != q) c.add_row_multiple(p, q, random_scalar(field, r));
				break;
			}
			case 1: {
				c.swap_rows(r.range(0, static_cast<int>(n) - 1), r.range(0, static_cast<int>(n) - 1));
				break;
			}
			default:
				c.scale_row(r.range(0, static_cast<int>(n) - 1), random_nonzero_scalar(field, r));
			}
		}
	}
	return g;
}

template <class F>
barcode random_barcode(const F&, std::uint64_t seed, int l, int max_mult, int max_bars) {
	rng r(seed);
	barcode bc;
	int bars = r.range(1, max_bars);
	for (int b = 0; b < bars; ++b) {
		int i = r.range(0, l);
		int j = r.range(i, l);
		int already = bc.multiplicity({i, j});
		if (already >= max_mult) continue;
		bc.add({i, j}, r.range(1, max_mult - already));
	}
	return bc;
}

/* **************************************************************************
 * Reduction certificates
 * *************************************************************************/

struct violation {
	std::string what;
	int index = -1;
};

// Checks the conjugation identity, the (zigzag) barcode form of the output,
// the invertibility of every component, and the dimension census of the
// extracted barcode. Direction-aware when a type is given.
template <class F>
std::optional<violation> verify_reduction(const std::vector<index_t>& dims,
                                          const std::vector<matrix<F>>& original,
                                          const reduction_result<F>& res,
                                          const std::optional<zigzag_type>& type = std::nullopt) {
	zigzag_type t = type ? *type : zigzag_type::all_forward(static_cast<int>(original.size()));
	for (std::size_t k = 0; k < res.change.comps.size(); ++k) {
		const auto& c = res.change.comps[k];
		const auto& ci = res.change_inverse.comps[k];
		if (c * ci != matrix<F>::identity(c.field(), c.rows()))
			return violation{"basis change component not certified invertible", static_cast<int>(k)};
	}
	std::vector<matrix<F>> conj;
	try {
		conj = apply_basis_change(res.change, original, t);
	} catch (const std::exception& e) {
		return violation{std::string("conjugation failed: ") + e.what(), -1};
	}
	for (std::size_t i = 0; i < conj.size(); ++i) {
		if (conj[i] != res.reduced[i])
			return violation{"conjugation identity fails", static_cast<int>(i) + 1};
		bool ok = t.is_backward(static_cast<int>(i)) ? is_reversed_barcode_form(res.reduced[i])
		                                             : is_barcode_form(res.reduced[i]);
		if (!ok) return violation{"reduced matrix not in (zigzag) barcode form", static_cast<int>(i) + 1};
	}
	barcode bc = type ? extract_barcode(dims, res.reduced, t) : extract_barcode(dims, res.reduced);
	if (!barcode_census_holds(bc, dims)) return violation{"barcode census fails", -1};
	return std::nullopt;
}

} // namespace barbasis
