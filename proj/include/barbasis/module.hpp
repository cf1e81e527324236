#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "intervals.hpp"
#include "matrix.hpp"
#include "zigzag_order.hpp"

namespace barbasis {

// A persistence module presented as matrices: dims (n_0..n_l) and maps
// A_1..A_l where A_i is n_i x n_{i-1}. maps[i] stores A_{i+1}.
template <class F>
struct persistence_module {
	F field;
	std::vector<index_t> dims;
	std::vector<matrix<F>> maps;

	int length() const { return static_cast<int>(dims.size()) - 1; }
};

// A zigzag module: same data plus the arrow directions. A forward A_i is
// n_i x n_{i-1}, a backward A_i is n_{i-1} x n_i.
template <class F>
struct zigzag_module {
	F field;
	std::vector<index_t> dims;
	zigzag_type type;
	std::vector<matrix<F>> maps;

	int length() const { return static_cast<int>(dims.size()) - 1; }
};

template <class F>
std::optional<std::string> validate(const persistence_module<F>& m) {
	if (m.dims.empty()) return "dims must contain at least n_0";
	for (index_t n : m.dims)
		if (n < 0) return "negative dimension";
	if (static_cast<int>(m.maps.size()) != m.length())
		return "expected " + std::to_string(m.length()) + " matrices, got " +
		       std::to_string(m.maps.size());
	for (int i = 0; i < m.length(); ++i) {
		if (m.maps[i].rows() != m.dims[i + 1])
			return "A_" + std::to_string(i + 1) + " row count != n_" + std::to_string(i + 1);
		if (m.maps[i].cols() != m.dims[i])
			return "A_" + std::to_string(i + 1) + " column count != n_" + std::to_string(i);
	}
	return std::nullopt;
}

template <class F>
std::optional<std::string> validate(const zigzag_module<F>& m) {
	if (m.dims.empty()) return "dims must contain at least n_0";
	for (index_t n : m.dims)
		if (n < 0) return "negative dimension";
	if (m.type.length() != m.length())
		return "type length != module length";
	if (static_cast<int>(m.maps.size()) != m.length())
		return "expected " + std::to_string(m.length()) + " matrices, got " +
		       std::to_string(m.maps.size());
	for (int i = 0; i < m.length(); ++i) {
		index_t r = m.type.is_backward(i) ? m.dims[i] : m.dims[i + 1];
		index_t c = m.type.is_backward(i) ? m.dims[i + 1] : m.dims[i];
		if (m.maps[i].rows() != r || m.maps[i].cols() != c)
			return "A_" + std::to_string(i + 1) + " has shape " + std::to_string(m.maps[i].rows()) +
			       "x" + std::to_string(m.maps[i].cols()) + ", expected " + std::to_string(r) + "x" +
			       std::to_string(c);
	}
	return std::nullopt;
}

/* **************************************************************************
 * The change-of-basis group
 * *************************************************************************/

// One invertible matrix per level.
template <class F>
struct basis_change {
	std::vector<matrix<F>> comps;

	static basis_change identities(const F& field, const std::vector<index_t>& dims) {
		basis_change g;
		g.comps.reserve(dims.size());
		for (index_t n : dims) g.comps.push_back(matrix<F>::identity(field, n));
		return g;
	}

	bool all_invertible() const {
		for (const auto& c : comps)
			if (!is_invertible(c)) return false;
		return true;
	}

	basis_change inverse_components() const {
		basis_change g;
		g.comps.reserve(comps.size());
		for (const auto& c : comps) g.comps.push_back(::barbasis::inverse(c));
		return g;
	}

	// componentwise product (g*h)_k = g_k h_k
	friend basis_change operator*(const basis_change& g, const basis_change& h) {
		if (g.comps.size() != h.comps.size())
			throw std::invalid_argument("basis_change product: length mismatch");
		basis_change r;
		r.comps.reserve(g.comps.size());
		for (std::size_t k = 0; k < g.comps.size(); ++k) r.comps.push_back(g.comps[k] * h.comps[k]);
		return r;
	}

	friend bool operator==(const basis_change& a, const basis_change& b) {
		return a.comps == b.comps;
	}
};

// (gA)_i = g_i A_i g_{i-1}^{-1}
template <class F>
std::vector<matrix<F>> apply_basis_change(const basis_change<F>& g,
                                          const std::vector<matrix<F>>& maps) {
	if (g.comps.size() != maps.size() + 1)
		throw std::invalid_argument("apply_basis_change: need one component per level");
	std::vector<matrix<F>> out;
	out.reserve(maps.size());
	for (std::size_t i = 0; i < maps.size(); ++i)
		out.push_back(g.comps[i + 1] * maps[i] * inverse(g.comps[i]));
	return out;
}

// Forward arrows conjugate as g_i A_i g_{i-1}^{-1}, backward ones as
// g_{i-1} A_i g_i^{-1}.
template <class F>
std::vector<matrix<F>> apply_basis_change(const basis_change<F>& g,
                                          const std::vector<matrix<F>>& maps,
                                          const zigzag_type& type) {
	if (g.comps.size() != maps.size() + 1)
		throw std::invalid_argument("apply_basis_change: need one component per level");
	if (type.length() != static_cast<int>(maps.size()))
		throw std::invalid_argument("apply_basis_change: type length mismatch");
	std::vector<matrix<F>> out;
	out.reserve(maps.size());
	for (std::size_t i = 0; i < maps.size(); ++i) {
		if (type.is_backward(static_cast<int>(i)))
			out.push_back(g.comps[i] * maps[i] * inverse(g.comps[i + 1]));
		else
			out.push_back(g.comps[i + 1] * maps[i] * inverse(g.comps[i]));
	}
	return out;
}

/* **************************************************************************
 * Bar chains of a (zigzag) barcode-form sequence
 * *************************************************************************/

// One bar of the decomposition together with the basis index it occupies at
// every level it lives through: pos[k - bar.start] is the index in V_k.
struct bar_chain {
	interval bar;
	std::vector<index_t> pos;

	index_t pos_at(int k) const { return pos.at(static_cast<std::size_t>(k - bar.start)); }
};

namespace detail {

// Column j of a barcode-form matrix either is zero or carries a single 1;
// returns the row of that 1, or -1.
template <class F>
index_t nonzero_row_in_col(const matrix<F>& m, index_t j) {
	for (index_t i = 0; i < m.rows(); ++i)
		if (!m.field().is_zero(m(i, j))) return i;
	return -1;
}

template <class F>
index_t nonzero_col_in_row(const matrix<F>& m, index_t i) {
	for (index_t j = 0; j < m.cols(); ++j)
		if (!m.field().is_zero(m(i, j))) return j;
	return -1;
}

} // namespace detail

// Trace pivot chains of a barcode-form sequence. maps[i] is A_{i+1} with the
// given dims; every matrix must pass is_barcode_form.
template <class F>
std::vector<bar_chain> trace_chains(const std::vector<index_t>& dims,
                                    const std::vector<matrix<F>>& maps) {
	int l = static_cast<int>(dims.size()) - 1;
	for (const auto& m : maps)
		if (!is_barcode_form(m)) throw std::invalid_argument("trace_chains: matrix not in barcode form");
	std::vector<bar_chain> chains;
	for (int k = 0; k <= l; ++k) {
		for (index_t v = 0; v < dims[static_cast<std::size_t>(k)]; ++v) {
			bool born = (k == 0) || maps[static_cast<std::size_t>(k - 1)].row_is_zero(v);
			if (!born) continue;
			bar_chain c;
			c.bar.start = k;
			c.pos.push_back(v);
			int j = k;
			index_t cur = v;
			while (j < l) {
				index_t next = detail::nonzero_row_in_col(maps[static_cast<std::size_t>(j)], cur);
				if (next < 0) break;
				cur = next;
				c.pos.push_back(cur);
				++j;
			}
			c.bar.end = j;
			chains.push_back(std::move(c));
		}
	}
	return chains;
}

// Zigzag version: forward matrices are in barcode form and map columns to
// pivot rows, backward matrices are in reversed barcode form and map rows to
// pivot columns.
template <class F>
std::vector<bar_chain> trace_chains(const std::vector<index_t>& dims,
                                    const std::vector<matrix<F>>& maps, const zigzag_type& type) {
	int l = static_cast<int>(dims.size()) - 1;
	for (int i = 0; i < l; ++i) {
		const auto& m = maps[static_cast<std::size_t>(i)];
		if (type.is_backward(i) ? !is_reversed_barcode_form(m) : !is_barcode_form(m))
			throw std::invalid_argument("trace_chains: matrix " + std::to_string(i + 1) +
			                            " not in zigzag barcode form");
	}
	std::vector<bar_chain> chains;
	for (int k = 0; k <= l; ++k) {
		for (index_t v = 0; v < dims[static_cast<std::size_t>(k)]; ++v) {
			bool born;
			if (k == 0)
				born = true;
			else if (type.is_backward(k - 1))
				born = maps[static_cast<std::size_t>(k - 1)].col_is_zero(v);
			else
				born = maps[static_cast<std::size_t>(k - 1)].row_is_zero(v);
			if (!born) continue;
			bar_chain c;
			c.bar.start = k;
			c.pos.push_back(v);
			int j = k;
			index_t cur = v;
			while (j < l) {
				const auto& m = maps[static_cast<std::size_t>(j)];
				index_t next = type.is_backward(j) ? detail::nonzero_col_in_row(m, cur)
				                                   : detail::nonzero_row_in_col(m, cur);
				if (next < 0) break;
				cur = next;
				c.pos.push_back(cur);
				++j;
			}
			c.bar.end = j;
			chains.push_back(std::move(c));
		}
	}
	return chains;
}

inline barcode barcode_from_chains(const std::vector<bar_chain>& chains) {
	barcode bc;
	for (const auto& c : chains) bc.add(c.bar);
	return bc;
}

// Barcode of a sequence already in barcode form.
template <class F>
barcode extract_barcode(const std::vector<index_t>& dims, const std::vector<matrix<F>>& maps) {
	return barcode_from_chains(trace_chains(dims, maps));
}

template <class F>
barcode extract_barcode(const persistence_module<F>& m) {
	return extract_barcode(m.dims, m.maps);
}

template <class F>
barcode extract_barcode(const std::vector<index_t>& dims, const std::vector<matrix<F>>& maps,
                        const zigzag_type& type) {
	return barcode_from_chains(trace_chains(dims, maps, type));
}

template <class F>
barcode extract_barcode(const zigzag_module<F>& m) {
	return extract_barcode(m.dims, m.maps, m.type);
}

// Sum over bars through k of their multiplicity must equal dims[k].
inline bool barcode_census_holds(const barcode& bc, const std::vector<index_t>& dims) {
	for (std::size_t k = 0; k < dims.size(); ++k)
		if (bc.dim_at(static_cast<int>(k)) != dims[k]) return false;
	return true;
}

/* **************************************************************************
 * Canonical ordered matrices of a barcode
 * *************************************************************************/

namespace detail {

// Level-by-level positions of the bars sorted by the given total order.
// bars_sorted lists distinct intervals; instances of a bar occupy
// consecutive positions (deterministic tie-break).
struct canonical_layout {
	std::vector<interval> bars;       // one entry per instance, in order
	std::vector<std::vector<index_t>> pos_at_level; // [k][instance] = index or -1
	std::vector<index_t> dims;
};

inline canonical_layout layout_of(const barcode& bc, int l, const bar_order& ord) {
	canonical_layout lay;
	for (const interval& b : ord.sorted_bars(bc))
		for (int c = 0; c < bc.multiplicity(b); ++c) lay.bars.push_back(b);
	lay.pos_at_level.assign(static_cast<std::size_t>(l) + 1, {});
	lay.dims.assign(static_cast<std::size_t>(l) + 1, 0);
	for (int k = 0; k <= l; ++k) {
		auto& row = lay.pos_at_level[static_cast<std::size_t>(k)];
		row.assign(lay.bars.size(), -1);
		index_t next = 0;
		for (std::size_t i = 0; i < lay.bars.size(); ++i)
			if (lay.bars[i].contains(k)) row[i] = next++;
		lay.dims[static_cast<std::size_t>(k)] = next;
	}
	return lay;
}

} // namespace detail

// Block form of the barcode: every matrix links each surviving bar's basis
// vector at level i-1 to its basis vector at level i, bars ordered by the
// total lexicographic order with a fixed tie-break. The result is always in
// barcode form and extract_barcode recovers the input exactly.
template <class F>
persistence_module<F> canonical_matrices(const F& field, const barcode& bc, int l) {
	for (auto& [b, d] : bc.mult)
		if (b.start < 0 || b.end > l)
			throw std::invalid_argument("canonical_matrices: bar " + b.str() + " outside [0," +
			                            std::to_string(l) + "]");
	auto lay = detail::layout_of(bc, l, bar_order::plain());
	persistence_module<F> m{field, lay.dims, {}};
	for (int i = 1; i <= l; ++i) {
		matrix<F> a(field, lay.dims[static_cast<std::size_t>(i)],
		            lay.dims[static_cast<std::size_t>(i - 1)]);
		for (std::size_t b = 0; b < lay.bars.size(); ++b) {
			index_t from = lay.pos_at_level[static_cast<std::size_t>(i - 1)][b];
			index_t to = lay.pos_at_level[static_cast<std::size_t>(i)][b];
			if (from >= 0 && to >= 0) a(to, from) = field.one();
		}
		m.maps.push_back(std::move(a));
	}
	return m;
}

// Zigzag analogue: bars ordered by the type-twisted total order, backward
// matrices link level i to level i-1.
template <class F>
zigzag_module<F> canonical_matrices(const F& field, const barcode& bc, const zigzag_type& type) {
	int l = type.length();
	for (auto& [b, d] : bc.mult)
		if (b.start < 0 || b.end > l)
			throw std::invalid_argument("canonical_matrices: bar " + b.str() + " outside [0," +
			                            std::to_string(l) + "]");
	auto lay = detail::layout_of(bc, l, bar_order(type));
	zigzag_module<F> m{field, lay.dims, type, {}};
	for (int i = 1; i <= l; ++i) {
		bool bwd = type.is_backward(i - 1);
		index_t rows = bwd ? lay.dims[static_cast<std::size_t>(i - 1)] : lay.dims[static_cast<std::size_t>(i)];
		index_t cols = bwd ? lay.dims[static_cast<std::size_t>(i)] : lay.dims[static_cast<std::size_t>(i - 1)];
		matrix<F> a(field, rows, cols);
		for (std::size_t b = 0; b < lay.bars.size(); ++b) {
			index_t at_prev = lay.pos_at_level[static_cast<std::size_t>(i - 1)][b];
			index_t at_cur = lay.pos_at_level[static_cast<std::size_t>(i)][b];
			if (at_prev < 0 || at_cur < 0) continue;
			if (bwd)
				a(at_prev, at_cur) = field.one();
			else
				a(at_cur, at_prev) = field.one();
		}
		m.maps.push_back(std::move(a));
	}
	return m;
}

} // namespace barbasis
