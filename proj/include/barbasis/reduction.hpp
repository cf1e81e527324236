#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "module.hpp"

namespace barbasis {

struct op_count {
	std::uint64_t elementary_ops = 0;
	std::uint64_t scalar_muls = 0;
};

enum class op_kind { add, swap, scale };

// One elementary basis change at a single level, recorded for --emit-trace.
struct trace_entry {
	op_kind kind;
	int level;
	index_t p, q;
	std::string lambda;
};

template <class F>
struct reduction_result {
	std::vector<matrix<F>> reduced;
	basis_change<F> change;
	basis_change<F> change_inverse; // componentwise inverses, maintained exactly
	op_count ops;
	std::vector<trace_entry> trace;
};

namespace detail {

// Shared bookkeeping for the reduction algorithms. Matrices are reduced in
// place while the basis change (and its certified inverse) accumulate one
// elementary factor at a time, so the conjugation identity holds after every
// step by construction. Only the first `active` matrices are ever touched.
template <class F>
class reducer_state {
public:
	F field;
	std::vector<index_t> dims;
	zigzag_type type;
	std::vector<matrix<F>> maps;
	basis_change<F> g, g_inv;
	int active = 0;
	op_count ops;
	std::vector<trace_entry>* trace = nullptr;

	reducer_state(F fd, std::vector<index_t> d, zigzag_type t, std::vector<matrix<F>> m)
	    : field(std::move(fd)), dims(std::move(d)), type(std::move(t)), maps(std::move(m)),
	      g(basis_change<F>::identities(field, dims)),
	      g_inv(basis_change<F>::identities(field, dims)) {}

	int length() const { return static_cast<int>(dims.size()) - 1; }
	matrix<F>& last_active() { return maps[static_cast<std::size_t>(active - 1)]; }

private:
	void record(op_kind k, int level, index_t p, index_t q, const typename F::element& lam) {
		if (trace) trace->push_back({k, level, p, q, field.str(lam)});
	}

	void count_op(index_t muls) {
		ops.elementary_ops += 1;
		ops.scalar_muls += static_cast<std::uint64_t>(muls);
	}

	// The matrices adjacent to level m: the one whose row space is V_m gets
	// on_rows, the one whose column space is V_m gets on_cols.
	template <class RowOp, class ColOp>
	void touch_neighbours(int m, RowOp&& on_rows, ColOp&& on_cols) {
		if (m >= 1 && m - 1 < active) {
			auto& a = maps[static_cast<std::size_t>(m - 1)];
			type.is_backward(m - 1) ? on_cols(a) : on_rows(a);
		}
		if (m < active) {
			auto& a = maps[static_cast<std::size_t>(m)];
			type.is_backward(m) ? on_rows(a) : on_cols(a);
		}
	}

public:
	// Basis change e_{p,q}(lambda) at level m: Row(p) += lambda Row(q) on a
	// matrix indexed by V_m on rows, Col(q) -= lambda Col(p) on one indexed
	// by V_m on columns.
	void elem_add(int m, index_t p, index_t q, const typename F::element& lambda) {
		if (field.is_zero(lambda)) return;
		g.comps[static_cast<std::size_t>(m)].add_row_multiple(p, q, lambda);
		g_inv.comps[static_cast<std::size_t>(m)].add_col_multiple(q, p, field.neg(lambda));
		record(op_kind::add, m, p, q, lambda);
		touch_neighbours(
		    m,
		    [&](matrix<F>& a) {
			    a.add_row_multiple(p, q, lambda);
			    count_op(a.cols());
		    },
		    [&](matrix<F>& a) {
			    a.add_col_multiple(q, p, field.neg(lambda));
			    count_op(a.rows());
		    });
	}

	// Basis change swapping coordinates p and q at level m.
	void elem_swap(int m, index_t p, index_t q) {
		if (p == q) return;
		g.comps[static_cast<std::size_t>(m)].swap_rows(p, q);
		g_inv.comps[static_cast<std::size_t>(m)].swap_cols(p, q);
		record(op_kind::swap, m, p, q, field.zero());
		touch_neighbours(
		    m,
		    [&](matrix<F>& a) {
			    a.swap_rows(p, q);
			    count_op(0);
		    },
		    [&](matrix<F>& a) {
			    a.swap_cols(p, q);
			    count_op(0);
		    });
	}

	// Basis change scaling coordinate p by s at level m.
	void elem_scale(int m, index_t p, const typename F::element& s) {
		if (field.is_one(s)) return;
		auto si = field.inv(s);
		g.comps[static_cast<std::size_t>(m)].scale_row(p, s);
		g_inv.comps[static_cast<std::size_t>(m)].scale_col(p, si);
		record(op_kind::scale, m, p, p, s);
		touch_neighbours(
		    m,
		    [&](matrix<F>& a) {
			    a.scale_row(p, s);
			    count_op(a.cols());
		    },
		    [&](matrix<F>& a) {
			    a.scale_col(p, si);
			    count_op(a.rows());
		    });
	}

	// Brings the next original matrix into the active prefix, rewritten in
	// the current basis of its tail level.
	void activate_next() {
		int i = active; // maps[i] sits between levels i and i+1
		auto& a = maps[static_cast<std::size_t>(i)];
		if (type.is_backward(i))
			a = g.comps[static_cast<std::size_t>(i)] * a;
		else
			a = a * g_inv.comps[static_cast<std::size_t>(i)];
		++active;
	}

	// Row-reduce the last active (forward) matrix to reduced row echelon form
	// with basis changes at its head level; returns the pivot columns.
	std::vector<index_t> rref_last() {
		int m = active;
		auto& a = last_active();
		std::vector<index_t> pivots;
		index_t pr = 0;
		for (index_t c = 0; c < a.cols() && pr < a.rows(); ++c) {
			index_t sel = -1;
			for (index_t i = pr; i < a.rows(); ++i)
				if (!field.is_zero(a(i, c))) {
					sel = i;
					break;
				}
			if (sel < 0) continue;
			elem_swap(m, sel, pr);
			if (!field.is_one(a(pr, c))) elem_scale(m, pr, field.inv(a(pr, c)));
			for (index_t i = 0; i < a.rows(); ++i)
				if (i != pr && !field.is_zero(a(i, c))) elem_add(m, i, pr, field.neg(a(i, c)));
			pivots.push_back(c);
			++pr;
		}
		return pivots;
	}

	// Column-reduce the last active (backward) matrix to reversed reduced
	// column echelon form, working from the last row upward; returns the
	// pivot rows of the trailing pivot columns.
	std::vector<index_t> reversed_echelon_last() {
		int m = active;
		auto& a = last_active();
		index_t cursor = a.cols() - 1;
		std::vector<index_t> pivot_rows_rev;
		for (index_t row = a.rows() - 1; row >= 0 && cursor >= 0; --row) {
			index_t sel = -1;
			for (index_t j = cursor; j >= 0; --j)
				if (!field.is_zero(a(row, j))) {
					sel = j;
					break;
				}
			if (sel < 0) continue;
			elem_swap(m, sel, cursor);
			if (!field.is_one(a(row, cursor))) elem_scale(m, cursor, a(row, cursor));
			for (index_t j = 0; j < a.cols(); ++j)
				if (j != cursor && !field.is_zero(a(row, j))) elem_add(m, cursor, j, a(row, j));
			pivot_rows_rev.push_back(row);
			--cursor;
		}
		return {pivot_rows_rev.rbegin(), pivot_rows_rev.rend()};
	}
};

template <class F>
void cascade_backward(reducer_state<F>& st, int k, index_t s, index_t r, index_t q);

// Forward cascade: zero out entry (r, p) of active matrix k (0-based, sitting
// between levels k and k+1) whose row r holds a pivot 1 in column q < p. Each
// step is the basis change e_{q,p}(alpha) at the tail level, which performs
// the column operation here and the compensating operation on the previous
// matrix; if that matrix picks up an off-pivot entry the cascade continues.
template <class F>
void cascade_forward(reducer_state<F>& st, int k, index_t r, index_t q, index_t p) {
	const F& fd = st.field;
	while (true) {
		auto& a = st.maps[static_cast<std::size_t>(k)];
		auto alpha = a(r, p);
		if (fd.is_zero(alpha)) return;
		st.elem_add(k, q, p, alpha);
		if (k == 0) return;
		auto& prev = st.maps[static_cast<std::size_t>(k - 1)];
		if (!st.type.is_backward(k - 1)) {
			// row q of prev received Row(q) += alpha Row(p)
			index_t c1 = -1, c2 = -1;
			for (index_t j = 0; j < prev.cols(); ++j)
				if (!fd.is_zero(prev(q, j))) (c1 < 0 ? c1 : c2) = j;
			if (c2 < 0) return; // row p of prev was zero
			--k;
			r = q;
			q = c1;
			p = c2;
		} else {
			// column p of prev received Col(p) -= alpha Col(q)
			index_t s1 = -1, s2 = -1;
			for (index_t i = 0; i < prev.rows(); ++i)
				if (!fd.is_zero(prev(i, p))) (s1 < 0 ? s1 : s2) = i;
			if (s2 < 0) return; // column q of prev was zero
			cascade_backward(st, k - 1, s1, s2, p);
			return;
		}
	}
}

// Backward cascade: zero out entry (s, q) of active matrix k (a backward
// matrix) whose column q holds a pivot 1 in row r > s. Each step is the basis
// change e_{s,r}(-alpha) at the tail level.
template <class F>
void cascade_backward(reducer_state<F>& st, int k, index_t s, index_t r, index_t q) {
	const F& fd = st.field;
	while (true) {
		auto& a = st.maps[static_cast<std::size_t>(k)];
		auto alpha = a(s, q);
		if (fd.is_zero(alpha)) return;
		st.elem_add(k, s, r, fd.neg(alpha));
		if (k == 0) return;
		auto& prev = st.maps[static_cast<std::size_t>(k - 1)];
		if (!st.type.is_backward(k - 1)) {
			// row s of prev received Row(s) -= alpha Row(r)
			index_t c1 = -1, c2 = -1;
			for (index_t j = 0; j < prev.cols(); ++j)
				if (!fd.is_zero(prev(s, j))) (c1 < 0 ? c1 : c2) = j;
			if (c2 < 0) return; // row r of prev was zero
			cascade_forward(st, k - 1, s, c1, c2);
			return;
		} else {
			// column r of prev received Col(r) += alpha Col(s)
			index_t s1 = -1, s2 = -1;
			for (index_t i = 0; i < prev.rows(); ++i)
				if (!fd.is_zero(prev(i, r))) (s1 < 0 ? s1 : s2) = i;
			if (s2 < 0) return; // column s of prev was zero
			--k;
			s = s1;
			q = r;
			r = s2;
		}
	}
}

// Reduce the last active matrix to barcode form while keeping every earlier
// matrix in form: row reduce, then clear off-pivot entries row by row.
template <class F>
void reduce_last_forward(reducer_state<F>& st) {
	auto pivots = st.rref_last();
	const F& fd = st.field;
	while (true) {
		auto& a = st.last_active();
		index_t fr = -1, fq = -1, fp = -1;
		for (index_t r = 0; r < static_cast<index_t>(pivots.size()) && fr < 0; ++r)
			for (index_t p = 0; p < a.cols(); ++p)
				if (p != pivots[static_cast<std::size_t>(r)] && !fd.is_zero(a(r, p))) {
					fr = r;
					fq = pivots[static_cast<std::size_t>(r)];
					fp = p;
					break;
				}
		if (fr < 0) break;
		cascade_forward(st, st.active - 1, fr, fq, fp);
	}
}

// Backward analogue: reversed column echelon, then clear the entries above
// each pivot column by column.
template <class F>
void reduce_last_backward(reducer_state<F>& st) {
	auto pivot_rows = st.reversed_echelon_last();
	const F& fd = st.field;
	while (true) {
		auto& a = st.last_active();
		index_t nposn = static_cast<index_t>(pivot_rows.size());
		index_t fs = -1, fr = -1, fq = -1;
		for (index_t t = 0; t < nposn && fs < 0; ++t) {
			index_t col = a.cols() - nposn + t;
			index_t pr = pivot_rows[static_cast<std::size_t>(t)];
			for (index_t i = 0; i < pr; ++i)
				if (!fd.is_zero(a(i, col))) {
					fs = i;
					fr = pr;
					fq = col;
					break;
				}
		}
		if (fs < 0) break;
		cascade_backward(st, st.active - 1, fs, fr, fq);
	}
}

} // namespace detail

/* **************************************************************************
 * Main reduction drivers
 * *************************************************************************/

// Reduce a persistence module to barcode form, growing the reduced prefix one
// matrix at a time, and return the certified change of basis.
template <class F>
reduction_result<F> compute_barcode_basis(const persistence_module<F>& m,
                                          bool collect_trace = false) {
	if (auto err = validate(m)) throw std::invalid_argument("compute_barcode_basis: " + *err);
	detail::reducer_state<F> st(m.field, m.dims, zigzag_type::all_forward(m.length()), m.maps);
	std::vector<trace_entry> trace;
	if (collect_trace) st.trace = &trace;
	int l = m.length();
	if (l > 0) {
		st.active = 1;
		for (int i = 1; i <= l; ++i) {
			detail::reduce_last_forward(st);
			if (i < l) st.activate_next();
		}
	}
	return {std::move(st.maps), std::move(st.g), std::move(st.g_inv), st.ops, std::move(trace)};
}

// Zigzag analogue: the last matrix is row reduced or put in reversed column
// echelon form depending on its arrow, and the cascades dispatch on the
// directions of consecutive arrows.
template <class F>
reduction_result<F> compute_barcode_basis(const zigzag_module<F>& m, bool collect_trace = false) {
	if (auto err = validate(m)) throw std::invalid_argument("compute_barcode_basis: " + *err);
	detail::reducer_state<F> st(m.field, m.dims, m.type, m.maps);
	std::vector<trace_entry> trace;
	if (collect_trace) st.trace = &trace;
	int l = m.length();
	if (l > 0) {
		st.active = 1;
		for (int i = 1; i <= l; ++i) {
			if (st.type.is_backward(st.active - 1))
				detail::reduce_last_backward(st);
			else
				detail::reduce_last_forward(st);
			if (i < l) st.activate_next();
		}
	}
	return {std::move(st.maps), std::move(st.g), std::move(st.g_inv), st.ops, std::move(trace)};
}

template <class F>
bool all_barcode_form(const std::vector<matrix<F>>& maps) {
	for (const auto& a : maps)
		if (!is_barcode_form(a)) return false;
	return true;
}

template <class F>
bool all_zigzag_barcode_form(const std::vector<matrix<F>>& maps, const zigzag_type& type) {
	for (std::size_t i = 0; i < maps.size(); ++i)
		if (type.is_backward(static_cast<int>(i)) ? !is_reversed_barcode_form(maps[i])
		                                          : !is_barcode_form(maps[i]))
			return false;
	return true;
}

} // namespace barbasis
