#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fields.hpp"

namespace barbasis {

using index_t = std::ptrdiff_t;

// Dense matrix over an exact field F. Zero rows or columns are permitted; a
// 0 x n or n x 0 matrix represents a map to or from the zero space.
template <class F>
class matrix {
public:
	using field_type = F;
	using element = typename F::element;

private:
	F field_;
	index_t rows_ = 0, cols_ = 0;
	std::vector<element> a_;

	void check(index_t i, index_t j) const {
		if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
			throw std::out_of_range("matrix: index (" + std::to_string(i) + "," + std::to_string(j) +
			                        ") out of " + std::to_string(rows_) + "x" + std::to_string(cols_));
	}

public:
	matrix(F field, index_t rows, index_t cols)
	    : field_(std::move(field)), rows_(rows), cols_(cols),
	      a_(static_cast<std::size_t>(rows * cols), field_.zero()) {
		if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative dimension");
	}

	static matrix identity(F field, index_t n) {
		matrix m(field, n, n);
		for (index_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
		return m;
	}

	const F& field() const { return field_; }
	index_t rows() const { return rows_; }
	index_t cols() const { return cols_; }
	bool empty() const { return rows_ == 0 || cols_ == 0; }

	element& operator()(index_t i, index_t j) {
		check(i, j);
		return a_[static_cast<std::size_t>(i * cols_ + j)];
	}
	const element& operator()(index_t i, index_t j) const {
		check(i, j);
		return a_[static_cast<std::size_t>(i * cols_ + j)];
	}

	bool operator==(const matrix& o) const {
		if (rows_ != o.rows_ || cols_ != o.cols_) return false;
		for (std::size_t k = 0; k < a_.size(); ++k)
			if (!field_.eq(a_[k], o.a_[k])) return false;
		return true;
	}
	bool operator!=(const matrix& o) const { return !(*this == o); }

	bool is_zero() const {
		for (const auto& v : a_)
			if (!field_.is_zero(v)) return false;
		return true;
	}

	bool row_is_zero(index_t i) const {
		for (index_t j = 0; j < cols_; ++j)
			if (!field_.is_zero((*this)(i, j))) return false;
		return true;
	}

	bool col_is_zero(index_t j) const {
		for (index_t i = 0; i < rows_; ++i)
			if (!field_.is_zero((*this)(i, j))) return false;
		return true;
	}

	// Row(p) += lambda * Row(q); left multiplication by e_{p,q}(lambda).
	void add_row_multiple(index_t p, index_t q, const element& lambda) {
		if (p == q) throw std::invalid_argument("add_row_multiple: p == q");
		if (p < 0 || p >= rows_ || q < 0 || q >= rows_)
			throw std::out_of_range("add_row_multiple: row index out of range");
		for (index_t j = 0; j < cols_; ++j)
			(*this)(p, j) = field_.add((*this)(p, j), field_.mul(lambda, (*this)(q, j)));
	}

	// Col(q) += lambda * Col(p); right multiplication by e_{p,q}(lambda).
	void add_col_multiple(index_t q, index_t p, const element& lambda) {
		if (p == q) throw std::invalid_argument("add_col_multiple: p == q");
		if (p < 0 || p >= cols_ || q < 0 || q >= cols_)
			throw std::out_of_range("add_col_multiple: column index out of range");
		for (index_t i = 0; i < rows_; ++i)
			(*this)(i, q) = field_.add((*this)(i, q), field_.mul(lambda, (*this)(i, p)));
	}

	void swap_rows(index_t p, index_t q) {
		for (index_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(q, j));
	}
	void swap_cols(index_t p, index_t q) {
		for (index_t i = 0; i < rows_; ++i) std::swap((*this)(i, p), (*this)(i, q));
	}
	void scale_row(index_t p, const element& s) {
		for (index_t j = 0; j < cols_; ++j) (*this)(p, j) = field_.mul(s, (*this)(p, j));
	}
	void scale_col(index_t q, const element& s) {
		for (index_t i = 0; i < rows_; ++i) (*this)(i, q) = field_.mul(s, (*this)(i, q));
	}

	matrix transpose() const {
		matrix t(field_, cols_, rows_);
		for (index_t i = 0; i < rows_; ++i)
			for (index_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
		return t;
	}

	// (i,j) -> (n-1-j, m-1-i): transpose across the anti-diagonal.
	matrix anti_transpose() const {
		matrix t(field_, cols_, rows_);
		for (index_t i = 0; i < rows_; ++i)
			for (index_t j = 0; j < cols_; ++j) t(cols_ - 1 - j, rows_ - 1 - i) = (*this)(i, j);
		return t;
	}

	friend matrix operator*(const matrix& a, const matrix& b) {
		if (a.cols_ != b.rows_)
			throw std::invalid_argument("matrix product: " + std::to_string(a.rows_) + "x" +
			                            std::to_string(a.cols_) + " times " + std::to_string(b.rows_) +
			                            "x" + std::to_string(b.cols_));
		matrix c(a.field_, a.rows_, b.cols_);
		for (index_t i = 0; i < a.rows_; ++i)
			for (index_t k = 0; k < a.cols_; ++k) {
				if (a.field_.is_zero(a(i, k))) continue;
				for (index_t j = 0; j < b.cols_; ++j)
					c(i, j) = a.field_.add(c(i, j), a.field_.mul(a(i, k), b(k, j)));
			}
		return c;
	}

	std::string str() const {
		std::string s;
		for (index_t i = 0; i < rows_; ++i) {
			for (index_t j = 0; j < cols_; ++j) {
				if (j) s += ' ';
				s += field_.str((*this)(i, j));
			}
			s += '\n';
		}
		return s;
	}
};

// e_{p,q}(lambda): identity with lambda in position (p,q), p != q.
template <class F>
matrix<F> elementary_matrix(const F& field, index_t n, index_t p, index_t q,
                            const typename F::element& lambda) {
	if (p == q) throw std::invalid_argument("elementary_matrix: p == q");
	auto m = matrix<F>::identity(field, n);
	m(p, q) = lambda;
	return m;
}

// Row(p) <- Row(p) + lambda * Row(q), returning a copy.
template <class F>
matrix<F> row_op(matrix<F> m, index_t p, index_t q, const typename F::element& lambda) {
	m.add_row_multiple(p, q, lambda);
	return m;
}

// Col(q) <- Col(q) + lambda * Col(p), returning a copy.
template <class F>
matrix<F> col_op(matrix<F> m, index_t q, index_t p, const typename F::element& lambda) {
	m.add_col_multiple(q, p, lambda);
	return m;
}

/* **************************************************************************
 * Echelon factorizations
 * *************************************************************************/

// Reduced row echelon form: t * m == rref, t invertible.
template <class F>
struct rref_result {
	matrix<F> rref;
	matrix<F> transform;
	std::vector<index_t> pivot_cols;
};

template <class F>
rref_result<F> rref(const matrix<F>& m) {
	const F& fd = m.field();
	matrix<F> r = m;
	matrix<F> t = matrix<F>::identity(fd, m.rows());
	std::vector<index_t> pivots;
	index_t pr = 0;
	for (index_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
		index_t sel = -1;
		for (index_t i = pr; i < m.rows(); ++i)
			if (!fd.is_zero(r(i, c))) {
				sel = i;
				break;
			}
		if (sel < 0) continue;
		if (sel != pr) {
			r.swap_rows(sel, pr);
			t.swap_rows(sel, pr);
		}
		if (!fd.is_one(r(pr, c))) {
			auto s = fd.inv(r(pr, c));
			r.scale_row(pr, s);
			t.scale_row(pr, s);
		}
		for (index_t i = 0; i < m.rows(); ++i) {
			if (i == pr || fd.is_zero(r(i, c))) continue;
			auto lam = fd.neg(r(i, c));
			r.add_row_multiple(i, pr, lam);
			t.add_row_multiple(i, pr, lam);
		}
		pivots.push_back(c);
		++pr;
	}
	return {std::move(r), std::move(t), std::move(pivots)};
}

// Reversed reduced column echelon form: m * s == rce, s invertible. The r
// nonzero columns end up rightmost; each carries a single pivot 1 that is the
// lowest nonzero of its column, pivot rows strictly increasing with the
// column, and every pivot row is zero away from its pivot. Entries above a
// pivot in its column may remain nonzero.
template <class F>
struct reversed_echelon_result {
	matrix<F> echelon;
	matrix<F> transform;
	std::vector<index_t> pivot_rows; // aligned with the last pivot_rows.size() columns
};

template <class F>
reversed_echelon_result<F> reversed_column_echelon(const matrix<F>& m) {
	const F& fd = m.field();
	matrix<F> r = m;
	matrix<F> s = matrix<F>::identity(fd, m.cols());
	index_t cursor = m.cols() - 1;
	std::vector<index_t> pivot_rows_rev;
	for (index_t row = m.rows() - 1; row >= 0 && cursor >= 0; --row) {
		index_t sel = -1;
		for (index_t j = cursor; j >= 0; --j)
			if (!fd.is_zero(r(row, j))) {
				sel = j;
				break;
			}
		if (sel < 0) continue;
		if (sel != cursor) {
			r.swap_cols(sel, cursor);
			s.swap_cols(sel, cursor);
		}
		if (!fd.is_one(r(row, cursor))) {
			auto sc = fd.inv(r(row, cursor));
			r.scale_col(cursor, sc);
			s.scale_col(cursor, sc);
		}
		for (index_t j = 0; j < m.cols(); ++j) {
			if (j == cursor || fd.is_zero(r(row, j))) continue;
			auto lam = fd.neg(r(row, j));
			r.add_col_multiple(j, cursor, lam);
			s.add_col_multiple(j, cursor, lam);
		}
		pivot_rows_rev.push_back(row);
		--cursor;
	}
	std::vector<index_t> pivot_rows(pivot_rows_rev.rbegin(), pivot_rows_rev.rend());
	return {std::move(r), std::move(s), std::move(pivot_rows)};
}

template <class F>
index_t rank(const matrix<F>& m) {
	return static_cast<index_t>(rref(m).pivot_cols.size());
}

template <class F>
matrix<F> inverse(const matrix<F>& m) {
	if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
	auto f = rref(m);
	if (static_cast<index_t>(f.pivot_cols.size()) != m.rows())
		throw std::domain_error("inverse: singular matrix");
	return f.transform;
}

template <class F>
bool is_invertible(const matrix<F>& m) {
	return m.rows() == m.cols() && rank(m) == m.rows();
}

/* **************************************************************************
 * Barcode form predicates
 * *************************************************************************/

// Rank r plus the strictly increasing pivot columns of the first r rows.
struct pivot_profile {
	index_t rank = 0;
	std::vector<index_t> pivot_col;
};

// Nonzero entries are 1s, at most one per row and column, occupying the first
// r rows with strictly increasing pivot columns.
template <class F>
std::optional<pivot_profile> barcode_form_profile(const matrix<F>& m) {
	const F& fd = m.field();
	pivot_profile prof;
	index_t last_col = -1;
	bool seen_zero_row = false;
	for (index_t i = 0; i < m.rows(); ++i) {
		index_t nz = -1;
		for (index_t j = 0; j < m.cols(); ++j) {
			if (fd.is_zero(m(i, j))) continue;
			if (!fd.is_one(m(i, j)) || nz >= 0) return std::nullopt;
			nz = j;
		}
		if (nz < 0) {
			seen_zero_row = true;
			continue;
		}
		if (seen_zero_row || nz <= last_col) return std::nullopt;
		last_col = nz;
		prof.pivot_col.push_back(nz);
	}
	prof.rank = static_cast<index_t>(prof.pivot_col.size());
	// strictly increasing pivots guarantee column uniqueness already
	return prof;
}

template <class F>
bool is_barcode_form(const matrix<F>& m) {
	return barcode_form_profile(m).has_value();
}

template <class F>
matrix<F> matrix_from_profile(const F& field, index_t rows, index_t cols,
                              const pivot_profile& prof) {
	matrix<F> m(field, rows, cols);
	for (index_t i = 0; i < prof.rank; ++i) m(i, prof.pivot_col[i]) = field.one();
	return m;
}

// Rank r plus the strictly increasing pivot rows of the last r columns.
struct reversed_pivot_profile {
	index_t rank = 0;
	std::vector<index_t> pivot_row; // pivot_row[t] belongs to column cols - rank + t
};

// Nonzero entries are 1s, at most one per row and column, occupying the last
// r columns with the pivot row strictly increasing as the column increases.
// The anti-diagonal transpose of a barcode-form matrix always satisfies this.
template <class F>
std::optional<reversed_pivot_profile> reversed_barcode_form_profile(const matrix<F>& m) {
	const F& fd = m.field();
	reversed_pivot_profile prof;
	index_t last_row = -1;
	bool seen_nonzero_col = false;
	std::vector<index_t> rows_rev;
	for (index_t j = 0; j < m.cols(); ++j) {
		index_t nz = -1;
		for (index_t i = 0; i < m.rows(); ++i) {
			if (fd.is_zero(m(i, j))) continue;
			if (!fd.is_one(m(i, j)) || nz >= 0) return std::nullopt;
			nz = i;
		}
		if (nz < 0) {
			if (seen_nonzero_col) return std::nullopt; // zero column right of a pivot column
			continue;
		}
		seen_nonzero_col = true;
		if (nz <= last_row) return std::nullopt;
		last_row = nz;
		prof.pivot_row.push_back(nz);
	}
	prof.rank = static_cast<index_t>(prof.pivot_row.size());
	return prof;
}

template <class F>
bool is_reversed_barcode_form(const matrix<F>& m) {
	return reversed_barcode_form_profile(m).has_value();
}

} // namespace barbasis
