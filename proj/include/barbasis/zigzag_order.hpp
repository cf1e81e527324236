#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "intervals.hpp"

namespace barbasis {

// Arrow directions of a type-A quiver of length l: arrow i (1-based in the
// usual indexing, entry i-1 here) sits between spaces i-1 and i and points
// forward (i-1 -> i) or backward (i-1 <- i).
struct zigzag_type {
	std::vector<bool> backward; // backward[i] for the arrow between i and i+1

	zigzag_type() = default;

	static zigzag_type parse(const std::string& s) {
		zigzag_type t;
		t.backward.reserve(s.size());
		for (char c : s) {
			if (c == 'f')
				t.backward.push_back(false);
			else if (c == 'q')
				t.backward.push_back(true);
			else
				throw std::invalid_argument("zigzag type must be over {f,q}, got '" + s + "'");
		}
		return t;
	}

	static zigzag_type all_forward(int l) {
		zigzag_type t;
		t.backward.assign(static_cast<std::size_t>(l), false);
		return t;
	}

	int length() const { return static_cast<int>(backward.size()); }
	bool is_backward(int arrow) const { return backward.at(static_cast<std::size_t>(arrow)); }
	bool is_all_forward() const {
		for (bool b : backward)
			if (b) return false;
		return true;
	}

	std::string str() const {
		std::string s;
		for (bool b : backward) s += b ? 'q' : 'f';
		return s;
	}

	friend bool operator==(const zigzag_type&, const zigzag_type&) = default;
};

/* **************************************************************************
 * Type-dependent total orders on endpoints {0..l}
 * *************************************************************************/

// Position of each element of {0..l} in the start order: built left to
// right, a forward arrow appends the new endpoint last, a backward arrow
// prepends it first.
inline std::vector<int> start_order_positions(const zigzag_type& t) {
	int l = t.length();
	std::vector<int> pos(static_cast<std::size_t>(l) + 1, 0);
	for (int i = 1; i <= l; ++i) {
		if (t.is_backward(i - 1)) {
			for (int k = 0; k < i; ++k) ++pos[static_cast<std::size_t>(k)];
			pos[static_cast<std::size_t>(i)] = 0;
		} else {
			pos[static_cast<std::size_t>(i)] = i;
		}
	}
	return pos;
}

// Position of each element of {0..l} in the end order: built right to left,
// a forward arrow prepends the new endpoint first, a backward arrow appends
// it last.
inline std::vector<int> end_order_positions(const zigzag_type& t) {
	int l = t.length();
	std::vector<int> pos(static_cast<std::size_t>(l) + 1, 0);
	int size = 1;
	for (int j = l - 1; j >= 0; --j) {
		if (t.is_backward(j)) {
			pos[static_cast<std::size_t>(j)] = size;
		} else {
			for (int k = j + 1; k <= l; ++k) ++pos[static_cast<std::size_t>(k)];
			pos[static_cast<std::size_t>(j)] = 0;
		}
		++size;
	}
	return pos;
}

/* **************************************************************************
 * Type-dependent interval relations
 * *************************************************************************/

// Overlap relation twisted by the type: the intersection must be nonempty
// and each endpoint comparison flips with the arrow adjacent to the
// intersection boundary. With all arrows forward this is overlap_precedes.
inline bool overlap_precedes(const interval& a, const interval& b, const zigzag_type& t) {
	int i = std::max(a.start, b.start);
	int j = std::min(a.end, b.end);
	if (i > j) return false;
	if (a.start != b.start) {
		// arrow between i-1 and i decides the start comparison
		if (t.is_backward(i - 1) ? a.start < b.start : b.start < a.start) return false;
	}
	if (a.end != b.end) {
		// arrow between j and j+1 decides the end comparison
		if (t.is_backward(j) ? a.end < b.end : b.end < a.end) return false;
	}
	return true;
}

// Total order on intervals induced by the two endpoint orders.
class tau_interval_order {
	std::vector<int> start_pos_, end_pos_;

public:
	explicit tau_interval_order(const zigzag_type& t)
	    : start_pos_(start_order_positions(t)), end_pos_(end_order_positions(t)) {}

	bool lex_precedes(const interval& a, const interval& b) const {
		int sa = start_pos_.at(static_cast<std::size_t>(a.start));
		int sb = start_pos_.at(static_cast<std::size_t>(b.start));
		if (sa != sb) return sa < sb;
		return end_pos_.at(static_cast<std::size_t>(a.end)) <=
		       end_pos_.at(static_cast<std::size_t>(b.end));
	}
};

inline bool lex_precedes(const interval& a, const interval& b, const zigzag_type& t) {
	return tau_interval_order(t).lex_precedes(a, b);
}

// Strict nesting twisted by the type: an intersecting pair that is
// lex-comparable but not overlap-related. Specializes to plain strict
// nesting when all arrows point forward.
inline bool strictly_nested(const interval& outer, const interval& inner, const zigzag_type& t) {
	if (!intervals_intersect(outer, inner) || outer == inner) return false;
	return lex_precedes(outer, inner, t) && !overlap_precedes(outer, inner, t);
}

/* **************************************************************************
 * Relation bundle shared by the stabiliser and ladder machinery
 * *************************************************************************/

// One vocabulary for the plain and the type-twisted interval relations. The
// plain flavour never consults a type.
class bar_order {
	bool plain_ = true;
	zigzag_type type_;
	std::vector<int> start_pos_, end_pos_;

public:
	bar_order() = default;
	explicit bar_order(const zigzag_type& t)
	    : plain_(t.is_all_forward()), type_(t), start_pos_(start_order_positions(t)),
	      end_pos_(end_order_positions(t)) {}

	static bar_order plain() { return bar_order(); }

	bool precedes(const interval& a, const interval& b) const {
		return plain_ ? overlap_precedes(a, b) : overlap_precedes(a, b, type_);
	}

	bool lex(const interval& a, const interval& b) const {
		if (plain_) return lex_precedes(a, b);
		int sa = start_pos_.at(static_cast<std::size_t>(a.start));
		int sb = start_pos_.at(static_cast<std::size_t>(b.start));
		if (sa != sb) return sa < sb;
		return end_pos_.at(static_cast<std::size_t>(a.end)) <=
		       end_pos_.at(static_cast<std::size_t>(b.end));
	}

	bool nested(const interval& outer, const interval& inner) const {
		if (plain_) return strictly_nested(outer, inner);
		return strictly_nested(outer, inner, type_);
	}

	// Bars of a barcode sorted by the total order; ties cannot occur since
	// barcode keys are distinct intervals.
	std::vector<interval> sorted_bars(const barcode& bc) const {
		std::vector<interval> bars;
		bars.reserve(bc.mult.size());
		for (auto& [b, d] : bc.mult) bars.push_back(b);
		std::stable_sort(bars.begin(), bars.end(),
		                 [&](const interval& a, const interval& b) { return lex(a, b) && a != b; });
		return bars;
	}
};

} // namespace barbasis
