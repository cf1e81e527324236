#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace barbasis {

// Closed integer interval [start, end] inside [0, l].
struct interval {
	int start = 0;
	int end = 0;

	friend bool operator==(const interval&, const interval&) = default;
	// lexicographic; map iteration order coincides with the total order below
	friend auto operator<=>(const interval& a, const interval& b) = default;

	bool contains(int k) const { return start <= k && k <= end; }
	std::string str() const { return "[" + std::to_string(start) + "," + std::to_string(end) + "]"; }
};

inline bool intervals_intersect(const interval& a, const interval& b) {
	return std::max(a.start, b.start) <= std::min(a.end, b.end);
}

// The overlap relation: a precedes b when a.start <= b.start <= a.end <= b.end.
// Reflexive and antisymmetric but not transitive.
inline bool overlap_precedes(const interval& a, const interval& b) {
	return a.start <= b.start && b.start <= a.end && a.end <= b.end;
}

// Total lexicographic order on intervals.
inline bool lex_precedes(const interval& a, const interval& b) {
	return a.start < b.start || (a.start == b.start && a.end <= b.end);
}

// True when inner sits strictly inside outer on both ends. Two intersecting
// bars are strictly nested exactly when they are unrelated by the overlap
// relation in both directions.
inline bool strictly_nested(const interval& outer, const interval& inner) {
	return outer.start < inner.start && inner.end < outer.end;
}

// Multiset of intervals with positive multiplicities.
struct barcode {
	std::map<interval, int> mult;

	void add(interval b, int count = 1) {
		if (count <= 0) throw std::invalid_argument("barcode: multiplicity must be positive");
		mult[b] += count;
	}

	int multiplicity(const interval& b) const {
		auto it = mult.find(b);
		return it == mult.end() ? 0 : it->second;
	}

	int total() const {
		int t = 0;
		for (auto& [b, d] : mult) t += d;
		return t;
	}

	// Number of bars alive at level k.
	int dim_at(int k) const {
		int t = 0;
		for (auto& [b, d] : mult)
			if (b.contains(k)) t += d;
		return t;
	}

	friend bool operator==(const barcode&, const barcode&) = default;

	std::string str() const {
		std::string s = "{";
		bool first = true;
		for (auto& [b, d] : mult) {
			if (!first) s += ", ";
			first = false;
			s += b.str() + ":" + std::to_string(d);
		}
		return s + "}";
	}
};

} // namespace barbasis
