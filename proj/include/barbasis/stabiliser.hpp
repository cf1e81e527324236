#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "module.hpp"
#include "oracle.hpp"

namespace barbasis {

struct not_stabiliser_error : std::domain_error {
	using std::domain_error::domain_error;
};

/* **************************************************************************
 * Chain contexts
 * *************************************************************************/

// The chains of a barcode-form sequence grouped into bar classes: classes are
// sorted by the (type-aware) total order, chain instances of a class by their
// birth position. Everything the block calculus needs to address entries.
struct chain_context {
	bar_order ord;
	std::vector<bar_chain> chains; // sorted by (class order, birth position)
	std::vector<interval> classes; // distinct bars in class order
	std::map<interval, std::pair<int, int>> class_span; // class -> [begin, end) in chains
	std::vector<std::vector<int>> chain_at;             // [level][position] -> chain index
	std::vector<index_t> dims;
	barcode bars;

	int instance_within_class(int chain_idx) const {
		return chain_idx - class_span.at(chains[static_cast<std::size_t>(chain_idx)].bar).first;
	}
};

namespace detail {

inline chain_context finish_context(std::vector<bar_chain> chains, bar_order ord,
                                    std::vector<index_t> dims) {
	chain_context ctx;
	ctx.ord = ord;
	ctx.dims = std::move(dims);
	std::stable_sort(chains.begin(), chains.end(), [&](const bar_chain& a, const bar_chain& b) {
		if (a.bar == b.bar) return a.pos[0] < b.pos[0];
		return ord.lex(a.bar, b.bar);
	});
	ctx.chains = std::move(chains);
	for (std::size_t i = 0; i < ctx.chains.size(); ++i) {
		const interval& b = ctx.chains[i].bar;
		auto it = ctx.class_span.find(b);
		if (it == ctx.class_span.end()) {
			ctx.classes.push_back(b);
			ctx.class_span[b] = {static_cast<int>(i), static_cast<int>(i) + 1};
		} else {
			it->second.second = static_cast<int>(i) + 1;
		}
		ctx.bars.add(b);
	}
	ctx.chain_at.assign(ctx.dims.size(), {});
	for (std::size_t k = 0; k < ctx.dims.size(); ++k)
		ctx.chain_at[k].assign(static_cast<std::size_t>(ctx.dims[k]), -1);
	for (std::size_t i = 0; i < ctx.chains.size(); ++i) {
		const auto& c = ctx.chains[i];
		for (int k = c.bar.start; k <= c.bar.end; ++k)
			ctx.chain_at[static_cast<std::size_t>(k)][static_cast<std::size_t>(c.pos_at(k))] =
			    static_cast<int>(i);
	}
	return ctx;
}

} // namespace detail

template <class F>
chain_context build_chain_context(const std::vector<index_t>& dims,
                                  const std::vector<matrix<F>>& maps) {
	return detail::finish_context(trace_chains(dims, maps), bar_order::plain(), dims);
}

template <class F>
chain_context build_chain_context(const std::vector<index_t>& dims,
                                  const std::vector<matrix<F>>& maps, const zigzag_type& type) {
	return detail::finish_context(trace_chains(dims, maps, type), bar_order(type), dims);
}

/* **************************************************************************
 * Stabiliser membership and block parametrization
 * *************************************************************************/

template <class F>
bool is_stabiliser(const basis_change<F>& g, const std::vector<matrix<F>>& maps) {
	return apply_basis_change(g, maps) == maps;
}

template <class F>
bool is_stabiliser(const basis_change<F>& g, const std::vector<matrix<F>>& maps,
                   const zigzag_type& type) {
	return apply_basis_change(g, maps, type) == maps;
}

// The free coordinates of a stabiliser element: one invertible block per bar
// class and one unconstrained block per strictly related class pair.
template <class F>
struct stabiliser_blocks {
	barcode context;
	std::vector<interval> classes; // class order
	std::map<interval, matrix<F>> diagonal;
	std::map<std::pair<interval, interval>, matrix<F>> off_diagonal;

	const matrix<F>* block(const interval& r, const interval& c) const {
		if (r == c) {
			auto it = diagonal.find(r);
			return it == diagonal.end() ? nullptr : &it->second;
		}
		auto it = off_diagonal.find({r, c});
		return it == off_diagonal.end() ? nullptr : &it->second;
	}
};

template <class F>
stabiliser_blocks<F> identity_blocks(const F& field, const barcode& bc, const bar_order& ord) {
	stabiliser_blocks<F> b;
	b.context = bc;
	b.classes = ord.sorted_bars(bc);
	for (const auto& r : b.classes) {
		index_t d = bc.multiplicity(r);
		b.diagonal.emplace(r, matrix<F>::identity(field, d));
		for (const auto& c : b.classes)
			if (r != c && ord.precedes(r, c))
				b.off_diagonal.emplace(std::pair{r, c},
				                       matrix<F>(field, d, bc.multiplicity(c)));
	}
	return b;
}

template <class F>
stabiliser_blocks<F> random_blocks(const F& field, const barcode& bc, const bar_order& ord,
                                   rng& r) {
	auto b = identity_blocks(field, bc, ord);
	for (auto& [bar, m] : b.diagonal) {
		do {
			m = random_matrix(field, r, m.rows(), m.cols());
		} while (!is_invertible(m));
	}
	for (auto& [pair, m] : b.off_diagonal) m = random_matrix(field, r, m.rows(), m.cols());
	return b;
}

// Assemble the group element whose entries at the chain positions of classes
// (r, c) are the block entries, zero elsewhere.
template <class F>
basis_change<F> stabiliser_from_blocks(const F& field, const stabiliser_blocks<F>& blocks,
                                       const chain_context& ctx) {
	if (blocks.context != ctx.bars)
		throw std::invalid_argument("stabiliser_from_blocks: context barcode mismatch");
	basis_change<F> g;
	for (std::size_t k = 0; k < ctx.dims.size(); ++k)
		g.comps.push_back(matrix<F>(field, ctx.dims[k], ctx.dims[k]));
	for (std::size_t a = 0; a < ctx.chains.size(); ++a) {
		const auto& ra = ctx.chains[a];
		for (std::size_t bidx = 0; bidx < ctx.chains.size(); ++bidx) {
			const auto& cb = ctx.chains[bidx];
			if (!intervals_intersect(ra.bar, cb.bar)) continue;
			const matrix<F>* blk = blocks.block(ra.bar, cb.bar);
			if (blk == nullptr) continue; // unrelated pair, stays zero
			const auto& v = (*blk)(ctx.instance_within_class(static_cast<int>(a)),
			                       ctx.instance_within_class(static_cast<int>(bidx)));
			int lo = std::max(ra.bar.start, cb.bar.start);
			int hi = std::min(ra.bar.end, cb.bar.end);
			for (int k = lo; k <= hi; ++k)
				g.comps[static_cast<std::size_t>(k)](ra.pos_at(k), cb.pos_at(k)) = v;
		}
	}
	return g;
}

// Inverse of the assembly: reads the blocks off a stabiliser element,
// checking that entries are constant along intersections, vanish on
// unrelated intersecting pairs, and that diagonal blocks are invertible.
template <class F>
stabiliser_blocks<F> blocks_from_stabiliser(const F& field, const basis_change<F>& g,
                                            const chain_context& ctx) {
	stabiliser_blocks<F> blocks;
	blocks.context = ctx.bars;
	blocks.classes = ctx.classes;
	for (const auto& r : ctx.classes) {
		auto [rb, re] = ctx.class_span.at(r);
		for (const auto& c : ctx.classes) {
			if (!intervals_intersect(r, c)) continue;
			auto [cb, ce] = ctx.class_span.at(c);
			bool related = (r == c) || ctx.ord.precedes(r, c);
			matrix<F> blk(field, re - rb, ce - cb);
			for (int a = rb; a < re; ++a)
				for (int b = cb; b < ce; ++b) {
					const auto& ra = ctx.chains[static_cast<std::size_t>(a)];
					const auto& cc = ctx.chains[static_cast<std::size_t>(b)];
					int lo = std::max(r.start, c.start), hi = std::min(r.end, c.end);
					const auto& v0 =
					    g.comps[static_cast<std::size_t>(lo)](ra.pos_at(lo), cc.pos_at(lo));
					for (int k = lo + 1; k <= hi; ++k)
						if (!field.eq(v0, g.comps[static_cast<std::size_t>(k)](ra.pos_at(k),
						                                                       cc.pos_at(k))))
							throw not_stabiliser_error(
							    "entry varies along the intersection of " + r.str() + " and " +
							    c.str());
					if (!related && !field.is_zero(v0))
						throw not_stabiliser_error("nonzero entry at unrelated pair " + r.str() +
						                           " -> " + c.str());
					blk(a - rb, b - cb) = v0;
				}
			if (r == c) {
				if (!is_invertible(blk))
					throw not_stabiliser_error("diagonal block of " + r.str() + " is singular");
				blocks.diagonal.emplace(r, std::move(blk));
			} else if (related) {
				blocks.off_diagonal.emplace(std::pair{r, c}, std::move(blk));
			}
		}
	}
	return blocks;
}

// Block-level product: the (r, c) block of gh is the sum of g(r, m) h(m, c)
// over classes m with r preceding m preceding c.
template <class F>
stabiliser_blocks<F> blocks_multiply(const F& field, const stabiliser_blocks<F>& g,
                                     const stabiliser_blocks<F>& h, const bar_order& ord) {
	if (g.context != h.context)
		throw std::invalid_argument("blocks_multiply: context barcode mismatch");
	stabiliser_blocks<F> out;
	out.context = g.context;
	out.classes = g.classes;
	for (const auto& r : g.classes) {
		for (const auto& c : g.classes) {
			bool related = (r == c) || ord.precedes(r, c);
			if (!related) continue;
			matrix<F> acc(field, g.context.multiplicity(r), g.context.multiplicity(c));
			for (const auto& m : g.classes) {
				bool left = (r == m) || ord.precedes(r, m);
				bool right = (m == c) || ord.precedes(m, c);
				if (!left || !right) continue;
				const matrix<F>* gb = g.block(r, m);
				const matrix<F>* hb = h.block(m, c);
				if (!gb || !hb) continue;
				auto prod = (*gb) * (*hb);
				for (index_t i = 0; i < acc.rows(); ++i)
					for (index_t j = 0; j < acc.cols(); ++j)
						acc(i, j) = field.add(acc(i, j), prod(i, j));
			}
			if (r == c)
				out.diagonal.emplace(r, std::move(acc));
			else
				out.off_diagonal.emplace(std::pair{r, c}, std::move(acc));
		}
	}
	return out;
}

// Number of free scalar parameters of the stabiliser: the sum of d_r d_c
// over related ordered class pairs, including the diagonal ones.
inline std::uint64_t stabiliser_dimension(const barcode& bc, const bar_order& ord) {
	std::uint64_t total = 0;
	for (auto& [r, dr] : bc.mult)
		for (auto& [c, dc] : bc.mult)
			if (r == c || ord.precedes(r, c))
				total += static_cast<std::uint64_t>(dr) * static_cast<std::uint64_t>(dc);
	return total;
}

inline std::uint64_t stabiliser_dimension(const barcode& bc) {
	return stabiliser_dimension(bc, bar_order::plain());
}

inline std::uint64_t stabiliser_dimension(const barcode& bc, const zigzag_type& type) {
	return stabiliser_dimension(bc, bar_order(type));
}

} // namespace barbasis
