#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reduction.hpp"
#include "stabiliser.hpp"

namespace barbasis {

/* **************************************************************************
 * Ladder modules
 * *************************************************************************/

// A map of persistence modules phi: source -> target, one vertical matrix per
// level, every square commuting exactly.
template <class F>
struct ladder_module {
	persistence_module<F> source; // V
	persistence_module<F> target; // W
	std::vector<matrix<F>> maps;  // maps[k]: dim W_k x dim V_k
};

template <class F>
struct zigzag_ladder_module {
	zigzag_module<F> source;
	zigzag_module<F> target;
	std::vector<matrix<F>> maps;
};

struct nested_bars_error : std::runtime_error {
	interval outer, inner;
	bool in_source;

	nested_bars_error(interval o, interval i, bool src)
	    : std::runtime_error(std::string("nested bars in ") + (src ? "source" : "target") + ": " +
	                         i.str() + " inside " + o.str()),
	      outer(o), inner(i), in_source(src) {}
};

struct invalid_ladder_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
std::optional<std::string> validate_ladder_impl(const std::vector<index_t>& sdims,
                                                const std::vector<matrix<F>>& smaps,
                                                const std::vector<index_t>& tdims,
                                                const std::vector<matrix<F>>& tmaps,
                                                const std::vector<matrix<F>>& phis,
                                                const zigzag_type& type) {
	if (sdims.size() != tdims.size()) return "source and target lengths differ";
	if (phis.size() != sdims.size())
		return "expected " + std::to_string(sdims.size()) + " vertical maps, got " +
		       std::to_string(phis.size());
	for (std::size_t k = 0; k < phis.size(); ++k)
		if (phis[k].rows() != tdims[k] || phis[k].cols() != sdims[k])
			return "phi_" + std::to_string(k) + " has shape " + std::to_string(phis[k].rows()) +
			       "x" + std::to_string(phis[k].cols()) + ", expected " + std::to_string(tdims[k]) +
			       "x" + std::to_string(sdims[k]);
	for (std::size_t i = 0; i < smaps.size(); ++i) {
		bool bwd = type.is_backward(static_cast<int>(i));
		// forward: phi_i f_i = h_i phi_{i-1}; backward: phi_{i-1} q_i = h_i phi_i
		matrix<F> lhs = bwd ? phis[i] * smaps[i] : phis[i + 1] * smaps[i];
		matrix<F> rhs = bwd ? tmaps[i] * phis[i + 1] : tmaps[i] * phis[i];
		if (lhs != rhs) return "square " + std::to_string(i + 1) + " does not commute";
	}
	return std::nullopt;
}

} // namespace detail

template <class F>
std::optional<std::string> validate(const ladder_module<F>& L) {
	if (auto e = validate(L.source)) return "source: " + *e;
	if (auto e = validate(L.target)) return "target: " + *e;
	return detail::validate_ladder_impl(L.source.dims, L.source.maps, L.target.dims, L.target.maps,
	                                    L.maps, zigzag_type::all_forward(L.source.length()));
}

template <class F>
std::optional<std::string> validate(const zigzag_ladder_module<F>& L) {
	if (auto e = validate(L.source)) return "source: " + *e;
	if (auto e = validate(L.target)) return "target: " + *e;
	if (!(L.source.type == L.target.type)) return "source and target types differ";
	return detail::validate_ladder_impl(L.source.dims, L.source.maps, L.target.dims, L.target.maps,
	                                    L.maps, L.source.type);
}

// First strictly nested pair of a barcode in class order, if any.
inline std::optional<std::pair<interval, interval>> find_nested_pair(const barcode& bc,
                                                                     const bar_order& ord) {
	auto bars = ord.sorted_bars(bc);
	for (const auto& outer : bars)
		for (const auto& inner : bars)
			if (ord.nested(outer, inner)) return std::pair{outer, inner};
	return std::nullopt;
}

inline std::optional<std::pair<interval, interval>> check_no_nested(const barcode& bc) {
	return find_nested_pair(bc, bar_order::plain());
}

inline std::optional<std::pair<interval, interval>> check_no_nested(const barcode& bc,
                                                                    const zigzag_type& type) {
	return find_nested_pair(bc, bar_order(type));
}

/* **************************************************************************
 * Block matrix representation
 * *************************************************************************/

// The single block matrix of a ladder map in ordered barcode bases: rows are
// target bars, columns source bars, and the (r, c) block can be nonzero only
// when r precedes c.
template <class F>
struct ladder_block_matrix {
	std::vector<interval> row_classes, col_classes;
	std::map<interval, int> row_mult, col_mult;
	matrix<F> body;
	std::map<std::pair<interval, interval>, matrix<F>> blocks; // related pairs only
};

namespace detail {

// Reads the block value of (row chain a, col chain b) from the vertical maps
// at every common level, insisting the reads agree.
template <class F>
typename F::element read_pair_value(const F& field, const std::vector<matrix<F>>& phis,
                                    const bar_chain& ra, const bar_chain& cb) {
	int lo = std::max(ra.bar.start, cb.bar.start);
	int hi = std::min(ra.bar.end, cb.bar.end);
	const auto& v0 = phis[static_cast<std::size_t>(lo)](ra.pos_at(lo), cb.pos_at(lo));
	for (int k = lo + 1; k <= hi; ++k)
		if (!field.eq(v0, phis[static_cast<std::size_t>(k)](ra.pos_at(k), cb.pos_at(k))))
			throw invalid_ladder_error("vertical map entry varies along the intersection of " +
			                           ra.bar.str() + " and " + cb.bar.str());
	return v0;
}

template <class F>
ladder_block_matrix<F> block_matrix_from_contexts(const F& field,
                                                  const std::vector<matrix<F>>& phis,
                                                  const chain_context& tgt,
                                                  const chain_context& src) {
	ladder_block_matrix<F> bm{
	    tgt.classes, src.classes, {}, {},
	    matrix<F>(field, static_cast<index_t>(tgt.chains.size()),
	              static_cast<index_t>(src.chains.size())),
	    {}};
	for (const auto& r : tgt.classes) bm.row_mult[r] = tgt.bars.multiplicity(r);
	for (const auto& c : src.classes) bm.col_mult[c] = src.bars.multiplicity(c);
	for (const auto& r : tgt.classes) {
		auto [rb, re] = tgt.class_span.at(r);
		for (const auto& c : src.classes) {
			if (!intervals_intersect(r, c)) continue;
			auto [cb, ce] = src.class_span.at(c);
			bool related = tgt.ord.precedes(r, c);
			matrix<F> blk(field, re - rb, ce - cb);
			for (int a = rb; a < re; ++a)
				for (int b = cb; b < ce; ++b) {
					auto v = read_pair_value(field, phis, tgt.chains[static_cast<std::size_t>(a)],
					                         src.chains[static_cast<std::size_t>(b)]);
					if (!related && !field.is_zero(v))
						throw invalid_ladder_error("nonzero block at unrelated pair " + r.str() +
						                           " -> " + c.str());
					blk(a - rb, b - cb) = v;
					bm.body(a, b) = v;
				}
			if (related) bm.blocks.emplace(std::pair{r, c}, std::move(blk));
		}
	}
	return bm;
}

} // namespace detail

// Requires source and target already in canonical ordered barcode bases.
template <class F>
ladder_block_matrix<F> to_block_matrix(const ladder_module<F>& L) {
	if (auto e = validate(L)) throw invalid_ladder_error(*e);
	auto src = build_chain_context(L.source.dims, L.source.maps);
	auto tgt = build_chain_context(L.target.dims, L.target.maps);
	return detail::block_matrix_from_contexts(L.source.field, L.maps, tgt, src);
}

template <class F>
ladder_block_matrix<F> to_block_matrix(const zigzag_ladder_module<F>& L) {
	if (auto e = validate(L)) throw invalid_ladder_error(*e);
	auto src = build_chain_context(L.source.dims, L.source.maps, L.source.type);
	auto tgt = build_chain_context(L.target.dims, L.target.maps, L.target.type);
	return detail::block_matrix_from_contexts(L.source.field, L.maps, tgt, src);
}

/* **************************************************************************
 * Decomposition into interval ladders
 * *************************************************************************/

// Partial matching of bars: matches maps (target bar, source bar) pairs to
// counts, the rest of each barcode is unmatched.
struct ladder_decomposition {
	std::map<std::pair<interval, interval>, int> matches;
	std::map<interval, int> unmatched_source; // source-only summands
	std::map<interval, int> unmatched_target; // target-only summands

	friend bool operator==(const ladder_decomposition&, const ladder_decomposition&) = default;
};

template <class F>
struct ladder_decomposition_result {
	ladder_decomposition decomposition;
	basis_change<F> source_change, target_change;
	std::vector<matrix<F>> matched_maps; // phi in the new bases
};

namespace detail {

// Working state of the block reduction: the physical vertical maps plus the
// accumulated stabiliser pair, every operation applied concretely on the
// levels shared by the two classes involved.
template <class F>
class ladder_sweep {
public:
	F field;
	const chain_context& src;
	const chain_context& tgt;
	std::vector<matrix<F>> phis;
	basis_change<F> h, h_inv; // source side
	basis_change<F> k, k_inv; // target side
	std::vector<int> match_of_row, match_of_col; // chain index or -1

	ladder_sweep(F fd, const chain_context& s, const chain_context& t,
	             std::vector<matrix<F>> maps)
	    : field(std::move(fd)), src(s), tgt(t), phis(std::move(maps)),
	      h(basis_change<F>::identities(field, s.dims)),
	      h_inv(basis_change<F>::identities(field, s.dims)),
	      k(basis_change<F>::identities(field, t.dims)),
	      k_inv(basis_change<F>::identities(field, t.dims)),
	      match_of_row(t.chains.size(), -1), match_of_col(s.chains.size(), -1) {}

	typename F::element entry(int row, int col) const {
		const auto& ra = tgt.chains[static_cast<std::size_t>(row)];
		const auto& cb = src.chains[static_cast<std::size_t>(col)];
		if (!intervals_intersect(ra.bar, cb.bar)) return field.zero();
		int lo = std::max(ra.bar.start, cb.bar.start);
		return phis[static_cast<std::size_t>(lo)](ra.pos_at(lo), cb.pos_at(lo));
	}

	// col(dst) += lambda col(src_col), legal when class(src_col) precedes or
	// equals class(dst); applied at every level the two classes share.
	void col_add(int src_col, int dst, const typename F::element& lambda) {
		if (field.is_zero(lambda)) return;
		const auto& a = src.chains[static_cast<std::size_t>(src_col)];
		const auto& b = src.chains[static_cast<std::size_t>(dst)];
		int lo = std::max(a.bar.start, b.bar.start);
		int hi = std::min(a.bar.end, b.bar.end);
		for (int lev = lo; lev <= hi; ++lev) {
			index_t p = a.pos_at(lev), q = b.pos_at(lev);
			phis[static_cast<std::size_t>(lev)].add_col_multiple(q, p, lambda);
			h.comps[static_cast<std::size_t>(lev)].add_row_multiple(p, q, field.neg(lambda));
			h_inv.comps[static_cast<std::size_t>(lev)].add_col_multiple(q, p, lambda);
		}
	}

	void col_scale(int col, const typename F::element& s) {
		if (field.is_one(s)) return;
		auto si = field.inv(s);
		const auto& a = src.chains[static_cast<std::size_t>(col)];
		for (int lev = a.bar.start; lev <= a.bar.end; ++lev) {
			index_t p = a.pos_at(lev);
			phis[static_cast<std::size_t>(lev)].scale_col(p, s);
			h.comps[static_cast<std::size_t>(lev)].scale_row(p, si);
			h_inv.comps[static_cast<std::size_t>(lev)].scale_col(p, s);
		}
	}

	// row(dst) += lambda row(src_row), legal when class(dst) precedes or
	// equals class(src_row).
	void row_add(int dst, int src_row, const typename F::element& lambda) {
		if (field.is_zero(lambda)) return;
		const auto& a = tgt.chains[static_cast<std::size_t>(dst)];
		const auto& b = tgt.chains[static_cast<std::size_t>(src_row)];
		int lo = std::max(a.bar.start, b.bar.start);
		int hi = std::min(a.bar.end, b.bar.end);
		for (int lev = lo; lev <= hi; ++lev) {
			index_t p = a.pos_at(lev), q = b.pos_at(lev);
			phis[static_cast<std::size_t>(lev)].add_row_multiple(p, q, lambda);
			k.comps[static_cast<std::size_t>(lev)].add_row_multiple(p, q, lambda);
			k_inv.comps[static_cast<std::size_t>(lev)].add_col_multiple(q, p, field.neg(lambda));
		}
	}

	void row_scale(int row, const typename F::element& s) {
		if (field.is_one(s)) return;
		auto si = field.inv(s);
		const auto& a = tgt.chains[static_cast<std::size_t>(row)];
		for (int lev = a.bar.start; lev <= a.bar.end; ++lev) {
			index_t p = a.pos_at(lev);
			phis[static_cast<std::size_t>(lev)].scale_row(p, s);
			k.comps[static_cast<std::size_t>(lev)].scale_row(p, s);
			k_inv.comps[static_cast<std::size_t>(lev)].scale_col(p, si);
		}
	}

	// Sweep column classes left to right; inside one column class treat row
	// classes from the diagonal upward. Rows and columns matched in a
	// related class are cleaned with cross-class operations; what remains is
	// matched by elimination inside the block, and leftovers against
	// unrelated matches are cleared with the block's own pivots. An entry no
	// pivot can reach certifies an obstruction, the same phenomenon as a
	// strictly nested pair.
	void run() {
		for (const auto& c : src.classes) {
			auto [cb, ce] = src.class_span.at(c);
			std::vector<interval> row_classes;
			for (const auto& r : tgt.classes)
				if (tgt.ord.precedes(r, c)) row_classes.push_back(r);
			for (auto it = row_classes.rbegin(); it != row_classes.rend(); ++it) {
				const interval& r = *it;
				auto [rb, re] = tgt.class_span.at(r);
				// (a) rows matched in a related earlier column class vanish here
				for (int u = rb; u < re; ++u) {
					int v = match_of_row[static_cast<std::size_t>(u)];
					if (v < 0) continue;
					const interval& cprev = src.chains[static_cast<std::size_t>(v)].bar;
					if (cprev == c || !src.ord.precedes(cprev, c)) continue;
					for (int w = cb; w < ce; ++w) {
						auto e = entry(u, w);
						if (!field.is_zero(e)) col_add(v, w, field.neg(e));
					}
				}
				// (b) columns matched in a related lower block vanish here
				for (int w = cb; w < ce; ++w) {
					int u2 = match_of_col[static_cast<std::size_t>(w)];
					if (u2 < 0) continue;
					const interval& rprev = tgt.chains[static_cast<std::size_t>(u2)].bar;
					if (rprev == r || !tgt.ord.precedes(r, rprev)) continue;
					for (int u = rb; u < re; ++u) {
						auto e = entry(u, w);
						if (!field.is_zero(e)) row_add(u, u2, field.neg(e));
					}
				}
				// (c) eliminate the unmatched part of the block to a partial identity
				while (true) {
					int pu = -1, pw = -1;
					for (int u = rb; u < re && pu < 0; ++u) {
						if (match_of_row[static_cast<std::size_t>(u)] >= 0) continue;
						for (int w = cb; w < ce; ++w) {
							if (match_of_col[static_cast<std::size_t>(w)] >= 0) continue;
							if (!field.is_zero(entry(u, w))) {
								pu = u;
								pw = w;
								break;
							}
						}
					}
					if (pu < 0) break;
					col_scale(pw, field.inv(entry(pu, pw)));
					for (int w = cb; w < ce; ++w) {
						if (w == pw || match_of_col[static_cast<std::size_t>(w)] >= 0) continue;
						col_add(pw, w, field.neg(entry(pu, w)));
					}
					for (int u = rb; u < re; ++u) {
						if (u == pu || match_of_row[static_cast<std::size_t>(u)] >= 0) continue;
						row_add(u, pu, field.neg(entry(u, pw)));
					}
					match_of_row[static_cast<std::size_t>(pu)] = pw;
					match_of_col[static_cast<std::size_t>(pw)] = pu;
				}
				// (d) clear leftovers against unrelated matches using the
				// block's own pivots. Columns first: that empties the pivot
				// rows within this class, so the row fixes afterwards cannot
				// smear anything into unhandled positions. Whatever survives
				// both phases certifies an obstruction.
				for (int u = rb; u < re; ++u) {
					int wu = match_of_row[static_cast<std::size_t>(u)];
					if (wu < cb || wu >= ce) continue; // only rows matched in this block
					for (int w = cb; w < ce; ++w) {
						if (w == wu) continue;
						auto e = entry(u, w);
						if (!field.is_zero(e)) col_add(wu, w, field.neg(e));
					}
				}
				for (int w = cb; w < ce; ++w) {
					int uw = match_of_col[static_cast<std::size_t>(w)];
					if (uw < rb || uw >= re) continue; // only columns matched in this block
					for (int u = rb; u < re; ++u) {
						if (u == uw) continue;
						auto e = entry(u, w);
						if (!field.is_zero(e)) row_add(u, uw, field.neg(e));
					}
				}
				for (int u = rb; u < re; ++u) {
					for (int w = cb; w < ce; ++w) {
						if (match_of_row[static_cast<std::size_t>(u)] == w) continue;
						if (field.is_zero(entry(u, w))) continue;
						int wu = match_of_row[static_cast<std::size_t>(u)];
						int uw = match_of_col[static_cast<std::size_t>(w)];
						if (wu >= 0)
							throw nested_bars_error(src.chains[static_cast<std::size_t>(wu)].bar, c,
							                        true);
						if (uw >= 0)
							throw nested_bars_error(r, tgt.chains[static_cast<std::size_t>(uw)].bar,
							                        false);
						throw std::logic_error("ladder sweep: unmatched leftover entry");
					}
				}
			}
		}
	}

	ladder_decomposition read_decomposition() const {
		ladder_decomposition d;
		for (std::size_t u = 0; u < match_of_row.size(); ++u) {
			if (match_of_row[u] < 0) {
				d.unmatched_target[tgt.chains[u].bar] += 1;
			} else {
				const interval& r = tgt.chains[u].bar;
				const interval& c = src.chains[static_cast<std::size_t>(match_of_row[u])].bar;
				d.matches[{r, c}] += 1;
			}
		}
		for (std::size_t w = 0; w < match_of_col.size(); ++w)
			if (match_of_col[w] < 0) d.unmatched_source[src.chains[w].bar] += 1;
		return d;
	}
};

// Permutation sending the chains of a reduced sequence to the canonical
// ordered layout, as a basis change.
template <class F>
basis_change<F> canonical_permutation(const F& field, const chain_context& ctx) {
	basis_change<F> p;
	for (std::size_t klev = 0; klev < ctx.dims.size(); ++klev)
		p.comps.push_back(matrix<F>(field, ctx.dims[klev], ctx.dims[klev]));
	std::vector<index_t> next(ctx.dims.size(), 0);
	for (const auto& chain : ctx.chains)
		for (int lev = chain.bar.start; lev <= chain.bar.end; ++lev)
			p.comps[static_cast<std::size_t>(lev)](next[static_cast<std::size_t>(lev)]++,
			                                       chain.pos_at(lev)) = field.one();
	return p;
}

// Shared driver: reduce both sides, pass to canonical ordered bases, check
// the nestedness hypothesis, sweep, certify.
template <class F>
ladder_decomposition_result<F> decompose_ladder_impl(const F& field,
                                                     const std::vector<index_t>& sdims,
                                                     const std::vector<matrix<F>>& smaps,
                                                     const std::vector<index_t>& tdims,
                                                     const std::vector<matrix<F>>& tmaps,
                                                     const std::vector<matrix<F>>& phis,
                                                     const zigzag_type& type) {
	bool plain = type.is_all_forward();
	// reduce source and target to barcode form
	reduction_result<F> sred, tred;
	if (plain) {
		sred = compute_barcode_basis(persistence_module<F>{field, sdims, smaps});
		tred = compute_barcode_basis(persistence_module<F>{field, tdims, tmaps});
	} else {
		sred = compute_barcode_basis(zigzag_module<F>{field, sdims, type, smaps});
		tred = compute_barcode_basis(zigzag_module<F>{field, tdims, type, tmaps});
	}
	auto sctx0 = plain ? build_chain_context(sdims, sred.reduced)
	                   : build_chain_context(sdims, sred.reduced, type);
	auto tctx0 = plain ? build_chain_context(tdims, tred.reduced)
	                   : build_chain_context(tdims, tred.reduced, type);

	// nestedness hypothesis, source first
	if (auto pr = find_nested_pair(sctx0.bars, sctx0.ord))
		throw nested_bars_error(pr->first, pr->second, true);
	if (auto pr = find_nested_pair(tctx0.bars, tctx0.ord))
		throw nested_bars_error(pr->first, pr->second, false);

	// move to canonical ordered bases
	auto sperm = canonical_permutation(field, sctx0);
	auto tperm = canonical_permutation(field, tctx0);
	basis_change<F> schange = sperm * sred.change;
	basis_change<F> tchange = tperm * tred.change;
	basis_change<F> schange_inv = sred.change_inverse * sperm.inverse_components();
	basis_change<F> tchange_inv = tred.change_inverse * tperm.inverse_components();

	int l = static_cast<int>(sdims.size()) - 1;
	std::vector<matrix<F>> phis2;
	for (std::size_t klev = 0; klev < phis.size(); ++klev)
		phis2.push_back(tchange.comps[klev] * phis[klev] * schange_inv.comps[klev]);

	// canonical contexts over the canonical matrices
	std::vector<matrix<F>> scmaps, tcmaps;
	if (plain) {
		scmaps = canonical_matrices(field, sctx0.bars, l).maps;
		tcmaps = canonical_matrices(field, tctx0.bars, l).maps;
	} else {
		scmaps = canonical_matrices(field, sctx0.bars, type).maps;
		tcmaps = canonical_matrices(field, tctx0.bars, type).maps;
	}
	auto sctx = plain ? build_chain_context(sdims, scmaps) : build_chain_context(sdims, scmaps, type);
	auto tctx = plain ? build_chain_context(tdims, tcmaps) : build_chain_context(tdims, tcmaps, type);

	// the reduced-and-permuted modules must be the canonical matrices
	if (apply_basis_change(schange, smaps, type) != scmaps ||
	    apply_basis_change(tchange, tmaps, type) != tcmaps)
		throw std::logic_error("ladder certificate: canonical form mismatch");

	// well-definedness of the block representation
	(void)block_matrix_from_contexts(field, phis2, tctx, sctx);

	ladder_sweep<F> sweep(field, sctx, tctx, phis2);
	sweep.run();

	// the accumulated pair must stabilise the canonical forms
	if (apply_basis_change(sweep.h, scmaps, type) != scmaps ||
	    apply_basis_change(sweep.k, tcmaps, type) != tcmaps)
		throw std::logic_error("ladder certificate: operations left the stabiliser");

	ladder_decomposition_result<F> out;
	out.decomposition = sweep.read_decomposition();
	out.source_change = sweep.h * schange;
	out.target_change = sweep.k * tchange;
	out.matched_maps = std::move(sweep.phis);

	// certificate: conjugating the original maps yields the matched form,
	// a 0/1 partial matching supported on related blocks
	basis_change<F> src_total_inv = schange_inv * sweep.h_inv;
	for (std::size_t klev = 0; klev < phis.size(); ++klev) {
		auto back = out.target_change.comps[klev] * phis[klev] * src_total_inv.comps[klev];
		if (back != out.matched_maps[klev])
			throw std::logic_error("ladder certificate: conjugation identity fails");
		const auto& m = out.matched_maps[klev];
		for (index_t i = 0; i < m.rows(); ++i) {
			int nz = 0;
			for (index_t j = 0; j < m.cols(); ++j)
				if (!field.is_zero(m(i, j))) {
					++nz;
					if (!field.is_one(m(i, j)))
						throw std::logic_error("ladder certificate: entry not 0/1");
				}
			if (nz > 1) throw std::logic_error("ladder certificate: row with two entries");
		}
		for (index_t j = 0; j < m.cols(); ++j) {
			int nz = 0;
			for (index_t i = 0; i < m.rows(); ++i)
				if (!field.is_zero(m(i, j))) ++nz;
			if (nz > 1) throw std::logic_error("ladder certificate: column with two entries");
		}
	}
	// census
	for (const auto& [c, d] : sctx.bars.mult) {
		int got = 0;
		for (const auto& [pr, r2] : out.decomposition.matches)
			if (pr.second == c) got += r2;
		auto it = out.decomposition.unmatched_source.find(c);
		if (it != out.decomposition.unmatched_source.end()) got += it->second;
		if (got != d) throw std::logic_error("ladder certificate: source census fails");
	}
	for (const auto& [r, d] : tctx.bars.mult) {
		int got = 0;
		for (const auto& [pr, r2] : out.decomposition.matches)
			if (pr.first == r) got += r2;
		auto it = out.decomposition.unmatched_target.find(r);
		if (it != out.decomposition.unmatched_target.end()) got += it->second;
		if (got != d) throw std::logic_error("ladder certificate: target census fails");
	}
	return out;
}

} // namespace detail

// Accepts arbitrary bases; the source and target are reduced internally
// before the block reduction. Throws nested_bars_error when the hypothesis
// fails and invalid_ladder_error on non-commuting input.
template <class F>
ladder_decomposition_result<F> decompose_ladder(const ladder_module<F>& L) {
	if (auto e = validate(L)) throw invalid_ladder_error(*e);
	return detail::decompose_ladder_impl(L.source.field, L.source.dims, L.source.maps,
	                                     L.target.dims, L.target.maps, L.maps,
	                                     zigzag_type::all_forward(L.source.length()));
}

template <class F>
ladder_decomposition_result<F> decompose_ladder(const zigzag_ladder_module<F>& L) {
	if (auto e = validate(L)) throw invalid_ladder_error(*e);
	return detail::decompose_ladder_impl(L.source.field, L.source.dims, L.source.maps,
	                                     L.target.dims, L.target.maps, L.maps, L.source.type);
}

/* **************************************************************************
 * Synthesis of canonical ladder modules
 * *************************************************************************/

namespace detail {

inline void decomposition_barcodes(const ladder_decomposition& d, barcode& src, barcode& tgt) {
	for (const auto& [pr, r] : d.matches) {
		if (r <= 0) throw std::invalid_argument("synthesize_ladder: nonpositive match count");
		tgt.add(pr.first, r);
		src.add(pr.second, r);
	}
	for (const auto& [b, r] : d.unmatched_source) src.add(b, r);
	for (const auto& [b, r] : d.unmatched_target) tgt.add(b, r);
}

template <class F>
std::vector<matrix<F>> synth_phis(const F& field, const ladder_decomposition& d,
                                  const chain_context& sctx, const chain_context& tctx,
                                  const bar_order& ord) {
	std::vector<matrix<F>> phis;
	for (std::size_t klev = 0; klev < tctx.dims.size(); ++klev)
		phis.push_back(matrix<F>(field, tctx.dims[klev], sctx.dims[klev]));
	std::map<interval, int> next_src, next_tgt;
	for (const auto& [pr, count] : d.matches) {
		const auto& [r, c] = pr;
		if (!(r == c) && !ord.precedes(r, c))
			throw std::invalid_argument("synthesize_ladder: match " + r.str() + " -> " + c.str() +
			                            " violates the overlap relation");
		for (int t = 0; t < count; ++t) {
			int ru = tctx.class_span.at(r).first + next_tgt[r]++;
			int cw = sctx.class_span.at(c).first + next_src[c]++;
			const auto& ra = tctx.chains[static_cast<std::size_t>(ru)];
			const auto& cb = sctx.chains[static_cast<std::size_t>(cw)];
			int lo = std::max(r.start, c.start), hi = std::min(r.end, c.end);
			for (int lev = lo; lev <= hi; ++lev)
				phis[static_cast<std::size_t>(lev)](ra.pos_at(lev), cb.pos_at(lev)) = field.one();
		}
	}
	return phis;
}

} // namespace detail

// Direct sum of matched interval ladders plus source-only and target-only
// bars, in canonical ordered bases.
template <class F>
ladder_module<F> synthesize_ladder(const F& field, const ladder_decomposition& d, int l) {
	barcode sbc, tbc;
	detail::decomposition_barcodes(d, sbc, tbc);
	ladder_module<F> L{canonical_matrices(field, sbc, l), canonical_matrices(field, tbc, l), {}};
	auto sctx = build_chain_context(L.source.dims, L.source.maps);
	auto tctx = build_chain_context(L.target.dims, L.target.maps);
	L.maps = detail::synth_phis(field, d, sctx, tctx, bar_order::plain());
	return L;
}

template <class F>
zigzag_ladder_module<F> synthesize_ladder(const F& field, const ladder_decomposition& d,
                                          const zigzag_type& type) {
	barcode sbc, tbc;
	detail::decomposition_barcodes(d, sbc, tbc);
	zigzag_ladder_module<F> L{canonical_matrices(field, sbc, type),
	                          canonical_matrices(field, tbc, type),
	                          {}};
	auto sctx = build_chain_context(L.source.dims, L.source.maps, type);
	auto tctx = build_chain_context(L.target.dims, L.target.maps, type);
	L.maps = detail::synth_phis(field, d, sctx, tctx, bar_order(type));
	return L;
}

} // namespace barbasis
