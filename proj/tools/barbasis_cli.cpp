// Command-line front end: reduce persistence and zigzag modules to barcode
// form, print barcodes, stabiliser dimensions, and ladder matchings.
//
// Exit codes: 0 ok, 2 parse or validation error, 3 internal certificate
// failure, 4 nested bars.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <barbasis/io.hpp>
#include <barbasis/ladder.hpp>
#include <barbasis/oracle.hpp>
#include <barbasis/reduction.hpp>
#include <barbasis/stabiliser.hpp>

namespace fs = std::filesystem;
using namespace barbasis;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_parse = 2;
constexpr int exit_certificate = 3;
constexpr int exit_nested = 4;

struct cli_error {
	int code;
	std::string message;
};

std::string slurp(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw cli_error{exit_parse, path + ": cannot open"};
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void spill(const fs::path& path, const std::string& text) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw cli_error{exit_parse, path.string() + ": cannot write"};
	out << text;
}

detail::file_header header_of(const std::string& path, const std::string& text) {
	try {
		return read_header(text);
	} catch (const parse_error& e) {
		throw cli_error{exit_parse, path + ":" + std::to_string(e.line) + ": " + e.what()};
	}
}

template <class Fn>
int with_field(const field_spec& fs, Fn&& fn) {
	try {
		if (fs.rational) return fn(rationals());
		return fn(galois_field(fs.prime));
	} catch (const cli_error& e) {
		std::cerr << "barbasis: " << e.message << "\n";
		return e.code;
	} catch (const nested_bars_error&) {
		throw;
	} catch (const std::exception& e) {
		std::cerr << "barbasis: " << e.what() << "\n";
		return exit_parse;
	}
}

template <class F>
zigzag_module<F> load_module(const F& field, const std::string& path, const std::string& text) {
	try {
		return parse_module(field, text);
	} catch (const parse_error& e) {
		throw cli_error{exit_parse, path + ":" + std::to_string(e.line) + ": " + e.what()};
	}
}

template <class F>
std::vector<matrix<F>> load_maps(const F& field, const std::string& path, const std::string& text) {
	try {
		return parse_maps(field, text);
	} catch (const parse_error& e) {
		throw cli_error{exit_parse, path + ":" + std::to_string(e.line) + ": " + e.what()};
	}
}

fs::path out_path(const std::string& input, const std::string& out_dir, const char* suffix) {
	fs::path in(input);
	fs::path dir = out_dir.empty() ? in.parent_path() : fs::path(out_dir);
	return dir / (in.filename().string() + suffix);
}

std::string trace_text(const std::vector<trace_entry>& trace) {
	std::string out;
	for (const auto& t : trace) {
		switch (t.kind) {
		case op_kind::add:
			out += "add " + std::to_string(t.level) + " " + std::to_string(t.p) + " " +
			       std::to_string(t.q) + " " + t.lambda + "\n";
			break;
		case op_kind::swap:
			out += "swap " + std::to_string(t.level) + " " + std::to_string(t.p) + " " +
			       std::to_string(t.q) + "\n";
			break;
		case op_kind::scale:
			out += "scale " + std::to_string(t.level) + " " + std::to_string(t.p) + " " + t.lambda +
			       "\n";
			break;
		}
	}
	return out;
}

// Barcode lines "i j multiplicity" sorted by the (type-aware) total order.
std::string barcode_lines(const barcode& bc, const bar_order& ord) {
	std::string out;
	for (const interval& b : ord.sorted_bars(bc))
		out += std::to_string(b.start) + " " + std::to_string(b.end) + " " +
		       std::to_string(bc.multiplicity(b)) + "\n";
	return out;
}

int run_reduce(const std::string& path, bool emit_basis, bool emit_trace,
               const std::string& out_dir, bool zigzag_mode) {
	auto text = slurp(path);
	auto h = header_of(path, text);
	return with_field(h.field, [&](auto field) {
		auto z = load_module(field, path, text);
		if (!zigzag_mode && !z.type.is_all_forward())
			throw cli_error{exit_parse, path + ": type has backward arrows; use zigzag-reduce"};
		using F = decltype(field);
		reduction_result<F> res;
		std::optional<zigzag_type> t;
		if (zigzag_mode) {
			res = compute_barcode_basis(z, emit_trace);
			t = z.type;
		} else {
			res = compute_barcode_basis(as_persistence(z), emit_trace);
		}
		if (auto v = verify_reduction(z.dims, z.maps, res, t))
			throw cli_error{exit_certificate, path + ": certificate failed: " + v->what};
		zigzag_module<F> out{field, z.dims, z.type, res.reduced};
		auto reduced_path = out_path(path, out_dir, ".reduced");
		spill(reduced_path, print_module(out));
		std::cout << "reduced -> " << reduced_path.string() << "\n";
		if (emit_basis) {
			auto basis_path = out_path(path, out_dir, ".basis");
			spill(basis_path, print_maps(field, z.type, res.change.comps));
			std::cout << "basis -> " << basis_path.string() << "\n";
		}
		if (emit_trace) {
			auto trace_path = out_path(path, out_dir, ".trace");
			spill(trace_path, trace_text(res.trace));
			std::cout << "trace -> " << trace_path.string() << "\n";
		}
		return exit_ok;
	});
}

int run_barcode(const std::string& path, bool zigzag_mode) {
	auto text = slurp(path);
	auto h = header_of(path, text);
	return with_field(h.field, [&](auto field) {
		auto z = load_module(field, path, text);
		if (!zigzag_mode && !z.type.is_all_forward())
			throw cli_error{exit_parse, path + ": type has backward arrows; use zigzag-barcode"};
		using F = decltype(field);
		reduction_result<F> res;
		bar_order ord;
		barcode bc;
		if (zigzag_mode) {
			res = compute_barcode_basis(z);
			std::optional<zigzag_type> t{z.type};
			if (auto v = verify_reduction(z.dims, z.maps, res, t))
				throw cli_error{exit_certificate, path + ": certificate failed: " + v->what};
			bc = extract_barcode(z.dims, res.reduced, z.type);
			ord = bar_order(z.type);
		} else {
			res = compute_barcode_basis(as_persistence(z));
			if (auto v = verify_reduction(z.dims, z.maps, res))
				throw cli_error{exit_certificate, path + ": certificate failed: " + v->what};
			bc = extract_barcode(z.dims, res.reduced);
			ord = bar_order::plain();
		}
		std::cout << barcode_lines(bc, ord);
		return exit_ok;
	});
}

int run_stab_dim(const std::string& path, bool zigzag_mode) {
	auto text = slurp(path);
	auto h = header_of(path, text);
	return with_field(h.field, [&](auto field) {
		auto z = load_module(field, path, text);
		if (!zigzag_mode && !z.type.is_all_forward())
			throw cli_error{exit_parse, path + ": type has backward arrows; use zigzag-stab-dim"};
		std::uint64_t dim;
		if (zigzag_mode) {
			auto res = compute_barcode_basis(z);
			dim = stabiliser_dimension(extract_barcode(z.dims, res.reduced, z.type), z.type);
		} else {
			auto res = compute_barcode_basis(as_persistence(z));
			dim = stabiliser_dimension(extract_barcode(z.dims, res.reduced));
		}
		std::cout << dim << "\n";
		return exit_ok;
	});
}

std::string matching_lines(const ladder_decomposition& d, const bar_order& ord) {
	auto by_ord = [&](const interval& a, const interval& b) { return ord.lex(a, b) && a != b; };
	std::vector<std::pair<interval, interval>> keys;
	for (auto& [key, c] : d.matches) keys.push_back(key);
	std::stable_sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
		if (a.first != b.first) return by_ord(a.first, b.first);
		return by_ord(a.second, b.second);
	});
	std::string out;
	for (const auto& key : keys)
		out += "R " + std::to_string(key.first.start) + " " + std::to_string(key.first.end) + " " +
		       std::to_string(key.second.start) + " " + std::to_string(key.second.end) + " " +
		       std::to_string(d.matches.at(key)) + "\n";
	std::vector<interval> src_keys, tgt_keys;
	for (auto& [b, c] : d.unmatched_source) src_keys.push_back(b);
	for (auto& [b, c] : d.unmatched_target) tgt_keys.push_back(b);
	std::stable_sort(src_keys.begin(), src_keys.end(), by_ord);
	std::stable_sort(tgt_keys.begin(), tgt_keys.end(), by_ord);
	for (const auto& b : src_keys)
		out += "I+ " + std::to_string(b.start) + " " + std::to_string(b.end) + " " +
		       std::to_string(d.unmatched_source.at(b)) + "\n";
	for (const auto& b : tgt_keys)
		out += "I- " + std::to_string(b.start) + " " + std::to_string(b.end) + " " +
		       std::to_string(d.unmatched_target.at(b)) + "\n";
	return out;
}

int run_ladder(const std::string& src_path, const std::string& tgt_path,
               const std::string& map_path, bool zigzag_mode) {
	auto src_text = slurp(src_path);
	auto tgt_text = slurp(tgt_path);
	auto map_text = slurp(map_path);
	auto hs = header_of(src_path, src_text);
	auto ht = header_of(tgt_path, tgt_text);
	auto hm = header_of(map_path, map_text);
	if (!(hs.field == ht.field) || !(hs.field == hm.field)) {
		std::cerr << "barbasis: the three files use different fields\n";
		return exit_parse;
	}
	if (hs.length != ht.length || hs.length != hm.length || !(hs.type == ht.type) ||
	    !(hs.type == hm.type)) {
		std::cerr << "barbasis: the three files use different lengths or types\n";
		return exit_parse;
	}
	try {
		return with_field(hs.field, [&](auto field) {
			using F = decltype(field);
			auto src = load_module(field, src_path, src_text);
			auto tgt = load_module(field, tgt_path, tgt_text);
			auto phis = load_maps(field, map_path, map_text);
			if (!zigzag_mode && !src.type.is_all_forward())
				throw cli_error{exit_parse,
				                src_path + ": type has backward arrows; use zigzag-ladder"};
			try {
				ladder_decomposition d;
				bar_order ord;
				if (zigzag_mode) {
					zigzag_ladder_module<F> L{src, tgt, phis};
					if (auto e = validate(L)) throw cli_error{exit_parse, "invalid ladder: " + *e};
					d = decompose_ladder(L).decomposition;
					ord = bar_order(src.type);
				} else {
					ladder_module<F> L{as_persistence(src), as_persistence(tgt), phis};
					if (auto e = validate(L)) throw cli_error{exit_parse, "invalid ladder: " + *e};
					d = decompose_ladder(L).decomposition;
					ord = bar_order::plain();
				}
				std::cout << matching_lines(d, ord);
				return exit_ok;
			} catch (const invalid_ladder_error& e) {
				throw cli_error{exit_parse, std::string("invalid ladder: ") + e.what()};
			} catch (const std::logic_error& e) {
				throw cli_error{exit_certificate, std::string("certificate failed: ") + e.what()};
			}
		});
	} catch (const nested_bars_error& e) {
		std::cerr << "barbasis: NESTED " << (e.in_source ? "source" : "target") << " "
		          << e.outer.str() << " " << e.inner.str() << "\n";
		return exit_nested;
	}
}

field_spec parse_field_option(const std::string& s) {
	if (s == "Q" || s == "q") return {true, 0};
	if (s.size() > 2 && (s.rfind("Fp", 0) == 0 || s.rfind("fp", 0) == 0)) {
		field_spec fs;
		fs.rational = false;
		fs.prime = std::stoll(s.substr(2));
		return fs;
	}
	throw cli_error{exit_parse, "bad field '" + s + "', expected Q or Fp<prime>"};
}

int run_gen(const std::string& kind, std::uint64_t seed, int length, int max_dim,
            const std::string& field_opt) {
	auto fsd = parse_field_option(field_opt);
	return with_field(fsd, [&](auto field) {
		if (kind == "module") {
			auto m = random_module(field, seed, length, max_dim);
			std::cout << print_module(as_zigzag(m));
		} else if (kind == "zigzag") {
			auto m = random_zigzag(field, seed, length, max_dim);
			std::cout << print_module(m);
		} else {
			throw cli_error{exit_parse, "gen kind must be 'module' or 'zigzag'"};
		}
		return exit_ok;
	});
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"exact barcode bases for persistence and zigzag modules"};
	app.require_subcommand(1);

	std::string file, src_file, tgt_file, map_file, out_dir;
	bool emit_basis = false, emit_trace = false;

	auto add_reduce = [&](const char* name, const char* desc) {
		auto* c = app.add_subcommand(name, desc);
		c->add_option("file", file, "module file")->required();
		c->add_flag("--emit-basis", emit_basis, "write the change of basis next to the output");
		c->add_flag("--emit-trace", emit_trace, "write the elementary operation log");
		c->add_option("--out-dir", out_dir, "directory for output files");
		return c;
	};
	auto* reduce = add_reduce("reduce", "reduce a persistence module to barcode form");
	auto* zreduce = add_reduce("zigzag-reduce", "reduce a zigzag module to zigzag barcode form");

	auto* bar = app.add_subcommand("barcode", "print the barcode of a persistence module");
	bar->add_option("file", file, "module file")->required();
	auto* zbar = app.add_subcommand("zigzag-barcode", "print the barcode of a zigzag module");
	zbar->add_option("file", file, "module file")->required();

	auto* sd = app.add_subcommand("stab-dim", "dimension of the space of barcode bases");
	sd->add_option("file", file, "module file")->required();
	auto* zsd = app.add_subcommand("zigzag-stab-dim", "zigzag stabiliser dimension");
	zsd->add_option("file", file, "module file")->required();

	auto add_ladder = [&](const char* name, const char* desc) {
		auto* c = app.add_subcommand(name, desc);
		c->add_option("source", src_file, "source module file")->required();
		c->add_option("target", tgt_file, "target module file")->required();
		c->add_option("map", map_file, "vertical maps file")->required();
		return c;
	};
	auto* lad = add_ladder("ladder", "decompose a map of persistence modules into matched bars");
	auto* zlad = add_ladder("zigzag-ladder", "decompose a map of zigzag modules");

	auto* gen = app.add_subcommand("gen", "emit a random instance");
	std::string gen_kind = "module", gen_field = "Fp2";
	std::uint64_t gen_seed = 0;
	int gen_length = 6, gen_maxdim = 5;
	gen->add_option("kind", gen_kind, "module or zigzag");
	gen->add_option("--seed", gen_seed, "generator seed");
	gen->add_option("--length", gen_length, "maximum index l");
	gen->add_option("--max-dim", gen_maxdim, "maximum dimension per level");
	gen->add_option("--field", gen_field, "Q or Fp<prime>");

	CLI11_PARSE(app, argc, argv);

	try {
		if (*reduce) return run_reduce(file, emit_basis, emit_trace, out_dir, false);
		if (*zreduce) return run_reduce(file, emit_basis, emit_trace, out_dir, true);
		if (*bar) return run_barcode(file, false);
		if (*zbar) return run_barcode(file, true);
		if (*sd) return run_stab_dim(file, false);
		if (*zsd) return run_stab_dim(file, true);
		if (*lad) return run_ladder(src_file, tgt_file, map_file, false);
		if (*zlad) return run_ladder(src_file, tgt_file, map_file, true);
		if (*gen) return run_gen(gen_kind, gen_seed, gen_length, gen_maxdim, gen_field);
	} catch (const cli_error& e) {
		std::cerr << "barbasis: " << e.message << "\n";
		return e.code;
	} catch (const std::exception& e) {
		std::cerr << "barbasis: " << e.what() << "\n";
		return exit_parse;
	}
	return exit_ok;
}
