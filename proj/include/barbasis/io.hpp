#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "module.hpp"

namespace barbasis {

struct parse_error : std::runtime_error {
	int line;

	parse_error(int ln, const std::string& msg)
	    : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

struct field_spec {
	bool rational = false;
	std::int64_t prime = 2;

	std::string str() const { return rational ? "Q" : "Fp " + std::to_string(prime); }

	friend bool operator==(const field_spec&, const field_spec&) = default;
};

namespace detail {

// Splits the input into token lines, dropping blanks and '#' comments and
// remembering source line numbers.
struct token_line {
	int line;
	std::vector<std::string> tokens;
};

inline std::vector<token_line> tokenize(std::istream& in) {
	std::vector<token_line> out;
	std::string raw;
	int lineno = 0;
	while (std::getline(in, raw)) {
		++lineno;
		auto hash = raw.find('#');
		if (hash != std::string::npos) raw.erase(hash);
		std::istringstream ls(raw);
		token_line tl{lineno, {}};
		std::string tok;
		while (ls >> tok) tl.tokens.push_back(tok);
		if (!tl.tokens.empty()) out.push_back(std::move(tl));
	}
	return out;
}

class token_cursor {
	std::vector<token_line> lines_;
	std::size_t at_ = 0;

public:
	explicit token_cursor(std::istream& in) : lines_(tokenize(in)) {}

	bool done() const { return at_ >= lines_.size(); }
	int line() const { return done() ? (lines_.empty() ? 1 : lines_.back().line) : lines_[at_].line; }

	const token_line& expect(const std::string& keyword, std::size_t min_tokens) {
		if (done()) throw parse_error(line(), "expected '" + keyword + "', found end of file");
		const auto& tl = lines_[at_];
		if (tl.tokens[0] != keyword)
			throw parse_error(tl.line, "expected '" + keyword + "', found '" + tl.tokens[0] + "'");
		if (tl.tokens.size() < min_tokens)
			throw parse_error(tl.line, "'" + keyword + "' needs at least " +
			                               std::to_string(min_tokens - 1) + " arguments");
		++at_;
		return tl;
	}

	const token_line& next() {
		if (done()) throw parse_error(line(), "unexpected end of file");
		return lines_[at_++];
	}

	void expect_end() const {
		if (!done()) throw parse_error(lines_[at_].line, "trailing content after the last matrix");
	}
};

inline long long to_int(const std::string& s, int line, const std::string& what) {
	try {
		std::size_t pos = 0;
		long long v = std::stoll(s, &pos);
		if (pos != s.size()) throw std::invalid_argument(s);
		return v;
	} catch (const std::exception&) {
		throw parse_error(line, "bad " + what + " '" + s + "'");
	}
}

struct file_header {
	field_spec field;
	int length = 0;
	zigzag_type type;
};

inline file_header parse_header(token_cursor& cur) {
	file_header h;
	const auto& fl = cur.expect("field", 2);
	if (fl.tokens[1] == "Q") {
		h.field.rational = true;
	} else if (fl.tokens[1] == "Fp") {
		if (fl.tokens.size() < 3) throw parse_error(fl.line, "'field Fp' needs a prime");
		h.field.rational = false;
		h.field.prime = to_int(fl.tokens[2], fl.line, "prime");
	} else {
		throw parse_error(fl.line, "field must be 'Fp <prime>' or 'Q'");
	}
	const auto& ll = cur.expect("length", 2);
	h.length = static_cast<int>(to_int(ll.tokens[1], ll.line, "length"));
	if (h.length < 0) throw parse_error(ll.line, "length must be nonnegative");
	const auto& tl = cur.expect("type", 2);
	std::string ts = tl.tokens[1] == "-" ? "" : tl.tokens[1];
	try {
		h.type = zigzag_type::parse(ts);
	} catch (const std::exception& e) {
		throw parse_error(tl.line, e.what());
	}
	if (h.type.length() != h.length)
		throw parse_error(tl.line, "type has " + std::to_string(h.type.length()) +
		                               " arrows, expected " + std::to_string(h.length));
	return h;
}

template <class F>
matrix<F> parse_matrix_block(const F& field, token_cursor& cur, int expected_index) {
	const auto& ml = cur.expect("matrix", 4);
	long long idx = to_int(ml.tokens[1], ml.line, "matrix index");
	if (idx != expected_index)
		throw parse_error(ml.line, "expected matrix " + std::to_string(expected_index) + ", found " +
		                               std::to_string(idx));
	long long rows = to_int(ml.tokens[2], ml.line, "row count");
	long long cols = to_int(ml.tokens[3], ml.line, "column count");
	if (rows < 0 || cols < 0) throw parse_error(ml.line, "negative matrix dimension");
	matrix<F> m(field, static_cast<index_t>(rows), static_cast<index_t>(cols));
	if (m.cols() == 0) return m; // zero-column rows carry no entries
	index_t i = 0;
	while (i < m.rows()) {
		const auto& rl = cur.next();
		if (static_cast<index_t>(rl.tokens.size()) != m.cols())
			throw parse_error(rl.line, "expected " + std::to_string(m.cols()) + " entries, found " +
			                               std::to_string(rl.tokens.size()));
		for (index_t j = 0; j < m.cols(); ++j) {
			try {
				m(i, j) = field.parse(rl.tokens[static_cast<std::size_t>(j)]);
			} catch (const std::exception& e) {
				throw parse_error(rl.line, e.what());
			}
		}
		++i;
	}
	return m;
}

} // namespace detail

// Reads only the header of a module or maps file, enough to pick the field.
inline detail::file_header read_header(const std::string& text) {
	std::istringstream in(text);
	detail::token_cursor cur(in);
	return detail::parse_header(cur);
}

// Module file: header plus dims plus matrices 1..length.
template <class F>
zigzag_module<F> parse_module(const F& field, const std::string& text) {
	std::istringstream in(text);
	detail::token_cursor cur(in);
	auto h = detail::parse_header(cur);
	const auto& dl = cur.expect("dims", 2);
	if (static_cast<int>(dl.tokens.size()) != h.length + 2)
		throw parse_error(dl.line, "expected " + std::to_string(h.length + 1) + " dimensions");
	zigzag_module<F> m{field, {}, h.type, {}};
	for (int k = 0; k <= h.length; ++k) {
		long long d = detail::to_int(dl.tokens[static_cast<std::size_t>(k) + 1], dl.line, "dimension");
		if (d < 0) throw parse_error(dl.line, "negative dimension");
		m.dims.push_back(static_cast<index_t>(d));
	}
	for (int i = 1; i <= h.length; ++i)
		m.maps.push_back(detail::parse_matrix_block(field, cur, i));
	cur.expect_end();
	if (auto err = validate(m)) throw parse_error(1, *err);
	return m;
}

// Maps file: header plus matrices 0..length (vertical maps of a ladder, or
// the components of a basis change).
template <class F>
std::vector<matrix<F>> parse_maps(const F& field, const std::string& text) {
	std::istringstream in(text);
	detail::token_cursor cur(in);
	auto h = detail::parse_header(cur);
	std::vector<matrix<F>> maps;
	for (int k = 0; k <= h.length; ++k)
		maps.push_back(detail::parse_matrix_block(field, cur, k));
	cur.expect_end();
	return maps;
}

namespace detail {

template <class F>
void print_matrix_block(std::string& out, const matrix<F>& m, const std::string& name, int idx) {
	out += name + " " + std::to_string(idx) + " " + std::to_string(m.rows()) + " " +
	       std::to_string(m.cols()) + "\n";
	out += m.str();
}

inline std::string header_text(const field_spec& fs, int length, const zigzag_type& type) {
	std::string out = "field " + fs.str() + "\n";
	out += "length " + std::to_string(length) + "\n";
	out += "type " + (type.length() == 0 ? std::string("-") : type.str()) + "\n";
	return out;
}

} // namespace detail

template <class F>
field_spec field_spec_of(const F& field) {
	field_spec fs;
	fs.rational = field.characteristic() == 0;
	fs.prime = fs.rational ? 0 : field.characteristic();
	return fs;
}

template <class F>
std::string print_module(const zigzag_module<F>& m) {
	std::string out = detail::header_text(field_spec_of(m.field), m.length(), m.type);
	out += "dims";
	for (index_t d : m.dims) out += " " + std::to_string(d);
	out += "\n";
	for (int i = 1; i <= m.length(); ++i)
		detail::print_matrix_block(out, m.maps[static_cast<std::size_t>(i - 1)], "matrix", i);
	return out;
}

template <class F>
std::string print_maps(const F& field, const zigzag_type& type, const std::vector<matrix<F>>& maps) {
	std::string out =
	    detail::header_text(field_spec_of(field), static_cast<int>(maps.size()) - 1, type);
	for (std::size_t k = 0; k < maps.size(); ++k)
		detail::print_matrix_block(out, maps[k], "matrix", static_cast<int>(k));
	return out;
}

// Conversion between the on-disk representation (always typed) and the plain
// persistence module used by the forward-only algorithms.
template <class F>
persistence_module<F> as_persistence(const zigzag_module<F>& z) {
	if (!z.type.is_all_forward())
		throw std::invalid_argument("module has backward arrows; use the zigzag commands");
	return {z.field, z.dims, z.maps};
}

template <class F>
zigzag_module<F> as_zigzag(const persistence_module<F>& m) {
	return {m.field, m.dims, zigzag_type::all_forward(m.length()), m.maps};
}

} // namespace barbasis
