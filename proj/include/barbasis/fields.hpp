#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace barbasis {

// Arithmetic in a prime field F_p, p < 2^31. Elements are canonical
// representatives in [0, p).
class galois_field {
	std::int64_t p_;

	static bool is_prime(std::int64_t n) {
		if (n < 2) return false;
		if (n % 2 == 0) return n == 2;
		for (std::int64_t d = 3; d <= n / d; d += 2)
			if (n % d == 0) return false;
		return true;
	}

public:
	using element = std::int64_t;

	explicit galois_field(std::int64_t p) : p_(p) {
		if (p < 2 || p >= (std::int64_t(1) << 31) || !is_prime(p))
			throw std::invalid_argument("galois_field: modulus must be a prime < 2^31, got " +
			                            std::to_string(p));
	}

	std::int64_t characteristic() const { return p_; }

	element zero() const { return 0; }
	element one() const { return 1; }

	element from_int(std::int64_t v) const {
		element r = v % p_;
		return r < 0 ? r + p_ : r;
	}

	element add(element a, element b) const { return (a + b) % p_; }
	element sub(element a, element b) const { return from_int(a - b); }
	element mul(element a, element b) const { return (a * b) % p_; }
	element neg(element a) const { return a == 0 ? 0 : p_ - a; }

	element inv(element a) const {
		if (a == 0) throw std::domain_error("galois_field: inverse of zero");
		// extended Euclid
		std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
		while (new_r != 0) {
			std::int64_t q = r / new_r;
			std::int64_t tmp = t - q * new_t;
			t = new_t;
			new_t = tmp;
			tmp = r - q * new_r;
			r = new_r;
			new_r = tmp;
		}
		return from_int(t);
	}

	element div(element a, element b) const { return mul(a, inv(b)); }

	bool is_zero(element a) const { return a == 0; }
	bool is_one(element a) const { return a == 1; }
	bool eq(element a, element b) const { return a == b; }

	std::string str(element a) const { return std::to_string(a); }

	// Accepts plain integers, reduced mod p.
	element parse(const std::string& s) const {
		std::size_t pos = 0;
		std::int64_t v = std::stoll(s, &pos);
		if (pos != s.size()) throw std::invalid_argument("galois_field: bad scalar '" + s + "'");
		return from_int(v);
	}

	bool operator==(const galois_field& o) const { return p_ == o.p_; }
};

// Exact rational arithmetic. GMP keeps every element in lowest terms with a
// positive denominator, so equality is plain comparison.
class rationals {
public:
	using element = mpq_class;

	std::int64_t characteristic() const { return 0; }

	element zero() const { return element(0); }
	element one() const { return element(1); }

	element from_int(std::int64_t v) const { return element(static_cast<long>(v)); }

	element add(const element& a, const element& b) const { return a + b; }
	element sub(const element& a, const element& b) const { return a - b; }
	element mul(const element& a, const element& b) const { return a * b; }
	element neg(const element& a) const { return -a; }

	element inv(const element& a) const {
		if (a == 0) throw std::domain_error("rationals: inverse of zero");
		return 1 / a;
	}

	element div(const element& a, const element& b) const { return mul(a, inv(b)); }

	bool is_zero(const element& a) const { return a == 0; }
	bool is_one(const element& a) const { return a == 1; }
	bool eq(const element& a, const element& b) const { return a == b; }

	std::string str(const element& a) const {
		if (a.get_den() == 1) return a.get_num().get_str();
		return a.get_num().get_str() + "/" + a.get_den().get_str();
	}

	// Accepts "n" or "n/d".
	element parse(const std::string& s) const {
		element r;
		if (r.set_str(s, 10) != 0 || s.empty())
			throw std::invalid_argument("rationals: bad scalar '" + s + "'");
		if (r.get_den() == 0) throw std::invalid_argument("rationals: zero denominator in '" + s + "'");
		r.canonicalize();
		return r;
	}

	bool operator==(const rationals&) const { return true; }
};

} // namespace barbasis
