#pragma once

// Exact integer/rational helpers and certified sign decisions for
// expressions involving rational powers. Nothing in here uses floating point.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtl {

using Count = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

Count ipow(const Count& base, std::uint64_t exponent);
Rational rpow(const Rational& base, std::int64_t exponent);

/// x (x-1) ... (x-k+1); zero when 0 <= x < k.
Count falling_factorial(std::int64_t x, unsigned k);
Count falling_factorial(const Count& x, unsigned k);
Count binomial(const Count& n, unsigned k);
Count factorial(unsigned k);

/// Stirling numbers of the second kind, S(m, 0..m).
std::vector<Count> stirling2_row(unsigned m);

/// floor(x^(1/k)) for x >= 0, k >= 1.
Count integer_root(const Count& x, unsigned k);
std::optional<Count> exact_root(const Count& x, unsigned k);

std::string to_decimal(const Count& value);
/// Parses a nonnegative decimal string; throws Error(ParseError).
Count parse_count(std::string_view text);

Rational make_rational(const Count& num, const Count& den);
Count floor(const Rational& q);
Count ceil(const Rational& q);

struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// The positive real radicand^(1/index).
struct Radical {
    Rational radicand;
    unsigned index = 1;

    std::optional<Rational> exact() const;
    /// Rational enclosure of width at most 2^-bits relative to the scale of the value.
    Interval enclose(unsigned bits) const;
};

/// sum_i coeffs[i] * x^(lowest + i)
struct Laurent {
    int lowest = 0;
    std::vector<Rational> coeffs;

    static Laurent monomial(const Rational& c, int exponent);

    Rational coefficient(int exponent) const;
    int highest() const { return lowest + static_cast<int>(coeffs.size()) - 1; }

    Laurent& operator+=(const Laurent& other);
    Laurent& operator-=(const Laurent& other);
    Laurent& operator*=(const Rational& c);

    Rational evaluate(const Rational& x) const;
    /// Interval evaluation for x in [lo, hi] with lo > 0.
    Interval evaluate(const Interval& x) const;
};

Laurent operator+(Laurent a, const Laurent& b);
Laurent operator-(Laurent a, const Laurent& b);

/// Sign (-1, 0, +1) of p(x), decided by refining a rational enclosure of x.
/// Returns nullopt only if max_bits is exhausted, which can happen when p(x) == 0
/// for an irrational x.
std::optional<int> certified_sign(const Laurent& p, const Radical& x,
                                  unsigned max_bits = 1u << 14);

/// Decides base <= r^exponent exactly, for base >= 0, r >= 1, exponent >= 0.
bool leq_power(const Count& base, const Count& r, const Rational& exponent);

/// Certified rational bounds around Euler's number.
namespace euler {
Rational lower();
Rational upper();
}  // namespace euler

}  // namespace rtl
