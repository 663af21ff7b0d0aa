#include "rtl/exact.hpp"

#include "rtl/error.hpp"

#include <algorithm>

namespace rtl {

Count ipow(const Count& base, std::uint64_t exponent) {
    Count result = 1;
    Count b = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= b;
        exponent >>= 1;
        if (exponent > 0) b *= b;
    }
    return result;
}

Rational rpow(const Rational& base, std::int64_t exponent) {
    if (exponent >= 0) {
        return make_rational(ipow(numerator(base), static_cast<std::uint64_t>(exponent)),
                             ipow(denominator(base), static_cast<std::uint64_t>(exponent)));
    }
    if (base == 0) fail(ErrorKind::InvalidArgument, "zero raised to a negative power");
    const auto e = static_cast<std::uint64_t>(-exponent);
    return make_rational(ipow(denominator(base), e), ipow(numerator(base), e));
}

Count falling_factorial(std::int64_t x, unsigned k) {
    return falling_factorial(Count(x), k);
}

Count falling_factorial(const Count& x, unsigned k) {
    Count result = 1;
    for (unsigned i = 0; i < k; ++i) {
        Count factor = x - i;
        if (factor == 0) return 0;
        result *= factor;
    }
    return result;
}

Count factorial(unsigned k) { return falling_factorial(Count(k), k); }

Count binomial(const Count& n, unsigned k) {
    if (n < k) return 0;
    return falling_factorial(n, k) / factorial(k);
}

std::vector<Count> stirling2_row(unsigned m) {
    std::vector<Count> row{1};
    for (unsigned i = 1; i <= m; ++i) {
        std::vector<Count> next(i + 1, 0);
        for (unsigned j = 1; j <= i; ++j) {
            Count stay = j < row.size() ? row[j] * j : Count(0);
            next[j] = stay + row[j - 1];
        }
        row = std::move(next);
    }
    return row;
}

Count integer_root(const Count& x, unsigned k) {
    if (x < 0) fail(ErrorKind::InvalidArgument, "root of a negative integer");
    if (k == 0) fail(ErrorKind::InvalidArgument, "zeroth root");
    Count root;
    mpz_root(root.backend().data(), x.backend().data(), k);
    return root;
}

std::optional<Count> exact_root(const Count& x, unsigned k) {
    if (x < 0 || k == 0) return std::nullopt;
    Count root;
    if (mpz_root(root.backend().data(), x.backend().data(), k) != 0) return root;
    return std::nullopt;
}

std::string to_decimal(const Count& value) { return value.str(); }

Count parse_count(std::string_view text) {
    if (text.empty()) throw Error(ErrorKind::ParseError, "empty number", 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw Error(ErrorKind::ParseError, "non-digit in decimal count", i);
        }
    }
    return Count(std::string(text));
}

Rational make_rational(const Count& num, const Count& den) {
    if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
    return Rational(num, den);
}

Count floor(const Rational& q) {
    Count result;
    mpz_fdiv_q(result.backend().data(), numerator(q).backend().data(),
               denominator(q).backend().data());
    return result;
}

Count ceil(const Rational& q) {
    Count result;
    mpz_cdiv_q(result.backend().data(), numerator(q).backend().data(),
               denominator(q).backend().data());
    return result;
}

std::optional<Rational> Radical::exact() const {
    if (radicand < 0) fail(ErrorKind::InvalidArgument, "negative radicand");
    auto num = exact_root(numerator(radicand), index);
    auto den = exact_root(denominator(radicand), index);
    if (num && den) return make_rational(*num, *den);
    return std::nullopt;
}

Interval Radical::enclose(unsigned bits) const {
    if (auto value = exact()) return {*value, *value};
    const Count& p = numerator(radicand);
    const Count& q = denominator(radicand);
    // Shift far enough that the root has `bits` significant bits.
    const long p_bits = static_cast<long>(msb(p)) + 1;
    const long q_bits = static_cast<long>(msb(q)) + 1;
    const long offset = std::max<long>(0, (q_bits - p_bits) / static_cast<long>(index) + 2);
    const unsigned shift = bits + static_cast<unsigned>(offset);
    Count scaled = (p << (shift * index)) / q;
    Count root = integer_root(scaled, index);
    Count den = Count(1) << shift;
    return {make_rational(root, den), make_rational(root + 1, den)};
}

Laurent Laurent::monomial(const Rational& c, int exponent) {
    return Laurent{exponent, {c}};
}

Rational Laurent::coefficient(int exponent) const {
    if (coeffs.empty() || exponent < lowest || exponent > highest()) return 0;
    return coeffs[static_cast<std::size_t>(exponent - lowest)];
}

Laurent& Laurent::operator+=(const Laurent& other) {
    if (other.coeffs.empty()) return *this;
    if (coeffs.empty()) return *this = other;
    const int lo = std::min(lowest, other.lowest);
    const int hi = std::max(highest(), other.highest());
    std::vector<Rational> sum(static_cast<std::size_t>(hi - lo + 1));
    for (int e = lo; e <= hi; ++e) {
        sum[static_cast<std::size_t>(e - lo)] = coefficient(e) + other.coefficient(e);
    }
    lowest = lo;
    coeffs = std::move(sum);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& other) {
    Laurent negated = other;
    negated *= Rational(-1);
    return *this += negated;
}

Laurent& Laurent::operator*=(const Rational& c) {
    for (auto& coeff : coeffs) coeff *= c;
    return *this;
}

Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

Rational Laurent::evaluate(const Rational& x) const {
    Rational sum = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        sum += coeffs[i] * rpow(x, lowest + static_cast<int>(i));
    }
    return sum;
}

Interval Laurent::evaluate(const Interval& x) const {
    if (x.lo <= 0) fail(ErrorKind::InvalidArgument, "interval evaluation needs x > 0");
    Interval sum{0, 0};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Rational& c = coeffs[i];
        if (c == 0) continue;
        const int e = lowest + static_cast<int>(i);
        Rational a = rpow(x.lo, e);
        Rational b = rpow(x.hi, e);
        if (e < 0) std::swap(a, b);
        if (c > 0) {
            sum.lo += c * a;
            sum.hi += c * b;
        } else {
            sum.lo += c * b;
            sum.hi += c * a;
        }
    }
    return sum;
}

std::optional<int> certified_sign(const Laurent& p, const Radical& x, unsigned max_bits) {
    auto sign_of = [](const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    if (auto exact = x.exact()) return sign_of(p.evaluate(*exact));
    for (unsigned bits = 64; bits <= max_bits; bits *= 2) {
        Interval value = p.evaluate(x.enclose(bits));
        if (value.lo > 0) return 1;
        if (value.hi < 0) return -1;
    }
    return std::nullopt;
}

bool leq_power(const Count& base, const Count& r, const Rational& exponent) {
    if (base < 0 || r < 1 || exponent < 0) {
        fail(ErrorKind::InvalidArgument, "leq_power needs base >= 0, r >= 1, exponent >= 0");
    }
    if (base <= 1) return true;
    if (r == 1) return false;
    const Count& den = denominator(exponent);
    // Bracket r^exponent between r^(floor(E*B)/B) and r^(ceil(E*B)/B) for growing B;
    // only fall back to the full cross-power when the bracket cannot separate.
    Count power = base;
    for (std::uint64_t scale = 1; scale <= 1024 && Count(scale) < den; scale *= 2) {
        const Rational scaled = exponent * Rational(scale);
        if (power <= ipow(r, floor(scaled).convert_to<std::uint64_t>())) return true;
        if (power > ipow(r, ceil(scaled).convert_to<std::uint64_t>())) return false;
        power *= power;
    }
    return ipow(base, den.convert_to<std::uint64_t>()) <=
           ipow(r, numerator(exponent).convert_to<std::uint64_t>());
}

namespace euler {
Rational lower() { return make_rational(Count(2718281828458LL), Count(1000000000000LL)); }
Rational upper() { return make_rational(Count(2718281828460LL), Count(1000000000000LL)); }
}  // namespace euler

}  // namespace rtl
