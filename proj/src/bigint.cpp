#include "posetlab/bigint.hpp"

#include <cctype>

#include "posetlab/errors.hpp"

namespace posetlab {

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

BigInt factorial(unsigned n) {
    BigInt result = 1;
    for (unsigned i = 2; i <= n; ++i) result *= i;
    return result;
}

std::uint64_t binomial_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // result * (n-k+i) is divisible by i; the intermediate fits for n <= 62.
        result = result / i * (n - k + i) + result % i * (n - k + i) / i;
    }
    return result;
}

namespace {

BigInt parse_integer(const std::string& text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    require(pos < text.size(), ErrorKind::parse, "empty integer in '" + text + "'");
    BigInt value = 0;
    for (; pos < text.size(); ++pos) {
        require(std::isdigit(static_cast<unsigned char>(text[pos])) != 0, ErrorKind::parse,
                "bad digit in '" + text + "'");
        value = value * 10 + (text[pos] - '0');
    }
    return negative ? BigInt(-value) : value;
}

}  // namespace

ExactRational parse_rational(const std::string& text) {
    require(!text.empty(), ErrorKind::parse, "empty rational");
    if (auto slash = text.find('/'); slash != std::string::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        require(den != 0, ErrorKind::parse, "zero denominator in '" + text + "'");
        return ExactRational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+") digits += "0";
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return ExactRational(parse_integer(digits), den);
    }
    return ExactRational(parse_integer(text));
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const ExactRational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

BigInt isqrt(const BigInt& value) {
    if (value < 2) return value;
    return boost::multiprecision::sqrt(value);
}

int compare_with_power(const BigInt& value, unsigned n, unsigned a, unsigned b) {
    BigInt lhs = boost::multiprecision::pow(value, b);
    BigInt rhs = boost::multiprecision::pow(BigInt(n), a);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace posetlab
