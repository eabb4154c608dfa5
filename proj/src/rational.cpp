#include "dendro/rational.hpp"

#include <charconv>
#include <ostream>

namespace dendro {

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) {
        throw std::invalid_argument("malformed rational: \"" + std::string(whole) + "\"");
    }
    std::size_t i = (text.front() == '-' || text.front() == '+') ? 1 : 0;
    if (i == text.size()) {
        throw std::invalid_argument("malformed rational: \"" + std::string(whole) + "\"");
    }
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] < '0' || text[j] > '9') {
            throw std::invalid_argument("malformed rational: \"" + std::string(whole) + "\"");
        }
    }
    std::string digits(text.substr(text.front() == '+' ? 1 : 0));
    return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    value_ = mpq_class(numerator, 1);
    value_ /= denominator;
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text), mpz_class(1));
    }
    const mpz_class num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (den_text.size() > 2 && den_text.substr(0, 2) == "2^") {
        unsigned long level = 0;
        const auto exp_text = den_text.substr(2);
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), level);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size()) {
            throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
        }
        return Rational(num, mpz_class(1)).mul_pow2(-static_cast<long>(level));
    }
    const mpz_class den = parse_integer(den_text, text);
    if (den <= 0) {
        throw std::invalid_argument("rational denominator must be positive: \"" + std::string(text) + "\"");
    }
    return Rational(num, den);
}

Rational Rational::pow2(long exponent) {
    return Rational(1).mul_pow2(exponent);
}

Rational Rational::mul_pow2(long exponent) const {
    Rational out;
    if (exponent >= 0) {
        mpq_mul_2exp(out.value_.get_mpq_t(), value_.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
    } else {
        mpq_div_2exp(out.value_.get_mpq_t(), value_.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
    }
    return out;
}

mpz_class Rational::floor() const {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

mpz_class Rational::ceil() const {
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("rational division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.str();
}

}  // namespace dendro
