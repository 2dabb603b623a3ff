#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace leavitt {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Backed by GMP; the wrapper guarantees canonical form on
/// every construction path (mpq_class does not canonicalize string input).
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) {
        if (d == 0)
            throw division_by_zero{};
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    static std::optional<Rational> parse(std::string_view text);

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    const mpz_class &num() const { return v_.get_num(); }
    const mpz_class &den() const { return v_.get_den(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational &o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational &o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational &o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational &o) const {
        if (o.is_zero())
            throw division_by_zero{};
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }
    Rational &operator/=(const Rational &o) { return *this = *this / o; }

    Rational inverse() const {
        if (is_zero())
            throw division_by_zero{};
        return Rational(mpq_class(1 / v_));
    }

    bool operator==(const Rational &o) const { return v_ == o.v_; }
    bool operator!=(const Rational &o) const { return v_ != o.v_; }
    bool operator<(const Rational &o) const { return v_ < o.v_; }
    bool operator<=(const Rational &o) const { return v_ <= o.v_; }
    bool operator>(const Rational &o) const { return v_ > o.v_; }
    bool operator>=(const Rational &o) const { return v_ >= o.v_; }

    std::string str() const { return v_.get_str(); }

  private:
    mpq_class v_;
};

inline std::optional<Rational> Rational::parse(std::string_view text) {
    // accepts "n" and "n/d" with an optional leading '-', digits only
    if (text.empty())
        return std::nullopt;
    size_t i = 0;
    bool neg = false;
    if (text[i] == '-') {
        neg = true;
        ++i;
    }
    auto digits = [&](size_t &j) {
        size_t start = j;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9')
            ++j;
        return j > start;
    };
    size_t j = i;
    if (!digits(j))
        return std::nullopt;
    std::string num(text.substr(i, j - i));
    std::string den = "1";
    if (j < text.size() && text[j] == '/') {
        size_t k = ++j;
        if (!digits(j))
            return std::nullopt;
        den = std::string(text.substr(k, j - k));
    }
    if (j != text.size())
        return std::nullopt;
    mpz_class n(num), d(den);
    if (d == 0)
        return std::nullopt;
    mpq_class q(neg ? mpz_class(-n) : n, d);
    return Rational(std::move(q));
}

} // namespace leavitt
