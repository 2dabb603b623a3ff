#pragma once

#include "rational.hpp"

#include <string>
#include <string_view>

namespace leavitt {

/// Which ring involution the coefficient field carries. On Q only the
/// identity is available; on Q(i) both the identity and complex
/// conjugation are supported.
enum class Involution { identity, conjugation };

struct FieldConfig {
    Involution involution = Involution::conjugation;
    // when set, scalars are required to stay in Q (im == 0 throughout)
    bool restrict_to_rationals = false;
};

/// Element of Q(i): re + im*i with exact rational parts.
class Scalar {
  public:
    Scalar() = default;
    Scalar(long n) : re_(n) {}
    Scalar(Rational re) : re_(std::move(re)) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational &re() const { return re_; }
    const Rational &im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_rational() const { return im_.is_zero(); }
    bool is_one() const { return im_.is_zero() && re_ == Rational(1); }

    Scalar operator-() const { return {-re_, -im_}; }
    Scalar operator+(const Scalar &o) const { return {re_ + o.re_, im_ + o.im_}; }
    Scalar operator-(const Scalar &o) const { return {re_ - o.re_, im_ - o.im_}; }
    Scalar operator*(const Scalar &o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }
    Scalar operator/(const Scalar &o) const {
        // multiply by the complex conjugate; |o|^2 = 0 iff o = 0 over Q
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        if (n.is_zero())
            throw division_by_zero{};
        Rational nr = (re_ * o.re_ + im_ * o.im_) / n;
        Rational ni = (im_ * o.re_ - re_ * o.im_) / n;
        return {nr, ni};
    }
    Scalar &operator+=(const Scalar &o) { return *this = *this + o; }
    Scalar &operator-=(const Scalar &o) { return *this = *this - o; }
    Scalar &operator*=(const Scalar &o) { return *this = *this * o; }

    bool operator==(const Scalar &o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const Scalar &o) const { return !(*this == o); }

  private:
    Rational re_, im_;
};

inline Scalar star(const Scalar &a, const FieldConfig &cfg) {
    if (cfg.involution == Involution::conjugation)
        return {a.re(), -a.im()};
    return a;
}

/// Membership in the positive cone { sums of a*star(a) } of the configured
/// involutive field. For (Q, id) and (Q(i), conj) the cone is the
/// nonnegative rationals; for (Q(i), id) every element is a difference-free
/// sum of squares since -1 = i*i, so the cone is the whole field.
inline bool in_positive_cone(const Scalar &a, const FieldConfig &cfg) {
    if (cfg.restrict_to_rationals || cfg.involution == Involution::conjugation)
        return a.im().is_zero() && a.re().sign() >= 0;
    return true;
}

/// True when sums of nonzero a*star(a) can never vanish, i.e. the cone is a
/// genuine positivity notion. Fails exactly for (Q(i), id).
inline bool is_positive_definite(const FieldConfig &cfg) {
    if (cfg.restrict_to_rationals)
        return true;
    return cfg.involution == Involution::conjugation;
}

// ---- text form ----------------------------------------------------------
// scalar := rat | [rat '*'] 'i' | rat (('+'|'-') (rat '*')? 'i')
// with rat := ['-'] digits ['/' digits]; spaces allowed around '+'/'-'.

namespace detail {

inline void skip_ws(std::string_view s, size_t &pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t'))
        ++pos;
}

// parses ['-'] digits ['/' digits] starting at pos, advancing pos
inline std::optional<Rational> parse_rat_at(std::string_view s, size_t &pos) {
    size_t j = pos;
    if (j < s.size() && s[j] == '-')
        ++j;
    size_t d0 = j;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9')
        ++j;
    if (j == d0)
        return std::nullopt;
    if (j < s.size() && s[j] == '/') {
        size_t d1 = ++j;
        while (j < s.size() && s[j] >= '0' && s[j] <= '9')
            ++j;
        if (j == d1)
            return std::nullopt;
    }
    auto r = Rational::parse(s.substr(pos, j - pos));
    if (r)
        pos = j;
    return r;
}

} // namespace detail

/// Parses a scalar starting at `pos`, advancing `pos` past what was
/// consumed. Returns nullopt (pos untouched) if no scalar starts here.
inline std::optional<Scalar> parse_scalar_at(std::string_view s, size_t &pos) {
    auto ident_char = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_' || c == '\'';
    };
    size_t p = pos;
    Rational re(0), im(0);
    bool saw_real = false;

    auto bare_i_at = [&](size_t at) {
        return at < s.size() && s[at] == 'i' &&
               (at + 1 >= s.size() || !ident_char(s[at + 1]));
    };
    if (bare_i_at(p)) {
        im = Rational(1);
        pos = p + 1;
        return Scalar(re, im);
    }
    if (p < s.size() && s[p] == '-' && bare_i_at(p + 1)) {
        im = Rational(-1);
        pos = p + 2;
        return Scalar(re, im);
    }
    auto first = detail::parse_rat_at(s, p);
    if (!first)
        return std::nullopt;
    if (p < s.size() && s[p] == '*' && bare_i_at(p + 1)) {
        im = *first;
        pos = p + 2;
        return Scalar(re, im);
    }
    re = *first;
    saw_real = true;

    size_t q = p;
    detail::skip_ws(s, q);
    if (q < s.size() && (s[q] == '+' || s[q] == '-')) {
        bool minus = s[q] == '-';
        ++q;
        detail::skip_ws(s, q);
        if (bare_i_at(q)) {
            im = Rational(minus ? -1 : 1);
            pos = q + 1;
            return Scalar(re, im);
        }
        size_t r = q;
        auto part = detail::parse_rat_at(s, r);
        if (part && r < s.size() && s[r] == '*' && bare_i_at(r + 1)) {
            im = minus ? -*part : *part;
            pos = r + 2;
            return Scalar(re, im);
        }
        // no imaginary tail: the '+'/'-' belongs to the caller
    }
    (void)saw_real;
    pos = p;
    return Scalar(re, im);
}

/// Parses a complete scalar literal; the whole string must be consumed.
inline std::optional<Scalar> parse_scalar(std::string_view s, const FieldConfig &cfg = {}) {
    size_t pos = 0;
    detail::skip_ws(s, pos);
    auto v = parse_scalar_at(s, pos);
    if (!v)
        return std::nullopt;
    detail::skip_ws(s, pos);
    if (pos != s.size())
        return std::nullopt;
    if (cfg.restrict_to_rationals && !v->is_rational())
        return std::nullopt;
    return v;
}

inline std::string to_string(const Scalar &a) {
    auto imag = [](const Rational &r) -> std::string {
        if (r == Rational(1))
            return "i";
        if (r == Rational(-1))
            return "-i";
        return r.str() + "*i";
    };
    if (a.im().is_zero())
        return a.re().str();
    if (a.re().is_zero())
        return imag(a.im());
    std::string out = a.re().str();
    out += a.im().sign() < 0 ? " - " : " + ";
    Rational m = a.im().sign() < 0 ? -a.im() : a.im();
    out += m == Rational(1) ? "i" : m.str() + "*i";
    return out;
}

} // namespace leavitt
