#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "buildings/error.hpp"

namespace buildings {

namespace detail {

inline std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < -INT64_MAX) throw Error(ErrorCode::Overflow, "rational component exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

/// Exact rational number, always reduced with a positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    int sign() const { return (num_ > 0) - (num_ < 0); }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return from128(-static_cast<__int128>(num_), den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p/q" form, used in every serialized file.
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    /// Accepts "p/q", "p" or "-p/q".
    static Rational parse(std::string_view s) {
        auto parse_int = [&](std::string_view t) {
            if (t.empty()) throw Error(ErrorCode::ParseError, "empty rational component in '" + std::string(s) + "'");
            std::size_t i = 0;
            bool neg = false;
            if (t[0] == '-' || t[0] == '+') {
                neg = t[0] == '-';
                i = 1;
            }
            if (i == t.size()) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'");
            __int128 v = 0;
            for (; i < t.size(); ++i) {
                if (t[i] < '0' || t[i] > '9') throw Error(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'");
                v = v * 10 + (t[i] - '0');
                if (v > INT64_MAX) throw Error(ErrorCode::ParseError, "rational out of range '" + std::string(s) + "'");
            }
            return static_cast<std::int64_t>(neg ? -v : v);
        };
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(s));
        std::int64_t d = parse_int(s.substr(slash + 1));
        if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
        return Rational(parse_int(s.substr(0, slash)), d);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    static Rational from128(__int128 n, __int128 d) {
        Rational r;
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = detail::gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        r.num_ = detail::narrow(n);
        r.den_ = detail::narrow(d);
        return r;
    }
    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        *this = from128(n, d);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// a + b*sqrt(3) with rational a, b. The pair is canonical since sqrt(3) is irrational.
struct Sqrt3Scalar {
    Rational a;
    Rational b;

    static Sqrt3Scalar rational(Rational r) { return {r, 0}; }
    /// (sqrt(3)/2) * r
    static Sqrt3Scalar half_sqrt3(Rational r) { return {0, r / 2}; }

    friend Sqrt3Scalar operator+(const Sqrt3Scalar& x, const Sqrt3Scalar& y) { return {x.a + y.a, x.b + y.b}; }
    friend Sqrt3Scalar operator-(const Sqrt3Scalar& x, const Sqrt3Scalar& y) { return {x.a - y.a, x.b - y.b}; }
    friend Sqrt3Scalar operator*(const Sqrt3Scalar& x, const Sqrt3Scalar& y) {
        return {x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    /// Division by sqrt(3): (a + b√3)/√3 = b + (a/3)√3.
    Sqrt3Scalar div_sqrt3() const { return {b, a / 3}; }

    int sign() const {
        // sign of a + b√3 decided exactly by comparing a² with 3b² when signs differ
        int sa = a.sign(), sb = b.sign();
        if (sa == 0) return sb;
        if (sb == 0 || sa == sb) return sa;
        Rational lhs = a * a, rhs = 3 * b * b;
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }

    friend bool operator==(const Sqrt3Scalar&, const Sqrt3Scalar&) = default;
    friend std::strong_ordering operator<=>(const Sqrt3Scalar& x, const Sqrt3Scalar& y) {
        int s = (x - y).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const { return a.to_double() + b.to_double() * 1.7320508075688772; }
    std::string str() const { return a.str() + " + " + b.str() + "*sqrt(3)"; }
};

enum class NamedAngle { Zero, PiOver3, PiOver2, TwoPiOver3, Pi };

inline std::string_view to_string(NamedAngle a) {
    switch (a) {
    case NamedAngle::Zero: return "0";
    case NamedAngle::PiOver3: return "pi/3";
    case NamedAngle::PiOver2: return "pi/2";
    case NamedAngle::TwoPiOver3: return "2pi/3";
    case NamedAngle::Pi: return "pi";
    }
    return "?";
}

/// An angle in [0, pi], stored as the sign and square of its cosine.
/// Ordering follows the angle: a < b means a is the smaller angle (larger cosine).
class ExactCosine {
public:
    ExactCosine() = default;
    ExactCosine(int sign, Rational cos_squared) : sign_(sign), cos2_(cos_squared) {
        if ((sign == 0) != cos2_.is_zero() || cos2_ < 0 || cos2_ > 1 || sign < -1 || sign > 1)
            throw std::invalid_argument("inconsistent exact cosine");
    }

    static ExactCosine of(NamedAngle a) {
        switch (a) {
        case NamedAngle::Zero: return {1, 1};
        case NamedAngle::PiOver3: return {1, Rational(1, 4)};
        case NamedAngle::PiOver2: return {0, 0};
        case NamedAngle::TwoPiOver3: return {-1, Rational(1, 4)};
        case NamedAngle::Pi: return {-1, 1};
        }
        return {};
    }

    int sign() const { return sign_; }
    const Rational& cos_squared() const { return cos2_; }

    /// sign * cos^2, monotone in the cosine.
    Rational signed_cos_squared() const { return sign_ < 0 ? -cos2_ : cos2_; }

    double radians() const {
        double c = std::sqrt(cos2_.to_double());
        return std::acos(sign_ < 0 ? -c : c);
    }

    friend bool operator==(const ExactCosine&, const ExactCosine&) = default;
    friend std::strong_ordering operator<=>(const ExactCosine& x, const ExactCosine& y) {
        // larger cosine = smaller angle
        return y.signed_cos_squared() <=> x.signed_cos_squared();
    }

    std::string str() const { return "(" + std::to_string(sign_) + ", " + cos2_.str() + ")"; }

private:
    int sign_ = 0;
    Rational cos2_ = 0;
};

inline bool is_angle(const ExactCosine& c, NamedAngle named) { return c == ExactCosine::of(named); }

inline std::optional<NamedAngle> named_angle(const ExactCosine& c) {
    for (NamedAngle a : {NamedAngle::Zero, NamedAngle::PiOver3, NamedAngle::PiOver2, NamedAngle::TwoPiOver3, NamedAngle::Pi})
        if (is_angle(c, a)) return a;
    return std::nullopt;
}

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;

inline Rational bilinear(const RationalVector& u, const RationalVector& v, const RationalMatrix& gram) {
    Rational s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        Rational row = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) row += gram[i][j] * v[j];
        s += u[i] * row;
    }
    return s;
}

inline ExactCosine cosine_from_products(const Rational& uv, const Rational& uu, const Rational& vv) {
    if (uu.is_zero() || vv.is_zero()) throw Error(ErrorCode::ZeroVector, "cosine of a zero vector");
    return ExactCosine(uv.sign(), uv * uv / (uu * vv));
}

/// Exact cosine of the angle between u and v under the given Gram matrix.
inline ExactCosine cos_between(const RationalVector& u, const RationalVector& v, const RationalMatrix& gram) {
    if (u.size() != v.size() || gram.size() != u.size()) throw std::invalid_argument("dimension mismatch");
    return cosine_from_products(bilinear(u, v, gram), bilinear(u, u, gram), bilinear(v, v, gram));
}

}  // namespace buildings

template <>
struct std::hash<buildings::Rational> {
    std::size_t operator()(const buildings::Rational& r) const noexcept {
        return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
    }
};
