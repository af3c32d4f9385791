#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "chyp/errors.hpp"

namespace chyp {

// Element of the ring O = Z + Z[omega] of Q(sqrt(-3)), stored as
// (a + b*sqrt(-3))/2 with a == b (mod 2). omega = (-1+sqrt(-3))/2.
// All arithmetic is exact on 64-bit coordinates; overflow throws.
class EisInt {
public:
    constexpr EisInt() : a_(0), b_(0) {}

    EisInt(std::int64_t a, std::int64_t b) : a_(a), b_(b) {
        if (((a ^ b) & 1) != 0)
            throw invalid_parameter("EisInt coordinates must have equal parity");
    }

    static EisInt from_int(std::int64_t n) { return EisInt(mul_checked(n, 2), 0); }
    static EisInt zero() { return EisInt(); }
    static EisInt one() { return EisInt(2, 0); }
    static EisInt omega() { return EisInt(-1, 1); }
    static EisInt omega_bar() { return EisInt(-1, -1); }
    static EisInt sqrt_minus3() { return EisInt(0, 2); }

    // Coordinates in the (1, omega) integer basis: x = m + n*omega.
    static EisInt from_basis(std::int64_t m, std::int64_t n) {
        return EisInt(sub_checked(mul_checked(m, 2), n), n);
    }
    std::int64_t basis_m() const { return (a_ + b_) / 2; }
    std::int64_t basis_n() const { return b_; }

    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }

    // "Im" in the integer basis a + b*sqrt(-3), a,b in Z; defined only when
    // the half-coordinates are even. The half-basis accessor is b()/2-valued
    // in general -- see im_half_basis().
    std::int64_t im_integer_basis() const {
        if (b_ % 2 != 0) throw invalid_parameter("element is not of the form a + b*sqrt(-3), a,b in Z");
        return b_ / 2;
    }
    // sqrt(-3)-coefficient in the half basis: x = (a + b*sqrt(-3))/2 -> b/2 as a rational.
    double im_half_basis() const { return static_cast<double>(b_) / 2.0; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_unit() const { return norm() == 1; }

    friend bool operator==(const EisInt& x, const EisInt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const EisInt& x, const EisInt& y) { return !(x == y); }
    friend bool operator<(const EisInt& x, const EisInt& y) {
        return x.a_ != y.a_ ? x.a_ < y.a_ : x.b_ < y.b_;
    }

    friend EisInt operator+(const EisInt& x, const EisInt& y) {
        return EisInt(add_checked(x.a_, y.a_), add_checked(x.b_, y.b_), unchecked_tag{});
    }
    friend EisInt operator-(const EisInt& x, const EisInt& y) {
        return EisInt(sub_checked(x.a_, y.a_), sub_checked(x.b_, y.b_), unchecked_tag{});
    }
    friend EisInt operator-(const EisInt& x) {
        return EisInt(sub_checked(0, x.a_), sub_checked(0, x.b_), unchecked_tag{});
    }
    friend EisInt operator*(const EisInt& x, const EisInt& y) {
        // ((a + b r)(c + d r))/4 with r^2 = -3  ->  half-coordinates
        // ((ac - 3bd)/2, (ad + bc)/2); both quotients are exact by parity.
        const std::int64_t ac = mul_checked(x.a_, y.a_);
        const std::int64_t bd = mul_checked(x.b_, y.b_);
        const std::int64_t ad = mul_checked(x.a_, y.b_);
        const std::int64_t bc = mul_checked(x.b_, y.a_);
        return EisInt(sub_checked(ac, mul_checked(3, bd)) / 2, add_checked(ad, bc) / 2,
                      unchecked_tag{});
    }

    EisInt conj() const { return EisInt(a_, -b_, unchecked_tag{}); }

    // Field norm x * conj(x) = (a^2 + 3 b^2)/4, a non-negative integer.
    std::int64_t norm() const {
        const std::int64_t aa = mul_checked(a_, a_);
        const std::int64_t bb = mul_checked(b_, b_);
        return add_checked(aa, mul_checked(3, bb)) / 4;
    }

    std::complex<double> embed() const {
        constexpr double half_sqrt3 = 0.8660254037844386467637231707529362;
        return {static_cast<double>(a_) / 2.0, static_cast<double>(b_) * half_sqrt3};
    }

    std::string str() const {
        return "(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    }

private:
    struct unchecked_tag {};
    EisInt(std::int64_t a, std::int64_t b, unchecked_tag) : a_(a), b_(b) {}

    static std::int64_t add_checked(std::int64_t x, std::int64_t y) {
        std::int64_t r;
        if (__builtin_add_overflow(x, y, &r)) throw overflow_error("EisInt add");
        return r;
    }
    static std::int64_t sub_checked(std::int64_t x, std::int64_t y) {
        std::int64_t r;
        if (__builtin_sub_overflow(x, y, &r)) throw overflow_error("EisInt sub");
        return r;
    }
    static std::int64_t mul_checked(std::int64_t x, std::int64_t y) {
        std::int64_t r;
        if (__builtin_mul_overflow(x, y, &r)) throw overflow_error("EisInt mul");
        return r;
    }

    std::int64_t a_, b_;
};

// The six units {+-1, +-omega, +-conj(omega)} in a fixed order.
inline const std::array<EisInt, 6>& eis_units() {
    static const std::array<EisInt, 6> u = {
        EisInt::one(),       -EisInt::one(),
        EisInt::omega(),     -EisInt::omega(),
        EisInt::omega_bar(), -EisInt::omega_bar()};
    return u;
}

// Associate with argument in [0, pi/3): unique representative of x modulo
// units. In half-coordinates the sector is {a > 0, 0 <= b < a}.
inline EisInt canonical_associate(const EisInt& x) {
    if (x.is_zero()) return x;
    for (const EisInt& u : eis_units()) {
        const EisInt y = x * u;
        if (y.a() > 0 && y.b() >= 0 && y.b() < y.a()) return y;
    }
    throw error("canonical_associate: no unit lands in the sector (unreachable)");
}

// Rounded division: q minimizing-ish N(x - q y); exact enough for the
// Euclidean algorithm since O is norm-Euclidean.
inline EisInt eis_div_round(const EisInt& x, const EisInt& y) {
    if (y.is_zero()) throw invalid_parameter("division by zero EisInt");
    const EisInt num = x * y.conj();
    const std::int64_t n = y.norm();
    auto round_div = [](std::int64_t p, std::int64_t q) -> std::int64_t {
        // nearest integer to p/q, q > 0, ties toward +infinity
        std::int64_t r = (p >= 0 ? (2 * p + q) : (2 * p - q + 1)) / (2 * q);
        return r;
    };
    return EisInt::from_basis(round_div(num.basis_m(), n), round_div(num.basis_n(), n));
}

inline EisInt eis_mod(const EisInt& x, const EisInt& y) {
    return x - eis_div_round(x, y) * y;
}

inline bool eis_divides(const EisInt& d, const EisInt& x) {
    if (d.is_zero()) return x.is_zero();
    return eis_mod(x, d).is_zero();
}

// gcd normalized to the canonical associate. gcd(0,0) is an error.
inline EisInt eis_gcd(EisInt x, EisInt y) {
    if (x.is_zero() && y.is_zero()) throw invalid_parameter("gcd(0,0)");
    while (!y.is_zero()) {
        EisInt r = eis_mod(x, y);
        x = y;
        y = r;
    }
    return canonical_associate(x);
}

// Text forms accepted by the CLI: "(a,b)" and "a/2+b/2*sqrt(-3)".
inline EisInt eis_parse(const std::string& text) {
    auto fail = [&] { throw invalid_parameter("cannot parse EisInt from '" + text + "'"); };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) fail();
    try {
        if (s.front() == '(') {
            const auto comma = s.find(',');
            const auto close = s.find(')');
            if (comma == std::string::npos || close == std::string::npos) fail();
            return EisInt(std::stoll(s.substr(1, comma - 1)),
                          std::stoll(s.substr(comma + 1, close - comma - 1)));
        }
        const auto slash = s.find("/2");
        if (slash == std::string::npos) return EisInt::from_int(std::stoll(s));
        const std::int64_t a = std::stoll(s.substr(0, slash));
        auto rest = s.substr(slash + 2);
        if (rest.empty()) return EisInt(a, 0);
        if (rest.front() != '+' && rest.front() != '-') fail();
        if (rest.front() == '+') rest.erase(0, 1);
        const auto tail = rest.find("/2*sqrt(-3)");
        if (tail == std::string::npos) fail();
        return EisInt(a, std::stoll(rest.substr(0, tail)));
    } catch (const std::invalid_argument&) {
        fail();
    } catch (const std::out_of_range&) {
        fail();
    }
    return EisInt(); // unreachable
}

} // namespace chyp
