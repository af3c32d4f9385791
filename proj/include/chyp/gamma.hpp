#pragma once

#include <cmath>
#include <complex>

#include "chyp/errors.hpp"

namespace chyp {

using cplx = std::complex<double>;

inline constexpr double pi_v = 3.14159265358979323846264338327950288;
inline constexpr double sqrt_pi_v = 1.77245385090551602729816748334114518;

inline bool is_nonpositive_integer(std::complex<double> z, double tol = 1e-12) {
    const double r = std::round(z.real());
    return std::abs(z.imag()) <= tol && r <= 0.5 && std::abs(z.real() - r) <= tol;
}

inline bool is_near_integer(std::complex<double> z, double tol = 1e-8) {
    return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

namespace detail {
// Lanczos, g = 7, 9 coefficients.
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
} // namespace detail

// log Gamma(z) up to an integer multiple of 2*pi*i; exponentiating always
// yields Gamma(z) itself, which is all the library relies on.
inline std::complex<double> log_gamma(std::complex<double> z) {
    using cd = std::complex<double>;
    if (is_nonpositive_integer(z)) throw pole_guard("log_gamma at a non-positive integer");
    if (z.real() < 0.5) {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
        return std::log(pi_v / std::sin(pi_v * z)) - log_gamma(cd(1.0) - z);
    }
    cd x = detail::lanczos_c[0];
    const cd zm1 = z - cd(1.0);
    for (int i = 1; i < 9; ++i) x += detail::lanczos_c[i] / (zm1 + cd(i));
    const cd t = zm1 + cd(detail::lanczos_g + 0.5);
    return 0.5 * std::log(2.0 * pi_v) + (zm1 + cd(0.5)) * std::log(t) - t + std::log(x);
}

inline std::complex<double> gamma_fn(std::complex<double> z) {
    return std::exp(log_gamma(z));
}

// Product of Gamma over numerator arguments divided by the denominator ones.
// A pole among the denominators sends the ratio to zero; a pole among the
// numerators throws unless a denominator pole cancels it -- callers guard.
inline std::complex<double> gamma_ratio(std::initializer_list<std::complex<double>> num,
                                        std::initializer_list<std::complex<double>> den) {
    std::complex<double> acc = 0.0;
    for (auto z : num) {
        if (is_nonpositive_integer(z)) throw pole_guard("gamma_ratio numerator pole");
        acc += log_gamma(z);
    }
    for (auto z : den) {
        if (is_nonpositive_integer(z)) return 0.0;
        acc -= log_gamma(z);
    }
    return std::exp(acc);
}

// c(s) = sqrt(pi) Gamma(s - 1/2) / Gamma(s), the Harish-Chandra-type factor
// of the product formulas.
inline std::complex<double> c_factor(std::complex<double> s) {
    return sqrt_pi_v * gamma_ratio({s - 0.5}, {s});
}

} // namespace chyp
