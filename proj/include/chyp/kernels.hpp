#pragma once

#include <cmath>
#include <complex>

#include "chyp/domain.hpp"
#include "chyp/errors.hpp"
#include "chyp/gamma.hpp"
#include "chyp/geometry.hpp"
#include "chyp/hypergeometric.hpp"

namespace chyp {

struct SpectralParam {
    cplx s{1.5, 0.0};
    int k{0};
};

// Value of a kernel together with the pairing arguments whose complex powers
// produced it. branch_warning flags an argument on or across the closed
// negative real axis, where the principal branch is discontinuous.
struct KernelValue {
    cplx value{};
    cplx rho_zw{};
    cplx rho_conj{};
    bool branch_warning{false};
};

inline bool crosses_branch_cut(cplx z) {
    return z.real() <= 0.0 && std::abs(z.imag()) < 1e-14 * std::max(1.0, -z.real());
}

// ---- weight-0 Poisson kernel ----------------------------------------------

inline double poisson_kernel(const DomainPoint& Z, const BoundaryPoint& W) {
    const cplx q = rho_pair(Z, W);
    if (std::abs(q) < 1e-14) throw boundary_collision("rho(Z,W) ~ 0");
    return Z.rho() / std::norm(q);
}

inline cplx poisson_pow(const DomainPoint& Z, const BoundaryPoint& W, cplx s) {
    return std::exp(s * std::log(poisson_kernel(Z, W)));
}

// ---- weight-k Poisson kernel  P_k = rho(Z)^s rho(Z,W)^{k-s} rho(cZ,cW)^{-k-s}

inline KernelValue poisson_weight(const DomainPoint& Z, const BoundaryPoint& W,
                                  const SpectralParam& p) {
    const cplx q = rho_pair(Z, W);
    const cplx qc = rho_pair_conj(Z, W);
    if (std::abs(q) < 1e-14 || std::abs(qc) < 1e-14)
        throw boundary_collision("rho(Z,W) ~ 0");
    KernelValue out;
    out.rho_zw = q;
    out.rho_conj = qc;
    out.branch_warning = crosses_branch_cut(q) || crosses_branch_cut(qc);
    const double k = p.k;
    out.value = std::exp(p.s * std::log(Z.rho()) + (k - p.s) * std::log(q) +
                         (-k - p.s) * std::log(qc));
    return out;
}

// ---- radial Green kernel  phi_s(u) ----------------------------------------

// phi_s(u) = Gamma(s)/(sqrt(pi) Gamma(s-1/2)) (1/4)^{s-1} u^{-s} F(s,s-1;2s-1;-1/u)
inline cplx green_radial(double u, cplx s) {
    if (u <= 0.0) throw singular_at_zero("green_radial needs u > 0");
    const cplx pref = gamma_ratio({s}, {s - 0.5}) / sqrt_pi_v;
    return pref * std::pow(cplx(0.25), s - 1.0) * std::pow(cplx(u), -s) *
           gauss_2f1(s, s - 1.0, 2.0 * s - 1.0, cplx(-1.0 / u));
}

// ---- weight-k point-pair kernel  K(Z,Z';k,s) --------------------------------

// Radial factor of Eq-(4.16)-type kernels: everything except the H_k phase.
//   pi^{3/2} Gamma(3/2-s) / ((|k|+1-s) Gamma(2-s)) 4^{1-s}
//     sigma^{-|k|} u^{|k|-s} F(s-|k|, s-1-|k|; 2s-1; -1/u)
inline cplx kernel_weight_radial(double u, int k, cplx s) {
    if (u < 1e-12) throw coincident_points("u < 1e-12 in weight-k kernel");
    const int ak = std::abs(k);
    const cplx denom_lin = cplx(double(ak) + 1.0) - s;
    if (std::abs(denom_lin) < 1e-8) throw pole_at_prefactor("|k|+1-s ~ 0");
    if (is_nonpositive_integer(cplx(1.5) - s, 1e-8))
        throw pole_at_prefactor("Gamma(3/2-s) pole");
    if (is_nonpositive_integer(cplx(2.0) - s, 1e-8))
        throw pole_at_prefactor("Gamma(2-s) pole");
    const double sigma = u + 1.0;
    const cplx pref = std::pow(pi_v, 1.5) * gamma_ratio({cplx(1.5) - s}, {cplx(2.0) - s}) /
                      denom_lin * std::pow(cplx(4.0), cplx(1.0) - s);
    return pref * std::pow(sigma, -double(ak)) * std::pow(cplx(u), cplx(double(ak)) - s) *
           gauss_2f1(s - double(ak), s - 1.0 - double(ak), 2.0 * s - 1.0, cplx(-1.0 / u));
}

// Unimodular phase carrying the weight: (rho(Z,Z')/|rho(Z,Z')|)^{2k} written
// as rho(Z,Z')^k rho(cZ,cZ')^{-k} over the interior pair.
inline cplx h_phase(const DomainPoint& Z, const DomainPoint& Z2, int k) {
    if (k == 0) return 1.0;
    const cplx q = rho_pair(Z, Z2);
    const cplx qc = rho_pair_conj(Z, Z2);
    cplx phase = 1.0;
    const cplx ratio = q / qc;
    for (int i = 0; i < std::abs(k); ++i) phase *= (k > 0 ? ratio : 1.0 / ratio);
    return phase;
}

inline KernelValue kernel_weight(const DomainPoint& Z, const DomainPoint& Z2,
                                 const SpectralParam& p) {
    KernelValue out;
    out.rho_zw = rho_pair(Z, Z2);
    out.rho_conj = rho_pair_conj(Z, Z2);
    out.branch_warning = crosses_branch_cut(out.rho_zw) || crosses_branch_cut(out.rho_conj);
    const double u = u_invariant(Z, Z2);
    out.value = h_phase(Z, Z2, p.k) * kernel_weight_radial(u, p.k, p.s);
    return out;
}

// ---- product-formula closed forms ------------------------------------------

namespace detail {

// Evaluate f at s0 through the symmetric 4-point Richardson limit; used where
// the two kernel terms have cancelling poles (removable points of the sum).
template <typename F>
cplx richardson_limit(F&& f, cplx s0, double eps) {
    const cplx g1 = 0.5 * (f(s0 + eps) + f(s0 - eps));
    const cplx g2 = 0.5 * (f(s0 + 2.0 * eps) + f(s0 - 2.0 * eps));
    return (4.0 * g1 - g2) / 3.0;
}

inline double distance_to_set(cplx s, std::initializer_list<double> pts) {
    double d = 1e30;
    for (double p : pts) d = std::min(d, std::abs(s - cplx(p)));
    return d;
}

} // namespace detail

// K_rad(u;k,s) + K_rad(u;k,2-s): the radial right-hand side of the weight-k
// product formula. Half-integer s values are removable singularities of the
// sum and are handled by extrapolation in s.
inline cplx product_formula_rhs_radial(double u, int k, cplx s) {
    auto f = [&](cplx ss) {
        return kernel_weight_radial(u, k, ss) + kernel_weight_radial(u, k, 2.0 - ss);
    };
    if (detail::distance_to_set(s, {0.5, 1.0, 1.5}) < 5e-3)
        return detail::richardson_limit(f, s, 2e-3);
    return f(s);
}

// Equivalent k=0 route through Cor-3.9-style c-factors:
//   -(pi/(s-1)) c(s) c(2-s) [ r(u;s) - r(u;2-s) ].
inline cplx product_formula_rhs_cfactor(double u, cplx s) {
    auto f = [&](cplx ss) {
        return -pi_v / (ss - 1.0) * c_factor(ss) * c_factor(2.0 - ss) *
               (green_radial(u, ss) - green_radial(u, 2.0 - ss));
    };
    if (detail::distance_to_set(s, {0.5, 1.0, 1.5}) < 5e-3)
        return detail::richardson_limit(f, s, 2e-3);
    return f(s);
}

// ---- SL(2,R) appendix kernels ----------------------------------------------

namespace sl2 {

inline void require_upper(cplx z) {
    if (z.imag() <= 0.0) throw invalid_parameter("point must lie in the upper half-plane");
}

inline double u_invariant(cplx z, cplx z2) {
    require_upper(z);
    require_upper(z2);
    return std::norm(z - z2) / (4.0 * z.imag() * z2.imag());
}

inline double sigma_invariant(cplx z, cplx z2) { return u_invariant(z, z2) + 1.0; }

inline double poisson_kernel(cplx z, double zeta) {
    require_upper(z);
    const double d = std::norm(std::conj(z) - zeta);
    if (d < 1e-28) throw boundary_collision("z above zeta");
    return z.imag() / d;
}

// P_k(z, zeta; s) = (conj z - zeta)^k (z - zeta)^{-k} P(z, zeta)^s
inline cplx poisson_weight(cplx z, double zeta, const SpectralParam& p) {
    const cplx num = std::conj(z) - zeta;
    const cplx den = z - zeta;
    cplx phase = 1.0;
    const cplx ratio = num / den;
    for (int i = 0; i < std::abs(p.k); ++i) phase *= (p.k > 0 ? ratio : 1.0 / ratio);
    return phase * std::exp(p.s * std::log(poisson_kernel(z, zeta)));
}

// Weight phase normalized so that h_phase(z, z, k) = 1, i.e. (-1)^k times the
// raw (conj z - w)^k (z - conj w)^{-k} ratio; the product formula selects this
// normalization (the raw ratio gives lhs = -rhs exactly for odd k).
inline cplx h_phase(cplx z, cplx w, int k) {
    if (k == 0) return 1.0;
    const cplx ratio = (w - std::conj(z)) / (z - std::conj(w));
    cplx phase = 1.0;
    for (int i = 0; i < std::abs(k); ++i) phase *= (k > 0 ? ratio : 1.0 / ratio);
    return phase;
}

// Radial part of the appendix kernel:
//   sqrt(pi) Gamma(1/2-s)/Gamma(1-s) 4^{-s} s/(s-|k|)
//     u^{|k|-s} (1+u)^{-|k|} F(s-|k|, s-|k|; 2s; -1/u)
inline cplx green_radial(double u, int k, cplx s) {
    if (u < 1e-12) throw coincident_points("u < 1e-12 in SL(2,R) kernel");
    const int ak = std::abs(k);
    if (std::abs(s - cplx(double(ak))) < 1e-8) throw pole_at_prefactor("s - |k| ~ 0");
    if (is_nonpositive_integer(cplx(0.5) - s, 1e-8))
        throw pole_at_prefactor("Gamma(1/2-s) pole");
    if (is_nonpositive_integer(cplx(1.0) - s, 1e-8))
        throw pole_at_prefactor("Gamma(1-s) pole");
    const cplx pref = sqrt_pi_v * gamma_ratio({cplx(0.5) - s}, {cplx(1.0) - s}) *
                      std::pow(cplx(4.0), -s) * s / (s - cplx(double(ak)));
    return pref * std::pow(cplx(u), cplx(double(ak)) - s) *
           std::pow(1.0 + u, -double(ak)) *
           gauss_2f1(s - double(ak), s - double(ak), 2.0 * s, cplx(-1.0 / u));
}

inline cplx green_kernel(cplx z, cplx z2, const SpectralParam& p) {
    return h_phase(z, z2, p.k) * green_radial(u_invariant(z, z2), p.k, p.s);
}

// K_rad(u;k,s) + K_rad(u;k,1-s); s = 1/2 is the removable point.
inline cplx product_formula_rhs_radial(double u, int k, cplx s) {
    auto f = [&](cplx ss) { return green_radial(u, k, ss) + green_radial(u, k, 1.0 - ss); };
    if (chyp::detail::distance_to_set(s, {0.5}) < 5e-3)
        return chyp::detail::richardson_limit(f, s, 2e-3);
    return f(s);
}

} // namespace sl2

} // namespace chyp
