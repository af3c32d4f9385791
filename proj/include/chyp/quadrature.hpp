#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "chyp/domain.hpp"
#include "chyp/errors.hpp"
#include "chyp/gamma.hpp"
#include "chyp/group.hpp"
#include "chyp/kernels.hpp"
#include "chyp/report.hpp"

namespace chyp {

namespace quad {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr std::array<double, 8> gl16_x = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr std::array<double, 8> gl16_w = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <typename F>
cplx gl_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc = 0.0;
    for (int i = 0; i < 8; ++i) {
        acc += gl16_w[i] * (f(mid + half * gl16_x[i]) + f(mid - half * gl16_x[i]));
    }
    return acc * half;
}

// composite GL over [a, b] with n panels
template <typename F>
cplx composite(F&& f, double a, double b, int n) {
    cplx acc = 0.0;
    const double w = (b - a) / n;
    for (int p = 0; p < n; ++p) acc += gl_panel(f, a + p * w, a + (p + 1) * w);
    return acc;
}

inline void check_finite(cplx v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw non_finite("integrand sample is not finite");
}

// Double-exponential trapezoid over (0, infinity): zeta = scale e^{(pi/2) sinh t}.
// Handles algebraic endpoint behavior and algebraic tails at near-exponential
// rates, fractional exponents included. Deterministic term order.
template <typename F>
cplx de_exp_sinh(F&& f, double scale, double step, double* tail_frac = nullptr) {
    constexpr double t_cap = 4.6; // zeta spans ~ 10^{+-34}; far past any tail here
    auto term = [&](double t) {
        const double sh = 0.5 * pi_v * std::sinh(t);
        if (std::abs(sh) > 700.0) return cplx(0.0);
        const double zeta = scale * std::exp(sh);
        const double jac = zeta * 0.5 * pi_v * std::cosh(t);
        const cplx v = f(zeta) * jac;
        quad::check_finite(v);
        return v;
    };
    cplx acc = term(0.0);
    for (int dir : {+1, -1}) {
        int quiet = 0;
        double last = 0.0;
        bool converged = false;
        for (int i = 1; i * step <= t_cap; ++i) {
            const cplx v = term(dir * i * step);
            acc += v;
            last = std::abs(v);
            if (last <= 1e-18 * std::abs(acc) + 1e-300) {
                if (++quiet >= 4) {
                    converged = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if (!converged && tail_frac)
            *tail_frac = std::max(*tail_frac, last / std::max(std::abs(acc), 1e-300));
    }
    return acc * step;
}

// Double-exponential trapezoid over the whole line: x = scale sinh((pi/2) sinh t).
template <typename F>
cplx de_sinh_sinh(F&& f, double scale, double step) {
    constexpr double t_cap = 4.6;
    auto term = [&](double t) {
        const double sh = 0.5 * pi_v * std::sinh(t);
        if (std::abs(sh) > 700.0) return cplx(0.0);
        const double x = scale * std::sinh(sh);
        const double jac = scale * std::cosh(sh) * 0.5 * pi_v * std::cosh(t);
        const cplx v = f(x) * jac;
        quad::check_finite(v);
        return v;
    };
    cplx acc = term(0.0);
    for (int dir : {+1, -1}) {
        int quiet = 0;
        for (int i = 1; i * step <= t_cap; ++i) {
            const cplx v = term(dir * i * step);
            acc += v;
            if (std::abs(v) <= 1e-18 * std::abs(acc) + 1e-300) {
                if (++quiet >= 4) break;
            } else {
                quiet = 0;
            }
        }
    }
    return acc * step;
}

} // namespace quad

// ---- core integrators --------------------------------------------------------

// Integral over the real line (double-exponential in both tails).
template <typename F>
cplx integrate_real_line(F&& f, const QuadConfig& cfg, double scale = 1.0) {
    return quad::de_sinh_sinh(f, scale, 2.0 / cfg.cells);
}

// Integral of g over the right half-plane {Re xi > 0} with the Lebesgue area
// measure, in polar coordinates: Gauss-Legendre panels in the angle times a
// double-exponential radial rule. Smooth integrands only. A non-negligible
// trapezoid term at the truncation cap is reported through tail_frac.
template <typename G>
cplx integrate_halfplane(G&& g, const QuadConfig& cfg, double scale = 1.0,
                         double* tail_frac = nullptr) {
    const int n_theta = std::max(6, cfg.cells / 2);
    auto radial = [&](double zeta) {
        auto h = [&](double th) {
            const cplx v = g(std::polar(zeta, th));
            quad::check_finite(v);
            return v;
        };
        return quad::composite(h, -0.5 * pi_v, 0.5 * pi_v, n_theta) * zeta;
    };
    return quad::de_exp_sinh(radial, scale, 2.0 / cfg.cells, tail_frac);
}

// Integral over the right half-plane of  s_pow(xi) * g(xi)  where
// s_pow(xi) = conj(xi)^{p_conj} xi^{p_plain} is singular at the origin and g
// is smooth. Dyadic radial grading toward 0 plus an analytic core estimate;
// per-depth contributions are reported through `increments`.
template <typename G>
cplx integrate_halfplane_singular(G&& g, cplx p_conj, cplx p_plain, const QuadConfig& cfg,
                                  double scale, std::vector<double>* increments = nullptr) {
    const int n_theta = std::max(4, cfg.cells / 2);
    auto theta_integral = [&](double zeta) {
        auto h = [&](double th) {
            const cplx xi = std::polar(zeta, th);
            const cplx v = std::pow(std::conj(xi), p_conj) * std::pow(xi, p_plain) * g(xi);
            quad::check_finite(v);
            return v;
        };
        return quad::composite(h, -0.5 * pi_v, 0.5 * pi_v, n_theta) * zeta;
    };

    // outer region zeta in (scale, infinity)
    auto outer = [&](double xi) {
        const double t = 0.5 * pi_v * xi;
        const double zeta = scale + scale * std::tan(t);
        const double jac = scale * 0.5 * pi_v / (std::cos(t) * std::cos(t));
        return theta_integral(zeta) * jac;
    };
    cplx total = quad::composite(outer, 0.0, 1.0, cfg.cells);

    // dyadic shells [scale 2^{-j-1}, scale 2^{-j}]
    double hi = scale;
    for (int j = 0; j < cfg.refine_depth; ++j) {
        const double lo = 0.5 * hi;
        const cplx shell = quad::composite(theta_integral, lo, hi, 2);
        total += shell;
        if (increments) increments->push_back(std::abs(shell));
        hi = lo;
    }

    // analytic core: g ~ g(0), radial integral of zeta^{p_conj+p_plain+1}
    const cplx p_tot = p_conj + p_plain;
    if (p_tot.real() <= -2.0)
        throw singularity_unresolved("non-integrable exponent at the boundary point");
    const cplx g0 = g(cplx(0.0, 0.0));
    auto ang = [&](double th) {
        return std::exp(cplx(0.0, th) * (p_plain - p_conj));
    };
    const cplx ang_int = quad::composite(ang, -0.5 * pi_v, 0.5 * pi_v, 8);
    const cplx core = g0 * ang_int * std::pow(hi, p_tot + 2.0) / (p_tot + 2.0);
    total += core;
    if (increments) increments->push_back(std::abs(core));
    return total;
}

// Full boundary integral of f(w, v) over C x R: angular trapezoid in arg(w)
// (periodic, spectrally accurate) times a half-plane integral in
// xi = |w|^2/2 + i v, whose area element absorbs the radial Jacobian.
template <typename F>
cplx integrate_boundary(F&& f, const QuadConfig& cfg, double scale = 1.0) {
    const int n = cfg.theta_points;
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * pi_v * i / n;
        auto g = [&](cplx xi) {
            const double r = std::sqrt(std::max(2.0 * xi.real(), 0.0));
            return f(std::polar(r, th), xi.imag());
        };
        acc += integrate_halfplane(g, cfg, scale);
    }
    return acc * (2.0 * pi_v / n);
}

// ---- identity drivers ----------------------------------------------------------

namespace detail_q {

inline bool on_real_slice(const DomainPoint& Z) {
    return std::abs(Z.z1.imag()) < 1e-13 && std::abs(Z.z2) < 1e-13;
}

inline std::string spectral_str(cplx s, int k) {
    return "s=" + fmt_double(s.real()) +
           (s.imag() != 0.0 ? "+" + fmt_double(s.imag()) + "i" : "") +
           ",k=" + std::to_string(k);
}

} // namespace detail_q

// Prop-3.11-type Poisson integral: quadrature of P(Z,W)^s dm(W) at
// Z = (rho/2, 0) against (pi/(s-1)) c(s) 4^{s-1} rho^{2-s}.
inline IdentityReport verify_poisson_integral(cplx s, double rho, const QuadConfig& cfg) {
    if (s.real() <= 1.0) throw invalid_parameter("poisson integral needs Re(s) > 1");
    const double scale = std::max(1.0, 0.5 * rho);
    double tail = 0.0;
    auto lhs_at = [&](int cells_mult) {
        QuadConfig c = cfg;
        c.cells *= cells_mult;
        auto g = [&](cplx xi) {
            const cplx q = 0.5 * rho + xi;
            return std::exp(s * std::log(rho / std::norm(q)));
        };
        return 2.0 * pi_v * integrate_halfplane(g, c, scale, &tail);
    };
    const cplx coarse = lhs_at(1);
    const cplx fine = lhs_at(2);
    const double est = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
    if (tail > cfg.rel_tol)
        throw slow_decay("tail term at the truncation cap is " + fmt_double(tail) +
                         " of the integral");
    if (est > std::max(100.0 * cfg.rel_tol, 1e-4))
        throw slow_decay("cell doubling still moves the Poisson integral by " +
                         fmt_double(est));
    const cplx rhs = pi_v / (s - 1.0) * c_factor(s) * std::pow(cplx(4.0), s - 1.0) *
                     std::pow(rho, 2.0 - s);
    auto rep = make_report("prop-3-11",
                           detail_q::spectral_str(s, 0) + ",rho=" + fmt_double(rho), fine,
                           rhs, cfg, est);
    return rep;
}

// Product formula: quadrature of P_k(Z,W;s) P_{-k}(Z',W;2-s) dm(W) against
// K(Z,Z';k,s) + K(Z,Z';k,2-s). Fast 2-D path on the real slice, angular
// trapezoid otherwise.
inline IdentityReport verify_product_formula(const DomainPoint& Z, const DomainPoint& Z2,
                                             const SpectralParam& p, const QuadConfig& cfg) {
    if (std::abs(p.s - 1.0) < 1e-6) throw pole_guard("product formula at s ~ 1");
    const cplx s = p.s;
    const int k = p.k;
    const double u = u_invariant(Z, Z2);

    cplx lhs;
    double est = 0.0;
    if (detail_q::on_real_slice(Z) && detail_q::on_real_slice(Z2)) {
        const double rho = Z.rho(), rho2 = Z2.rho();
        const double scale = std::max({1.0, 0.5 * rho, 0.5 * rho2});
        auto lhs_at = [&](int mult) {
            QuadConfig c = cfg;
            c.cells *= mult;
            auto g = [&](cplx xi) {
                const cplx q = 0.5 * rho + xi, q2 = 0.5 * rho2 + xi;
                const cplx phase_q = std::pow(q / std::conj(q), double(k));
                const cplx phase_q2 = std::pow(q2 / std::conj(q2), -double(k));
                return phase_q * phase_q2 *
                       std::exp(s * std::log(rho / std::norm(q)) +
                                (2.0 - s) * std::log(rho2 / std::norm(q2)));
            };
            return 2.0 * pi_v * integrate_halfplane(g, c, scale);
        };
        const cplx coarse = lhs_at(1);
        lhs = lhs_at(2);
        est = std::abs(lhs - coarse) / std::max(std::abs(lhs), 1e-300);
    } else {
        auto f = [&](cplx w, double v) {
            const BoundaryPoint W{w, v};
            return poisson_weight(Z, W, {s, k}).value *
                   poisson_weight(Z2, W, {2.0 - s, -k}).value;
        };
        const cplx coarse = integrate_boundary(f, cfg, 1.0 + 0.5 * std::max(Z.rho(), Z2.rho()));
        QuadConfig c2 = cfg;
        c2.cells *= 2;
        lhs = integrate_boundary(f, c2, 1.0 + 0.5 * std::max(Z.rho(), Z2.rho()));
        est = std::abs(lhs - coarse) / std::max(std::abs(lhs), 1e-300);
    }

    const cplx h = h_phase(Z, Z2, k);
    const cplx rhs = h * product_formula_rhs_radial(u, k, s);
    auto rep = make_report(k == 0 ? "thm-3-7" : "thm-4-10",
                           detail_q::spectral_str(s, k) + ",u=" + fmt_double(u), lhs, rhs,
                           cfg, est);
    return rep;
}

// Functional equation for the trivial group (Cor 3.10 / Cor 4.12): boundary
// integral of P_k(Z,W;s) rho(W,W')^{s+k-2} rho(cW,cW')^{s-k-2} dm(W) at
// W' = boundary origin, against the closed-form multiple of P_k(Z,W';2-s).
inline IdentityReport verify_trivial_functional_eq(const DomainPoint& Z_in,
                                                   const BoundaryPoint& W2,
                                                   const SpectralParam& p,
                                                   const QuadConfig& cfg) {
    if (p.s.real() <= 1.0)
        throw invalid_parameter("functional equation needs Re(s) > 1");
    const cplx s = p.s;
    const int k = p.k;

    // translate W2 to the boundary origin: j == 1, every factor invariant
    DomainPoint Z = Z_in;
    if (std::abs(W2.w) > 0.0 || std::abs(W2.v) > 0.0) {
        const GroupElement mover =
            heisenberg_translation(std::conj(W2.w), W2.v).inverse();
        Z = act(mover, Z_in);
    }
    if (!detail_q::on_real_slice(Z))
        throw invalid_parameter(
            "functional-equation quadrature supports configurations that are "
            "axially symmetric about W' (Z on the real slice after translation)");

    const double rho = Z.rho();
    const double scale = std::max(1.0, 0.5 * rho);
    std::vector<double> increments;
    auto g = [&](cplx xi) {
        const cplx q = 0.5 * rho + xi;
        const cplx qc = 0.5 * rho + std::conj(xi);
        return std::exp(s * std::log(rho) + (cplx(double(k)) - s) * std::log(q) +
                        (cplx(-double(k)) - s) * std::log(qc));
    };
    // rho(W, W') = conj(xi), rho(cW, cW') = xi
    const cplx lhs = 2.0 * pi_v *
                     integrate_halfplane_singular(g, s + double(k) - 2.0,
                                                  s - double(k) - 2.0, cfg, scale,
                                                  &increments);
    // doubling estimate on the smooth outer part only would be cheap; reuse
    // the shell decay as the quality signal instead
    double est = increments.empty() ? 0.0
                                    : increments.back() / std::max(std::abs(lhs), 1e-300);
    for (std::size_t i = 2; i + 1 < increments.size() && i + 4 > increments.size(); ++i)
        if (increments[i + 1] > increments[i] * 1.5 && increments[i + 1] > 1e-13 * std::abs(lhs))
            throw singularity_unresolved("refinement increments are not decreasing");

    const cplx pref = std::pow(pi_v, 1.5) * gamma_ratio({s - 0.5}, {s}) /
                      (double(std::abs(k)) + s - 1.0) * std::pow(cplx(4.0), s - 1.0);
    const cplx pk_at = std::exp((2.0 - s) * std::log(rho) +
                                (cplx(double(k)) - (2.0 - s)) * std::log(cplx(0.5 * rho)) +
                                (cplx(-double(k)) - (2.0 - s)) * std::log(cplx(0.5 * rho)));
    const cplx rhs = pref * pk_at;
    auto rep = make_report(k == 0 ? "cor-3-10" : "cor-4-12", detail_q::spectral_str(s, k),
                           lhs, rhs, cfg, est);
    rep.refine_increments = std::move(increments);
    return rep;
}

// dm(g(W)) = |j(g, W)|^{-4} dm(W): FD Jacobian of the boundary action in the
// chart (Re w, Im w, v) against the cocycle power.
inline double measure_jacobian_check(const GroupElement& g, const BoundaryPoint& W) {
    const double h = 1e-5;
    auto image = [&](double a, double b, double c) {
        const BoundaryPoint X{{W.w.real() + a, W.w.imag() + b}, W.v + c};
        const BoundaryPoint Y = act(g, X);
        return std::array<double, 3>{Y.w.real(), Y.w.imag(), Y.v};
    };
    double Jm[3][3];
    for (int col = 0; col < 3; ++col) {
        const double da = col == 0 ? h : 0.0, db = col == 1 ? h : 0.0, dc = col == 2 ? h : 0.0;
        const auto up = image(da, db, dc), dn = image(-da, -db, -dc);
        for (int row = 0; row < 3; ++row) Jm[row][col] = (up[row] - dn[row]) / (2.0 * h);
    }
    const double det = Jm[0][0] * (Jm[1][1] * Jm[2][2] - Jm[1][2] * Jm[2][1]) -
                       Jm[0][1] * (Jm[1][0] * Jm[2][2] - Jm[1][2] * Jm[2][0]) +
                       Jm[0][2] * (Jm[1][0] * Jm[2][1] - Jm[1][1] * Jm[2][0]);
    const double expected = std::pow(std::norm(cocycle_j(g, W)), -2.0);
    return std::abs(std::abs(det) - expected) / expected;
}

// SL(2,R) product formula: 1-D quadrature of P_k(z,zeta;s) P_{-k}(z',zeta;1-s)
// over the real boundary against K(z,z';k,s) + K(z,z';k,1-s).
inline IdentityReport sl2_product_formula(cplx z, cplx z2, const SpectralParam& p,
                                          const QuadConfig& cfg) {
    const cplx s = p.s;
    const int k = p.k;
    const double u = sl2::u_invariant(z, z2);
    if (u < 1e-12) throw coincident_points("sl2 product formula at z = z'");
    const double scale = std::max({1.0, std::abs(z), std::abs(z2)});
    auto lhs_at = [&](int mult) {
        QuadConfig c = cfg;
        c.cells *= mult;
        auto f = [&](double zeta) {
            return sl2::poisson_weight(z, zeta, {s, k}) *
                   sl2::poisson_weight(z2, zeta, {1.0 - s, -k});
        };
        return integrate_real_line(f, c, scale);
    };
    const cplx coarse = lhs_at(1);
    const cplx lhs = lhs_at(2);
    const double est = std::abs(lhs - coarse) / std::max(std::abs(lhs), 1e-300);
    const cplx rhs = sl2::h_phase(z, z2, k) * sl2::product_formula_rhs_radial(u, k, s);
    return make_report("sl2-product",
                       detail_q::spectral_str(s, k) + ",u=" + fmt_double(u), lhs, rhs, cfg,
                       est);
}

} // namespace chyp
