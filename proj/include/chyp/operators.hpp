#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "chyp/domain.hpp"
#include "chyp/errors.hpp"
#include "chyp/group.hpp"
#include "chyp/kernels.hpp"

namespace chyp {

struct FdScheme {
    double h{1e-3};
    int order{2}; // 2 or 4
};

// Scalar field over the two complex coordinates (Siegel or ball model).
using Field = std::function<cplx(cplx, cplx)>;
// Scalar field over one complex coordinate (upper half-plane).
using Field1 = std::function<cplx(cplx)>;

namespace fd {

inline void displace(cplx& z1, cplx& z2, int axis, double d) {
    switch (axis) {
    case 0: z1 += cplx(d, 0.0); break;
    case 1: z1 += cplx(0.0, d); break;
    case 2: z2 += cplx(d, 0.0); break;
    default: z2 += cplx(0.0, d); break;
    }
}

inline cplx eval_at(const Field& f, cplx z1, cplx z2, int axis, double d) {
    displace(z1, z2, axis, d);
    return f(z1, z2);
}

inline cplx d1(const Field& f, cplx z1, cplx z2, int axis, const FdScheme& s) {
    const double h = s.h;
    if (s.order == 2)
        return (eval_at(f, z1, z2, axis, h) - eval_at(f, z1, z2, axis, -h)) / (2.0 * h);
    return (-eval_at(f, z1, z2, axis, 2 * h) + 8.0 * eval_at(f, z1, z2, axis, h) -
            8.0 * eval_at(f, z1, z2, axis, -h) + eval_at(f, z1, z2, axis, -2 * h)) /
           (12.0 * h);
}

inline cplx d2(const Field& f, cplx z1, cplx z2, int axis, const FdScheme& s) {
    const double h = s.h;
    if (s.order == 2)
        return (eval_at(f, z1, z2, axis, h) - 2.0 * f(z1, z2) +
                eval_at(f, z1, z2, axis, -h)) /
               (h * h);
    return (-eval_at(f, z1, z2, axis, 2 * h) + 16.0 * eval_at(f, z1, z2, axis, h) -
            30.0 * f(z1, z2) + 16.0 * eval_at(f, z1, z2, axis, -h) -
            eval_at(f, z1, z2, axis, -2 * h)) /
           (12.0 * h * h);
}

inline cplx dmixed(const Field& f, cplx z1, cplx z2, int ax1, int ax2, const FdScheme& s) {
    const double h = s.h;
    if (s.order == 2) {
        auto at = [&](double da, double db) {
            cplx a = z1, b = z2;
            displace(a, b, ax1, da);
            displace(a, b, ax2, db);
            return f(a, b);
        };
        return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
    }
    // nested 4th-order first derivatives
    Field g = [&, ax2](cplx a, cplx b) {
        Field inner = f;
        return d1(inner, a, b, ax2, FdScheme{s.h, 4});
    };
    return d1(g, z1, z2, ax1, FdScheme{s.h, 4});
}

} // namespace fd

// ---- Wirtinger derivative blocks -------------------------------------------

// d^2/dz1 dconj(z1)
inline cplx d_z1_z1bar(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    return 0.25 * (fd::d2(f, z1, z2, 0, s) + fd::d2(f, z1, z2, 1, s));
}
inline cplx d_z2_z2bar(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    return 0.25 * (fd::d2(f, z1, z2, 2, s) + fd::d2(f, z1, z2, 3, s));
}
// d^2/dconj(z1) dz2
inline cplx d_z1bar_z2(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    const cplx m02 = fd::dmixed(f, z1, z2, 0, 2, s);
    const cplx m03 = fd::dmixed(f, z1, z2, 0, 3, s);
    const cplx m12 = fd::dmixed(f, z1, z2, 1, 2, s);
    const cplx m13 = fd::dmixed(f, z1, z2, 1, 3, s);
    return 0.25 * (m02 - cplx(0, 1) * m03 + cplx(0, 1) * m12 + m13);
}
// d^2/dz1 dconj(z2)
inline cplx d_z1_z2bar(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    const cplx m02 = fd::dmixed(f, z1, z2, 0, 2, s);
    const cplx m03 = fd::dmixed(f, z1, z2, 0, 3, s);
    const cplx m12 = fd::dmixed(f, z1, z2, 1, 2, s);
    const cplx m13 = fd::dmixed(f, z1, z2, 1, 3, s);
    return 0.25 * (m02 + cplx(0, 1) * m03 - cplx(0, 1) * m12 + m13);
}
inline cplx d_z1(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    return 0.5 * (fd::d1(f, z1, z2, 0, s) - cplx(0, 1) * fd::d1(f, z1, z2, 1, s));
}
inline cplx d_z1bar(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    return 0.5 * (fd::d1(f, z1, z2, 0, s) + cplx(0, 1) * fd::d1(f, z1, z2, 1, s));
}
inline cplx d_z2(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    return 0.5 * (fd::d1(f, z1, z2, 2, s) - cplx(0, 1) * fd::d1(f, z1, z2, 3, s));
}
inline cplx d_z2bar(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    return 0.5 * (fd::d1(f, z1, z2, 2, s) + cplx(0, 1) * fd::d1(f, z1, z2, 3, s));
}

// ---- invariant operators on the Siegel domain --------------------------------

inline void require_inside_siegel(cplx z1, cplx z2, const FdScheme& s) {
    const double rho = 2.0 * z1.real() - std::norm(z2);
    const double margin = 2.0 * s.h * (2.0 + 4.0 * std::abs(z2) + 8.0 * s.h);
    if (rho <= margin)
        throw stencil_out_of_domain("rho(Z) = " + std::to_string(rho) +
                                    " too small for h = " + std::to_string(s.h));
}

// L_{(alpha,beta)} = rho(Z) [ (z1+cz1) d_{z1 cz1} + d_{z2 cz2} + z2 d_{cz1 z2}
//                             + cz2 d_{z1 cz2} + beta d_{z1} + alpha d_{cz1} ]
inline cplx apply_L_alpha_beta(const Field& f, cplx z1, cplx z2, cplx alpha, cplx beta,
                               const FdScheme& s) {
    require_inside_siegel(z1, z2, s);
    const double rho = 2.0 * z1.real() - std::norm(z2);
    cplx acc = (z1 + std::conj(z1)) * d_z1_z1bar(f, z1, z2, s) + d_z2_z2bar(f, z1, z2, s) +
               z2 * d_z1bar_z2(f, z1, z2, s) + std::conj(z2) * d_z1_z2bar(f, z1, z2, s);
    if (beta != cplx(0.0)) acc += beta * d_z1(f, z1, z2, s);
    if (alpha != cplx(0.0)) acc += alpha * d_z1bar(f, z1, z2, s);
    return rho * acc;
}

// L_k = L_{(k, -k)} sign pattern of Eq-1.3 type: second order part
//       - k (d_{z1} - d_{cz1}) inside the bracket.
inline cplx apply_L_weight(const Field& f, cplx z1, cplx z2, int k, const FdScheme& s) {
    return apply_L_alpha_beta(f, z1, z2, cplx(double(k)), cplx(-double(k)), s);
}

inline cplx apply_L(const Field& f, cplx z1, cplx z2, const FdScheme& s) {
    return apply_L_alpha_beta(f, z1, z2, 0.0, 0.0, s);
}

// ---- ball model --------------------------------------------------------------

inline void require_inside_ball(cplx w1, cplx w2, const FdScheme& s) {
    const double n = std::sqrt(std::norm(w1) + std::norm(w2));
    if (n >= 1.0 - 8.0 * s.h)
        throw stencil_out_of_domain("ball point too close to the sphere");
}

// Laplace-Beltrami operator on B^2.
inline cplx apply_ball_delta(const Field& f, cplx w1, cplx w2, const FdScheme& s) {
    require_inside_ball(w1, w2, s);
    const double factor = 1.0 - std::norm(w1) - std::norm(w2);
    return factor * ((1.0 - std::norm(w1)) * d_z1_z1bar(f, w1, w2, s) +
                     (1.0 - std::norm(w2)) * d_z2_z2bar(f, w1, w2, s) -
                     w1 * std::conj(w2) * d_z1_z2bar(f, w1, w2, s) -
                     std::conj(w1) * w2 * d_z1bar_z2(f, w1, w2, s));
}

// First-order vector fields X_{ij} corresponding to the matrix units E_{ij};
// coefficients in the order (d_{w1}, d_{w2}, d_{cw1}, d_{cw2}).
inline std::array<cplx, 4> x_field_coeffs(int i, int j, cplx w1, cplx w2) {
    const cplx cw1 = std::conj(w1), cw2 = std::conj(w2);
    if (i == 1 && j == 1) return {w1, 0.0, -cw1, 0.0};
    if (i == 2 && j == 2) return {0.0, w2, 0.0, -cw2};
    if (i == 3 && j == 3) return {-w1, -w2, cw1, cw2};
    if (i == 1 && j == 2) return {w2, 0.0, 0.0, -cw1};
    if (i == 2 && j == 1) return {0.0, w1, -cw2, 0.0}; // -conj(X12)
    if (i == 2 && j == 3) return {0.0, 1.0, -cw1 * cw2, -cw2 * cw2};
    if (i == 3 && j == 2) return {-w1 * w2, -w2 * w2, 0.0, 1.0}; // conj(X23)
    if (i == 1 && j == 3) return {1.0, 0.0, -cw1 * cw1, -cw1 * cw2};
    if (i == 3 && j == 1) return {-w1 * w1, -w1 * w2, 1.0, 0.0}; // conj(X13)
    throw invalid_parameter("X_{i,j} indices must be in 1..3");
}

inline cplx apply_x_field(int i, int j, const Field& f, cplx w1, cplx w2, const FdScheme& s) {
    const auto c = x_field_coeffs(i, j, w1, w2);
    cplx acc = 0.0;
    if (c[0] != cplx(0.0)) acc += c[0] * d_z1(f, w1, w2, s);
    if (c[1] != cplx(0.0)) acc += c[1] * d_z2(f, w1, w2, s);
    if (c[2] != cplx(0.0)) acc += c[2] * d_z1bar(f, w1, w2, s);
    if (c[3] != cplx(0.0)) acc += c[3] * d_z2bar(f, w1, w2, s);
    return acc;
}

// X_{ij} as a composable field (numeric composition of first-order stencils).
inline Field x_op(int i, int j, Field f, FdScheme s) {
    return [=](cplx a, cplx b) { return apply_x_field(i, j, f, a, b, s); };
}

struct CasimirResidual {
    double r1; // |D1 f - 2 Delta f| / scale
    double r2; // |D2 f + 3 Delta f| / scale
};

// Degree-2 and degree-3 Casimir sums, composed from first-order stencils.
inline CasimirResidual casimir_residual(const Field& f, cplx w1, cplx w2, FdScheme s) {
    require_inside_ball(w1, w2, s);
    auto X = [&](int i, int j, Field g) { return x_op(i, j, std::move(g), s); };
    auto at = [&](const Field& g) { return g(w1, w2); };

    // D1 = 2 (X11^2 + X22^2 + X11 X22 + X12 X21 + X23 X32 + X31 X13)
    const cplx d1v = 2.0 * (at(X(1, 1, X(1, 1, f))) + at(X(2, 2, X(2, 2, f))) +
                            at(X(1, 1, X(2, 2, f))) + at(X(1, 2, X(2, 1, f))) +
                            at(X(2, 3, X(3, 2, f))) + at(X(3, 1, X(1, 3, f))));

    // D2 = 3 [ X11 (X12 X21 - X32 X23 - X22^2) + X22 (X21 X12 - X31 X13 - X11^2)
    //          + X23 X31 X12 + X13 X32 X21 - X31 X13 - X32 X23 + X11 + X22 ]
    const cplx d2v =
        3.0 * (at(X(1, 1, X(1, 2, X(2, 1, f)))) - at(X(1, 1, X(3, 2, X(2, 3, f)))) -
               at(X(1, 1, X(2, 2, X(2, 2, f)))) + at(X(2, 2, X(2, 1, X(1, 2, f)))) -
               at(X(2, 2, X(3, 1, X(1, 3, f)))) - at(X(2, 2, X(1, 1, X(1, 1, f)))) +
               at(X(2, 3, X(3, 1, X(1, 2, f)))) + at(X(1, 3, X(3, 2, X(2, 1, f)))) -
               at(X(3, 1, X(1, 3, f))) - at(X(3, 2, X(2, 3, f))) + at(X(1, 1, f)) +
               at(X(2, 2, f)));

    const cplx lap = apply_ball_delta(f, w1, w2, s);
    const double scale = std::max(std::abs(f(w1, w2)), 1e-30);
    return {std::abs(d1v - 2.0 * lap) / std::max(scale, std::abs(2.0 * lap)),
            std::abs(d2v + 3.0 * lap) / std::max(scale, std::abs(3.0 * lap))};
}

// ---- SL(2,R) weight-k hyperbolic Laplacian -----------------------------------

// Delta_k = -(z - cz)^2 d^2/(dz dcz) - k (z - cz)(d/dz + d/dcz)
inline cplx apply_sl2_delta(const Field1& f, cplx z, int k, const FdScheme& s) {
    if (z.imag() <= 3.0 * s.h) throw stencil_out_of_domain("too close to the real axis");
    Field f2 = [&](cplx a, cplx) { return f(a); };
    const cplx zdiff = z - std::conj(z); // 2 i y
    const cplx dxx = fd::d2(f2, z, 0.0, 0, s);
    const cplx dyy = fd::d2(f2, z, 0.0, 1, s);
    const cplx dx = fd::d1(f2, z, 0.0, 0, s);
    // -(z-cz)^2 d_{z cz} = y^2 (dxx + dyy); (d_z + d_cz) = d_x
    return z.imag() * z.imag() * (dxx + dyy) - double(k) * zdiff * dx;
}

// ---- residual checks ----------------------------------------------------------

enum class OperatorId { L, Lk, LalphaBeta, DeltaBall, DeltaKSl2, Xij, D1, D2 };

inline double scale_of(cplx fval, cplx ref) {
    return std::max({std::abs(fval), std::abs(ref), 1e-30});
}

enum class EigenKind { poisson, poisson_k, eis_term };

// |L_k f - s(s-2) f| / scale for the kernel named by `kind`; poisson_k and
// eis_term check a single gamma-term of the series.
inline double eigen_residual(EigenKind kind, const SpectralParam& p, const DomainPoint& Z,
                             const BoundaryPoint& W, const FdScheme& s,
                             const GroupElement& gamma = GroupElement::identity()) {
    const cplx lambda = p.s * (p.s - 2.0);
    if (kind == EigenKind::poisson) {
        Field f = [&](cplx z1, cplx z2) {
            const cplx q = rho_pair(z1, z2, W.w1(), W.w2());
            const cplx rho = z1 + std::conj(z1) - z2 * std::conj(z2);
            return std::exp(p.s * std::log(rho / (q * std::conj(q))));
        };
        const cplx Lf = apply_L(f, Z.z1, Z.z2, s);
        const cplx fv = f(Z.z1, Z.z2);
        return std::abs(Lf - lambda * fv) / scale_of(fv, lambda * fv);
    }
    Field f = [&](cplx z1, cplx z2) {
        const cplx j = cocycle_j(gamma.m, z1, z2);
        const auto im = moebius_image(gamma.m, z1, z2);
        cplx phase = 1.0;
        const cplx ratio = std::conj(j) / j;
        for (int i = 0; i < std::abs(p.k); ++i) phase *= (p.k > 0 ? ratio : 1.0 / ratio);
        const cplx rho = im.z1 + std::conj(im.z1) - im.z2 * std::conj(im.z2);
        if (kind == EigenKind::eis_term) return phase * std::exp(p.s * std::log(rho));
        const cplx q = rho_pair(im.z1, im.z2, W.w1(), W.w2());
        const cplx qc = rho_pair_conj(im.z1, im.z2, W.w1(), W.w2());
        return phase * std::exp(p.s * std::log(rho) + (cplx(double(p.k)) - p.s) * std::log(q) +
                                (cplx(-double(p.k)) - p.s) * std::log(qc));
    };
    const cplx Lf = apply_L_weight(f, Z.z1, Z.z2, p.k, s);
    const cplx fv = f(Z.z1, Z.z2);
    return std::abs(Lf - lambda * fv) / scale_of(fv, lambda * fv);
}

// Residual of u(u+1) f'' + (3u+2) f' + s(2-s) f = 0 for f = phi_s, by 1-D FD.
inline double green_ode_residual(double u, cplx s, const FdScheme& scheme) {
    if (u <= 4.0 * scheme.h) throw stencil_out_of_domain("u too small for the radial stencil");
    const FdScheme s4{scheme.h, 4};
    Field f1 = [&](cplx uu, cplx) { return green_radial(uu.real(), s); };
    const cplx f = green_radial(u, s);
    const cplx fp = fd::d1(f1, cplx(u), 0.0, 0, s4);
    const cplx fpp = fd::d2(f1, cplx(u), 0.0, 0, s4);
    const cplx res = u * (u + 1.0) * fpp + (3.0 * u + 2.0) * fp + s * (2.0 - s) * f;
    return std::abs(res) / std::max(std::abs(f), 1e-30);
}

// Residual of the weight-k radial equation
//   Phi'' + (1/sig + 2/(sig-1)) Phi' + [k^2/sig - s(s-2)]/(sig(sig-1)) Phi = 0
// for Phi(sig) = radial kernel factor at u = sig - 1.
inline double weight_ode_residual(double sigma, int k, cplx s, const FdScheme& scheme) {
    if (sigma <= 1.0 + 4.0 * scheme.h)
        throw stencil_out_of_domain("sigma too close to 1 for the radial stencil");
    const FdScheme s4{scheme.h, 4};
    Field f1 = [&](cplx ss, cplx) { return kernel_weight_radial(ss.real() - 1.0, k, s); };
    const cplx f = f1(cplx(sigma), 0.0);
    const cplx fp = fd::d1(f1, cplx(sigma), 0.0, 0, s4);
    const cplx fpp = fd::d2(f1, cplx(sigma), 0.0, 0, s4);
    const cplx res = fpp + (1.0 / sigma + 2.0 / (sigma - 1.0)) * fp +
                     (double(k) * double(k) / sigma - s * (s - 2.0)) /
                         (sigma * (sigma - 1.0)) * f;
    return std::abs(res) / std::max(std::abs(f), 1e-30);
}

// |L_k[f(g x) j^{-k} cj^{k}](Z) - j^{-k} cj^{k} (L_k f)(g Z)| / scale  (Prop 4.2 form)
inline double covariance_residual(const GroupElement& g, const Field& f, const DomainPoint& Z,
                                  int k, const FdScheme& s) {
    Field pulled = [&](cplx z1, cplx z2) {
        const auto im = moebius_image(g.m, z1, z2);
        const cplx j = cocycle_j(g.m, z1, z2);
        cplx phase = 1.0;
        const cplx ratio = std::conj(j) / j;
        for (int i = 0; i < std::abs(k); ++i) phase *= (k > 0 ? ratio : 1.0 / ratio);
        return f(im.z1, im.z2) * phase;
    };
    const cplx lhs = apply_L_weight(pulled, Z.z1, Z.z2, k, s);

    const auto gz = moebius_image(g.m, Z.z1, Z.z2);
    const cplx j = cocycle_j(g.m, Z.z1, Z.z2);
    cplx phase = 1.0;
    const cplx ratio = std::conj(j) / j;
    for (int i = 0; i < std::abs(k); ++i) phase *= (k > 0 ? ratio : 1.0 / ratio);
    const cplx rhs = phase * apply_L_weight(f, gz.z1, gz.z2, k, s);

    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
}

// Prop 4.1 single-term annihilation: L_{(alpha,beta)} [j^{-alpha} cj^{-beta}] = 0.
inline double annihilation_residual(cplx alpha, cplx beta, const GroupElement& g,
                                    const DomainPoint& Z, const FdScheme& s) {
    Field f = [&](cplx z1, cplx z2) {
        const cplx j = cocycle_j(g.m, z1, z2);
        return std::exp(-alpha * std::log(j) - beta * std::log(std::conj(j)));
    };
    const cplx val = apply_L_alpha_beta(f, Z.z1, Z.z2, alpha, beta, s);
    const cplx fv = f(Z.z1, Z.z2);
    return std::abs(val) / std::max(std::abs(fv), 1e-30);
}

} // namespace chyp
