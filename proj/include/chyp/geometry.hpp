#pragma once

#include <cmath>
#include <complex>

#include "chyp/domain.hpp"
#include "chyp/errors.hpp"
#include "chyp/linalg.hpp"

namespace chyp {

// Point-pair data for an interior pair:
//   sigma = |rho(Z,Z')|^2 / (rho(Z) rho(Z')),  u = sigma - 1,
//   delta = (sigma + 1)/2 = cosh(dist).
struct PairInvariants {
    double rho_z{};
    double rho_w{};
    cplx rho_pair{};
    double sigma{};
    double u{};
    double delta{};
    double dist{};
};

inline double sigma_invariant(const DomainPoint& Z, const DomainPoint& W) {
    return std::norm(rho_pair(Z, W)) / (Z.rho() * W.rho());
}

inline double u_invariant(const DomainPoint& Z, const DomainPoint& W) {
    return sigma_invariant(Z, W) - 1.0;
}

// arccosh with a series fallback where delta - 1 underflows the direct form.
inline double acosh_stable(double delta) {
    const double e = delta - 1.0;
    if (e < 0.0) return 0.0; // rounding below 1
    if (e < 1e-8) return std::sqrt(2.0 * e) * (1.0 - e / 12.0);
    return std::log(delta + std::sqrt(delta * delta - 1.0));
}

inline PairInvariants invariants(const DomainPoint& Z, const DomainPoint& W) {
    PairInvariants p;
    p.rho_z = Z.rho();
    p.rho_w = W.rho();
    p.rho_pair = rho_pair(Z, W);
    p.sigma = std::norm(p.rho_pair) / (p.rho_z * p.rho_w);
    p.u = p.sigma - 1.0;
    p.delta = 0.5 * (p.sigma + 1.0);
    p.dist = acosh_stable(p.delta);
    return p;
}

inline double distance(const DomainPoint& Z, const DomainPoint& W) {
    return invariants(Z, W).dist;
}

// Relative defect of rho(g(Z),g(W)) conj(j(g,Z)) j(g,W) = rho(Z,W).
template <typename P1, typename P2>
double transform_residual(const Mat3& g, const P1& Z, const P2& W);

inline double transform_residual_impl(const Mat3& g, cplx z1, cplx z2, cplx w1, cplx w2) {
    const auto gz = moebius_image(g, z1, z2);
    const auto gw = moebius_image(g, w1, w2);
    const cplx lhs =
        rho_pair(gz.z1, gz.z2, gw.z1, gw.z2) * std::conj(cocycle_j(g, z1, z2)) * cocycle_j(g, w1, w2);
    const cplx rhs = rho_pair(z1, z2, w1, w2);
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

template <>
inline double transform_residual(const Mat3& g, const DomainPoint& Z, const DomainPoint& W) {
    return transform_residual_impl(g, Z.z1, Z.z2, W.z1, W.z2);
}
template <>
inline double transform_residual(const Mat3& g, const DomainPoint& Z, const BoundaryPoint& W) {
    return transform_residual_impl(g, Z.z1, Z.z2, W.w1(), W.w2());
}
template <>
inline double transform_residual(const Mat3& g, const BoundaryPoint& Z, const BoundaryPoint& W) {
    return transform_residual_impl(g, Z.w1(), Z.w2(), W.w1(), W.w2());
}

struct TriangleCheck {
    double lhs, mid, rhs;
    bool ok;
};

// delta three-point inequality with the constant 72:
//   delta(Q,R) / (72 delta(P,Q)) <= delta(P,R) <= 72 delta(P,Q) delta(Q,R).
inline TriangleCheck triangle_check(const DomainPoint& P, const DomainPoint& Q,
                                    const DomainPoint& R) {
    const double dpq = invariants(P, Q).delta;
    const double dqr = invariants(Q, R).delta;
    const double dpr = invariants(P, R).delta;
    TriangleCheck t;
    t.lhs = dqr / (72.0 * dpq);
    t.mid = dpr;
    t.rhs = 72.0 * dpq * dqr;
    // tiny slack for rounding on extreme near-boundary configurations
    t.ok = (t.lhs <= t.mid * (1.0 + 1e-12)) && (t.mid <= t.rhs * (1.0 + 1e-12));
    return t;
}

struct TraceFormulaCheck {
    // delta(P,gP)+delta(Q,gQ)+delta(P,gQ)+delta(Q,gP) with P=(-w,0), Q=(-conj w,0)
    double lhs_sum4, rhs_sum4;
    // delta((1,0), g(1,0))
    double lhs_single, rhs_single;
};

inline TraceFormulaCheck trace_formula_check(const Mat3& g) {
    constexpr double half_sqrt3 = 0.8660254037844386467637231707529362;
    const DomainPoint P{cplx(0.5, -half_sqrt3), 0.0}; // -omega
    const DomainPoint Q{cplx(0.5, half_sqrt3), 0.0};  // -conj(omega)
    const DomainPoint One{cplx(1.0, 0.0), 0.0};

    auto im = [&](const DomainPoint& X) {
        const auto gx = moebius_image(g, X.z1, X.z2);
        return DomainPoint(gx.z1, gx.z2);
    };
    const DomainPoint gP = im(P), gQ = im(Q), gOne = im(One);

    TraceFormulaCheck r;
    r.lhs_sum4 = invariants(P, gP).delta + invariants(Q, gQ).delta + invariants(P, gQ).delta +
                 invariants(Q, gP).delta;
    auto n2 = [&](int i, int j) { return std::norm(g(i, j)); };
    r.rhs_sum4 = 2.5 + 2.0 * (n2(0, 0) + n2(0, 2) + n2(2, 0) + n2(2, 2)) +
                 (n2(0, 1) + n2(2, 1) + n2(1, 0) + n2(1, 2)) + 0.5 * n2(1, 1);

    r.lhs_single = invariants(One, gOne).delta;
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += n2(i, j);
    r.rhs_single = 5.0 / 8.0 + s / 8.0;
    return r;
}

} // namespace chyp
