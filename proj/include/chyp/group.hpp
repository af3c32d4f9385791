#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "chyp/domain.hpp"
#include "chyp/errors.hpp"
#include "chyp/geometry.hpp"
#include "chyp/linalg.hpp"

namespace chyp {

// Antidiagonal hermitian form (-1, 1, -1).
inline const Mat3& form_J() {
    static const Mat3 J = [] {
        Mat3 j;
        j(0, 2) = -1.0;
        j(1, 1) = 1.0;
        j(2, 0) = -1.0;
        return j;
    }();
    return J;
}

inline constexpr double default_unitarity_tol = 1e-10;

// max(|g* J g - J|, |g J g* - J|) in the entrywise max norm.
inline double unitarity_defect(const Mat3& g) {
    const Mat3& J = form_J();
    const Mat3 gs = g.adjoint();
    const double d1 = (gs * J * g - J).max_abs();
    const double d2 = (g * J * gs - J).max_abs();
    return std::max(d1, d2);
}

inline std::pair<bool, double> is_unitary(const Mat3& g, double tol = default_unitarity_tol) {
    const double d = unitarity_defect(g);
    return {d <= tol, d};
}

// Element of U(2,1) in the J-form realization. The matrix is held as given;
// products are never re-projected, the defect is monitored instead.
class GroupElement {
public:
    Mat3 m;

    GroupElement() : m(Mat3::identity()) {}

    explicit GroupElement(const Mat3& mat, double tol = default_unitarity_tol) : m(mat) {
        const auto [ok, defect] = is_unitary(mat, tol);
        if (!ok)
            throw invalid_parameter("matrix is not in U(2,1): defect " + std::to_string(defect));
    }

    static GroupElement identity() { return GroupElement(); }

    // g^{-1} = J g* J, exact up to rounding since J^2 = I.
    GroupElement inverse() const {
        GroupElement h;
        h.m = form_J() * m.adjoint() * form_J();
        return h;
    }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        GroupElement c;
        c.m = a.m * b.m;
        return c;
    }

    double defect() const { return unitarity_defect(m); }
};

inline cplx cocycle_j(const GroupElement& g, const DomainPoint& Z) { return cocycle_j(g.m, Z); }
inline cplx cocycle_j(const GroupElement& g, const BoundaryPoint& W) { return cocycle_j(g.m, W); }

inline DomainPoint act(const GroupElement& g, const DomainPoint& Z) {
    const auto im = moebius_image(g.m, Z.z1, Z.z2);
    return DomainPoint(im.z1, im.z2);
}

inline BoundaryPoint act(const GroupElement& g, const BoundaryPoint& W) {
    const auto im = moebius_image(g.m, W.w1(), W.w2());
    return BoundaryPoint::from_ambient(im.z1, im.z2);
}

// ---- Cayley transform between the unit ball B^2 and the Siegel domain ----

inline const Mat3& cayley_matrix() {
    static const Mat3 C = [] {
        const cplx omega(-0.5, 0.8660254037844386467637231707529362);
        Mat3 c;
        c(0, 0) = -std::conj(omega);
        c(0, 2) = -omega;
        c(1, 1) = 1.0;
        c(2, 0) = -1.0;
        c(2, 2) = 1.0;
        return c;
    }();
    return C;
}

inline const Mat3& cayley_matrix_inv() {
    static const Mat3 Ci = cayley_matrix().inverse();
    return Ci;
}

struct BallPoint {
    cplx w1{0.0, 0.0};
    cplx w2{0.0, 0.0};
    BallPoint() = default;
    BallPoint(cplx a, cplx b) : w1(a), w2(b) {
        if (std::norm(w1) + std::norm(w2) >= 1.0)
            throw invalid_parameter("point is not inside the unit ball");
    }
};

inline DomainPoint ball_to_siegel(const BallPoint& w) {
    const auto im = moebius_image(cayley_matrix(), w.w1, w.w2);
    return DomainPoint(im.z1, im.z2);
}

inline BallPoint siegel_to_ball(const DomainPoint& Z) {
    const auto im = moebius_image(cayley_matrix_inv(), Z.z1, Z.z2);
    return BallPoint(im.z1, im.z2);
}

// ---- Iwasawa factors -----------------------------------------------------

// n = [z, t]: unipotent Heisenberg translation.
inline GroupElement heisenberg_translation(cplx z, double t) {
    Mat3 n = Mat3::identity();
    n(0, 1) = z;
    n(0, 2) = cplx(0.5 * std::norm(z), t);
    n(1, 2) = std::conj(z);
    GroupElement g;
    g.m = n;
    return g;
}

// a = diag(rho^{-1}, 1, rho), rho > 0.
inline GroupElement dilation(double rho) {
    if (rho <= 0.0) throw invalid_parameter("dilation parameter must be positive");
    GroupElement g;
    g.m = Mat3::diag(1.0 / rho, 1.0, rho);
    return g;
}

// m = diag(beta, beta^{-2}, beta), |beta| = 1.
inline GroupElement torus_rotation(cplx beta) {
    if (std::abs(std::abs(beta) - 1.0) > 1e-12)
        throw invalid_parameter("torus parameter must be unimodular");
    GroupElement g;
    g.m = Mat3::diag(beta, 1.0 / (beta * beta), beta);
    return g;
}

struct IwasawaData {
    cplx z{0.0, 0.0};
    double t{0.0};
    double rho{1.0};
    cplx beta{1.0, 0.0};
};

// n(z,t) * a(rho) * m(beta)
inline GroupElement iwasawa_make(const IwasawaData& d) {
    return heisenberg_translation(d.z, d.t) * dilation(d.rho) * torus_rotation(d.beta);
}

// ---- stabilizer K of (-omega, 0) ------------------------------------------

// Explicit matrix of k = C diag(U, e^{i theta}) C^{-1} for
// U = [[alpha, beta], [gamma, delta]] in U(2).
inline Mat3 k_matrix(cplx alpha, cplx beta, cplx gamma, cplx delta, double theta) {
    const cplx omega(-0.5, 0.8660254037844386467637231707529362);
    const cplx eith = std::polar(1.0, theta);
    Mat3 k;
    k(0, 0) = -std::conj(omega) * alpha - omega * eith;
    k(0, 1) = -std::conj(omega) * beta;
    k(0, 2) = -alpha + eith;
    k(1, 0) = gamma;
    k(1, 1) = delta;
    k(1, 2) = omega * gamma;
    k(2, 0) = -alpha + eith;
    k(2, 1) = -beta;
    k(2, 2) = -omega * alpha - std::conj(omega) * eith;
    return k;
}

// 5-parameter chart of K: U = e^{i psi} SU(2)(t1, p1, p2), plus theta.
inline Mat3 k_from_params(const std::array<double, 5>& q) {
    const double t1 = q[0], p1 = q[1], p2 = q[2], psi = q[3], theta = q[4];
    const cplx ephase = std::polar(1.0, psi);
    const cplx alpha = ephase * std::polar(std::cos(t1), p1);
    const cplx beta = ephase * std::polar(std::sin(t1), p2);
    const cplx gamma = -ephase * std::polar(std::sin(t1), -p2);
    const cplx delta = ephase * std::polar(std::cos(t1), -p1);
    return k_matrix(alpha, beta, gamma, delta, theta);
}

struct NormalizePairResult {
    GroupElement T;
    double lambda; // exp(dist)
    int iterations;
    double final_residual;
};

// T1 of the double-transitivity construction: maps P to (-omega, 0).
inline GroupElement normalizing_translation(const DomainPoint& P) {
    const double rho = P.rho();
    const cplx z = P.z2;
    constexpr double half_sqrt3 = 0.8660254037844386467637231707529362;
    const double t = P.z1.imag() + half_sqrt3 * rho; // chart z1 = -omega rho + |z|^2/2 + it
    Mat3 n = Mat3::identity();
    n(0, 1) = -std::conj(z);
    n(0, 2) = cplx(0.5 * std::norm(z), -t);
    n(1, 2) = -z;
    GroupElement g;
    g.m = Mat3::diag(1.0 / std::sqrt(rho), 1.0, std::sqrt(rho)) * n;
    return g;
}

// Move (P, P2) to ((-omega, 0), (-lambda omega, 0)). The K-step is a damped
// Gauss-Newton solve over the 5-parameter stabilizer chart started from 8
// deterministic seeds; the paper only proves existence by a dimension count.
// The 4 real equations k(T1 P2) = (-lambda omega, 0) are solved in the
// Cayley-conjugated ball chart, where k acts linearly: the residual is then
// polynomial in the parameters and bounded, which Newton needs for large
// lambda (the Siegel form of the same equations blows up like lambda^2).
inline NormalizePairResult normalize_pair(const DomainPoint& P, const DomainPoint& P2,
                                          int max_iter = 200) {
    const double sep = std::abs(P.z1 - P2.z1) + std::abs(P.z2 - P2.z2);
    if (sep < 1e-14) throw invalid_parameter("normalize_pair requires distinct points");

    const cplx omega(-0.5, 0.8660254037844386467637231707529362);
    const double delta = invariants(P, P2).delta;
    const double lambda = delta + std::sqrt(std::max(delta * delta - 1.0, 0.0));

    const GroupElement T1 = normalizing_translation(P);
    const auto q1 = act(T1, P2);

    // ball coordinates of the moving point and of the target (-lambda omega, 0)
    const BallPoint qb = siegel_to_ball(q1);
    const auto t_im = moebius_image(cayley_matrix_inv(), -lambda * omega, cplx(0.0));
    const cplx tb1 = t_im.z1, tb2 = t_im.z2;

    auto residual = [&](const std::array<double, 5>& q, std::array<double, 4>& r) {
        // diag(U, e^{i theta}) acts on the ball as w -> e^{-i theta} U w
        const double t1 = q[0], p1 = q[1], p2 = q[2], psi = q[3], theta = q[4];
        const cplx phase = std::polar(1.0, psi - theta);
        const cplx alpha = phase * std::polar(std::cos(t1), p1);
        const cplx beta = phase * std::polar(std::sin(t1), p2);
        const cplx w1 = alpha * qb.w1 + beta * qb.w2 - tb1;
        const cplx w2 = -std::conj(beta / phase) * phase * qb.w1 +
                        std::conj(alpha / phase) * phase * qb.w2 - tb2;
        r[0] = w1.real();
        r[1] = w1.imag();
        r[2] = w2.real();
        r[3] = w2.imag();
        return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3]);
    };

    const std::array<std::array<double, 5>, 8> seeds = {{
        {0.3, 0.0, 0.0, 0.0, 0.0},
        {0.8, 1.0, -1.0, 0.5, 1.0},
        {1.2, -2.0, 2.0, -0.5, 2.5},
        {0.5, 3.0, 1.5, 1.5, -1.0},
        {1.0, -1.0, -2.5, 2.5, 0.7},
        {0.2, 2.0, -0.7, -2.0, -2.2},
        {1.4, 0.5, 0.9, 1.0, 3.0},
        {0.7, -2.8, 0.3, -1.2, 1.8},
    }};

    for (const auto& seed : seeds) {
        std::array<double, 5> q = seed;
        std::array<double, 4> r{};
        double rn = residual(q, r);
        for (int it = 0; it < max_iter; ++it) {
            if (rn < 5e-14) {
                NormalizePairResult out;
                out.T = GroupElement(k_from_params(q) * T1.m, 1e-8);
                out.lambda = lambda;
                out.iterations = it;
                out.final_residual = rn;
                return out;
            }
            // FD Jacobian, 4x5
            std::array<std::array<double, 5>, 4> Jc{};
            const double h = 1e-7;
            for (int c = 0; c < 5; ++c) {
                auto qp = q, qm = q;
                qp[c] += h;
                qm[c] -= h;
                std::array<double, 4> rp{}, rm{};
                residual(qp, rp);
                residual(qm, rm);
                for (int i = 0; i < 4; ++i) Jc[i][c] = (rp[i] - rm[i]) / (2.0 * h);
            }
            // minimum-norm Gauss-Newton step: dq = J^T (J J^T)^{-1} r
            std::array<std::array<double, 4>, 4> JJt{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = 0.0;
                    for (int c = 0; c < 5; ++c) s += Jc[i][c] * Jc[j][c];
                    JJt[i][j] = s;
                }
            for (int i = 0; i < 4; ++i) JJt[i][i] += 1e-12; // regularize
            std::array<double, 4> y{};
            try {
                y = solve_real<4>(JJt, r);
            } catch (const solver_failure&) {
                break; // singular normal equations; try next seed
            }
            std::array<double, 5> dq{};
            for (int c = 0; c < 5; ++c) {
                double s = 0.0;
                for (int i = 0; i < 4; ++i) s += Jc[i][c] * y[i];
                dq[c] = s;
            }
            double step = 1.0;
            bool accepted = false;
            for (int half = 0; half < 30; ++half) {
                std::array<double, 5> qn = q;
                for (int c = 0; c < 5; ++c) qn[c] -= step * dq[c];
                std::array<double, 4> rn4{};
                const double rnn = residual(qn, rn4);
                if (rnn < rn) {
                    q = qn;
                    r = rn4;
                    rn = rnn;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
        }
    }
    throw solver_failure("normalize_pair: stabilizer solve did not converge from any seed");
}

} // namespace chyp
