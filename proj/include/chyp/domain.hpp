#pragma once

#include <cmath>
#include <complex>

#include "chyp/errors.hpp"
#include "chyp/linalg.hpp"

namespace chyp {

// Interior point Z = (z1, z2) of the Siegel domain S2 = { rho(Z) > 0 } with
// rho(Z) = z1 + conj(z1) - |z2|^2.
struct DomainPoint {
    cplx z1{0.5, 0.0};
    cplx z2{0.0, 0.0};

    DomainPoint() = default;
    DomainPoint(cplx a, cplx b) : z1(a), z2(b) {
        if (rho() <= 0.0)
            throw invalid_parameter("point is not interior: rho(Z) <= 0");
    }

    double rho() const { return 2.0 * z1.real() - std::norm(z2); }
};

// Boundary point W parameterized by (w, v) in C x R; embeds as
// W = (|w|^2/2 + i v, w), so rho(W) = 0 identically.
struct BoundaryPoint {
    cplx w{0.0, 0.0};
    double v{0.0};

    BoundaryPoint() = default;
    BoundaryPoint(cplx w_, double v_) : w(w_), v(v_) {}

    cplx w1() const { return {0.5 * std::norm(w), v}; }
    cplx w2() const { return w; }

    // Project an ambient pair back to the chart; the real part of z1 is
    // discarded, which re-imposes rho(W) = 0 exactly.
    static BoundaryPoint from_ambient(cplx z1, cplx z2) {
        return BoundaryPoint(z2, z1.imag());
    }
};

// Hermitian pairing rho(Z, W) = conj(z1) + w1 - conj(z2) w2 (first slot
// conjugated). Accepts any mix of interior and boundary points.
inline cplx rho_pair(cplx z1, cplx z2, cplx w1, cplx w2) {
    return std::conj(z1) + w1 - std::conj(z2) * w2;
}
inline cplx rho_pair(const DomainPoint& Z, const DomainPoint& W) {
    return rho_pair(Z.z1, Z.z2, W.z1, W.z2);
}
inline cplx rho_pair(const DomainPoint& Z, const BoundaryPoint& W) {
    return rho_pair(Z.z1, Z.z2, W.w1(), W.w2());
}
inline cplx rho_pair(const BoundaryPoint& Z, const BoundaryPoint& W) {
    return rho_pair(Z.w1(), Z.w2(), W.w1(), W.w2());
}
inline cplx rho_pair(const BoundaryPoint& Z, const DomainPoint& W) {
    return rho_pair(Z.w1(), Z.w2(), W.z1, W.z2);
}

// rho(conj Z, conj W): every coordinate conjugated, so the conjugation moves
// to the second slot.
inline cplx rho_pair_conj(cplx z1, cplx z2, cplx w1, cplx w2) {
    return z1 + std::conj(w1) - z2 * std::conj(w2);
}
inline cplx rho_pair_conj(const DomainPoint& Z, const DomainPoint& W) {
    return rho_pair_conj(Z.z1, Z.z2, W.z1, W.z2);
}
inline cplx rho_pair_conj(const DomainPoint& Z, const BoundaryPoint& W) {
    return rho_pair_conj(Z.z1, Z.z2, W.w1(), W.w2());
}
inline cplx rho_pair_conj(const BoundaryPoint& Z, const BoundaryPoint& W) {
    return rho_pair_conj(Z.w1(), Z.w2(), W.w1(), W.w2());
}

// Raw fractional-linear action of a 3x3 matrix on ambient coordinates:
// rows 1,2 give the numerators, the bottom row the denominator
// j = c1 z1 + c2 z2 + c3.
struct MoebiusImage {
    cplx z1, z2, j;
};

inline MoebiusImage moebius_image(const Mat3& g, cplx z1, cplx z2) {
    const cplx den = g(2, 0) * z1 + g(2, 1) * z2 + g(2, 2);
    if (std::abs(den) < 1e-14)
        throw denominator_vanishes("fractional-linear denominator ~ 0");
    return {(g(0, 0) * z1 + g(0, 1) * z2 + g(0, 2)) / den,
            (g(1, 0) * z1 + g(1, 1) * z2 + g(1, 2)) / den, den};
}

// Bottom-row linear form j(g, Z) = c1 z1 + c2 z2 + c3.
inline cplx cocycle_j(const Mat3& g, cplx z1, cplx z2) {
    return g(2, 0) * z1 + g(2, 1) * z2 + g(2, 2);
}
inline cplx cocycle_j(const Mat3& g, const DomainPoint& Z) { return cocycle_j(g, Z.z1, Z.z2); }
inline cplx cocycle_j(const Mat3& g, const BoundaryPoint& W) {
    return cocycle_j(g, W.w1(), W.w2());
}

// Horospherical chart z1 = (rho + |z|^2)/2 + i t, z2 = z.
struct Horospherical {
    double rho{1.0};
    double t{0.0};
    cplx z{0.0, 0.0};
};

inline DomainPoint from_horospherical(const Horospherical& h) {
    if (h.rho <= 0.0) throw invalid_parameter("horospherical rho must be positive");
    return DomainPoint({0.5 * (h.rho + std::norm(h.z)), h.t}, h.z);
}

inline Horospherical to_horospherical(const DomainPoint& Z) {
    Horospherical h;
    h.rho = Z.rho();
    h.z = Z.z2;
    h.t = Z.z1.imag();
    return h;
}

} // namespace chyp
