#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "chyp/errors.hpp"

namespace chyp {

using cplx = std::complex<double>;

struct Vec3 {
    std::array<cplx, 3> v{};
    cplx& operator[](std::size_t i) { return v[i]; }
    const cplx& operator[](std::size_t i) const { return v[i]; }
};

struct Mat3 {
    // row-major
    std::array<cplx, 9> m{};

    cplx& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static Mat3 identity() {
        Mat3 e;
        e(0, 0) = e(1, 1) = e(2, 2) = 1.0;
        return e;
    }

    static Mat3 diag(cplx x, cplx y, cplx z) {
        Mat3 d;
        d(0, 0) = x;
        d(1, 1) = y;
        d(2, 2) = z;
        return d;
    }

    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
                c(i, j) = s;
            }
        return c;
    }

    friend Vec3 operator*(const Mat3& a, const Vec3& x) {
        Vec3 y;
        for (int i = 0; i < 3; ++i) {
            cplx s = 0.0;
            for (int k = 0; k < 3; ++k) s += a(i, k) * x[k];
            y[i] = s;
        }
        return y;
    }

    friend Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 9; ++i) c.m[i] = a.m[i] + b.m[i];
        return c;
    }

    friend Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 9; ++i) c.m[i] = a.m[i] - b.m[i];
        return c;
    }

    friend Mat3 operator*(cplx s, const Mat3& a) {
        Mat3 c;
        for (int i = 0; i < 9; ++i) c.m[i] = s * a.m[i];
        return c;
    }

    Mat3 adjoint() const { // conjugate transpose
        Mat3 h;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h(i, j) = std::conj((*this)(j, i));
        return h;
    }

    Mat3 conjugate() const { // entrywise
        Mat3 h;
        for (int i = 0; i < 9; ++i) h.m[i] = std::conj(m[i]);
        return h;
    }

    cplx det() const {
        const Mat3& a = *this;
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }

    Mat3 inverse() const {
        const Mat3& a = *this;
        const cplx d = det();
        if (std::abs(d) < 1e-300) throw denominator_vanishes("Mat3 inverse of singular matrix");
        Mat3 inv;
        inv(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / d;
        inv(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / d;
        inv(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / d;
        inv(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d;
        inv(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / d;
        inv(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / d;
        inv(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / d;
        inv(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / d;
        inv(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / d;
        return inv;
    }

    double max_abs() const {
        double mx = 0.0;
        for (const cplx& x : m) mx = std::max(mx, std::abs(x));
        return mx;
    }
};

inline double mat_distance(const Mat3& a, const Mat3& b) { return (a - b).max_abs(); }

// Solve the square real system A x = b in place by Gaussian elimination with
// partial pivoting. Sizes stay tiny (<= 5) so no blocking is needed.
template <std::size_t N>
std::array<double, N> solve_real(std::array<std::array<double, N>, N> a,
                                 std::array<double, N> b) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-14) throw solver_failure("singular linear system");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, N> x{};
    for (std::size_t i = N; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < N; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace chyp
