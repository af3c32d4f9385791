#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <string>

#include "chyp/errors.hpp"
#include "chyp/gamma.hpp"

namespace chyp {

struct HypArgs {
    cplx a, b, c, z;
};

namespace detail {

// Plain power series at the given argument. Callers guarantee |z| < 1 or a
// terminating upper parameter.
inline cplx hyp_series(cplx a, cplx b, cplx c, cplx z, int max_terms = 8000) {
    cplx term = 1.0, sum = 1.0;
    int quiet = 0;
    for (int n = 0; n < max_terms; ++n) {
        if (term == cplx(0.0)) return sum; // terminated exactly
        const cplx den = (c + cplx(double(n))) * cplx(double(n + 1));
        if (std::abs(den) < 1e-300) throw pole_at_c("(c)_n vanished before termination");
        term *= (a + cplx(double(n))) * (b + cplx(double(n))) / den * z;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) + 1e-300) {
            if (++quiet >= 3) return sum;
        } else {
            quiet = 0;
        }
    }
    throw non_convergence("2F1 series at |z|=" + std::to_string(std::abs(z)));
}

// Terminating case: sum every term up to the exact termination index; no
// early exit, so mid-polynomial dips cannot truncate the sum.
inline cplx hyp_polynomial(cplx a, cplx b, cplx c, cplx z) {
    long n_end = std::numeric_limits<long>::max();
    if (is_nonpositive_integer(a)) n_end = std::min(n_end, -std::lround(a.real()));
    if (is_nonpositive_integer(b)) n_end = std::min(n_end, -std::lround(b.real()));
    cplx term = 1.0, sum = 1.0;
    for (long n = 0; n < n_end; ++n) {
        const cplx den = (c + cplx(double(n))) * cplx(double(n + 1));
        if (std::abs(den) < 1e-300) throw pole_at_c("(c)_n vanished before termination");
        term *= (a + cplx(double(n))) * (b + cplx(double(n))) / den * z;
        sum += term;
    }
    return sum;
}

} // namespace detail

// Gauss hypergeometric function. Direct series for |z| <= 0.75; otherwise the
// best of {direct, Pfaff z/(z-1), connection at 1-z, quadratic (c = 2b)} by
// smallest mapped modulus, ties to the earlier rule. Terminating cases are
// summed exactly as polynomials.
inline cplx gauss_2f1(const HypArgs& h) {
    const cplx a = h.a, b = h.b, c = h.c, z = h.z;
    if (!std::isfinite(std::abs(z))) throw invalid_parameter("2F1 argument must be finite");

    if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
        return detail::hyp_polynomial(a, b, c, z);
    if (is_nonpositive_integer(c)) throw pole_at_c("c = " + std::to_string(c.real()));
    if (z == cplx(0.0)) return 1.0;

    const double mod_direct = std::abs(z);
    if (mod_direct <= 0.75) return detail::hyp_series(a, b, c, z);

    enum Route { direct = 0, pfaff = 1, connection = 2, quadratic = 3 };
    int route = direct;
    double best = mod_direct;

    const cplx one_minus_z = cplx(1.0) - z;
    const bool z_is_one = std::abs(one_minus_z) < 1e-14;

    const cplx w_pfaff = z_is_one ? cplx(0.0) : z / (z - cplx(1.0));
    if (!z_is_one && std::abs(w_pfaff) < best) {
        best = std::abs(w_pfaff);
        route = pfaff;
    }

    const bool conn_ok = !z_is_one && !is_near_integer(c - a - b, 1e-8);
    if (conn_ok && std::abs(one_minus_z) < best) {
        best = std::abs(one_minus_z);
        route = connection;
    }

    cplx zeta = 0.0;
    const bool quad_ok = std::abs(c - 2.0 * b) < 1e-12 && !z_is_one;
    if (quad_ok) {
        const cplx r = std::sqrt(one_minus_z);
        zeta = (cplx(1.0) - r) / (cplx(1.0) + r);
        if (std::norm(zeta) < best) {
            best = std::norm(zeta); // |zeta^2|
            route = quadratic;
        }
    }

    if (best > 0.98)
        throw non_convergence("no transformation maps |z|=" + std::to_string(mod_direct) +
                              " inside the series disk");

    switch (route) {
    case direct:
        return detail::hyp_series(a, b, c, z);
    case pfaff:
        return std::pow(one_minus_z, -a) * detail::hyp_series(a, c - b, c, w_pfaff);
    case connection: {
        const cplx t1 = gamma_ratio({c, c - a - b}, {c - a, c - b}) *
                        detail::hyp_series(a, b, a + b - c + 1.0, one_minus_z);
        const cplx t2 = gamma_ratio({c, a + b - c}, {a, b}) *
                        std::pow(one_minus_z, c - a - b) *
                        detail::hyp_series(c - a, c - b, c - a - b + 1.0, one_minus_z);
        return t1 + t2;
    }
    default:
        return std::pow(cplx(1.0) + zeta, 2.0 * a) *
               detail::hyp_series(a, a + 0.5 - b, b + 0.5, zeta * zeta);
    }
}

inline cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z) { return gauss_2f1(HypArgs{a, b, c, z}); }

// F(a,b;c;1) by the Gauss summation formula.
inline cplx gauss_sum_at_1(cplx a, cplx b, cplx c) {
    if ((c - a - b).real() <= 0.0)
        throw diverges_at_one("Re(c-a-b) = " + std::to_string((c - a - b).real()));
    if (is_nonpositive_integer(c)) throw pole_at_c("c non-positive integer in Gauss sum");
    return gamma_ratio({c, c - a - b}, {c - a, c - b});
}

enum class RelationId {
    lemma_3_8,
    er28,
    er29,
    er30,
    er33,
    er34,
    er35,
    er36,
    er37,
    er38,
    er39,
    pfaff_2_9_3,
    conn_2_10_1,
    quad_2_11_5,
};

inline const char* relation_name(RelationId id) {
    switch (id) {
    case RelationId::lemma_3_8: return "lemma_3_8";
    case RelationId::er28: return "er28";
    case RelationId::er29: return "er29";
    case RelationId::er30: return "er30";
    case RelationId::er33: return "er33";
    case RelationId::er34: return "er34";
    case RelationId::er35: return "er35";
    case RelationId::er36: return "er36";
    case RelationId::er37: return "er37";
    case RelationId::er38: return "er38";
    case RelationId::er39: return "er39";
    case RelationId::pfaff_2_9_3: return "pfaff_2_9_3";
    case RelationId::conn_2_10_1: return "conn_2_10_1";
    case RelationId::quad_2_11_5: return "quad_2_11_5";
    }
    return "?";
}

inline RelationId relation_from_name(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(RelationId::quad_2_11_5); ++i)
        if (s == relation_name(static_cast<RelationId>(i))) return static_cast<RelationId>(i);
    throw unknown_expression("relation id '" + s + "'");
}

// |relation LHS| / max term magnitude for the identity named by `rel`,
// evaluated at (a, b, c, z).
inline double contiguous_residual(RelationId rel, const HypArgs& h) {
    const cplx a = h.a, b = h.b, c = h.c, z = h.z;
    auto F = [&](cplx aa, cplx bb, cplx cc) { return gauss_2f1(aa, bb, cc, z); };
    cplx t1 = 0, t2 = 0, t3 = 0;

    switch (rel) {
    case RelationId::lemma_3_8:
        t1 = c * F(a, b, c);
        t2 = -b * z * F(a, b + 1.0, c + 1.0);
        t3 = -c * F(a - 1.0, b, c);
        break;
    case RelationId::er28:
        t1 = (c - a) * F(a - 1.0, b, c);
        t2 = (2.0 * a - c - a * z + b * z) * F(a, b, c);
        t3 = a * (z - 1.0) * F(a + 1.0, b, c);
        break;
    case RelationId::er29:
        t1 = (c - b) * F(a, b - 1.0, c);
        t2 = (2.0 * b - c - b * z + a * z) * F(a, b, c);
        t3 = b * (z - 1.0) * F(a, b + 1.0, c);
        break;
    case RelationId::er30:
        t1 = c * (c - 1.0) * (z - 1.0) * F(a, b, c - 1.0);
        t2 = c * (c - 1.0 - (2.0 * c - a - b - 1.0) * z) * F(a, b, c);
        t3 = (c - a) * (c - b) * z * F(a, b, c + 1.0);
        break;
    case RelationId::er33:
        t1 = (c - a - b) * F(a, b, c);
        t2 = a * (1.0 - z) * F(a + 1.0, b, c);
        t3 = -(c - b) * F(a, b - 1.0, c);
        break;
    case RelationId::er34:
        t1 = c * (a - (c - b) * z) * F(a, b, c);
        t2 = -a * c * (1.0 - z) * F(a + 1.0, b, c);
        t3 = (c - a) * (c - b) * z * F(a, b, c + 1.0);
        break;
    case RelationId::er35:
        t1 = (c - a - 1.0) * F(a, b, c);
        t2 = a * F(a + 1.0, b, c);
        t3 = -(c - 1.0) * F(a, b, c - 1.0);
        break;
    case RelationId::er36:
        t1 = (c - a - b) * F(a, b, c);
        t2 = -(c - a) * F(a - 1.0, b, c);
        t3 = b * (1.0 - z) * F(a, b + 1.0, c);
        break;
    case RelationId::er37:
        t1 = (b - a) * (1.0 - z) * F(a, b, c);
        t2 = -(c - a) * F(a - 1.0, b, c);
        t3 = (c - b) * F(a, b - 1.0, c);
        break;
    case RelationId::er38:
        t1 = c * (1.0 - z) * F(a, b, c);
        t2 = -c * F(a - 1.0, b, c);
        t3 = (c - b) * z * F(a, b, c + 1.0);
        break;
    case RelationId::er39:
        t1 = (a - 1.0 - (c - b - 1.0) * z) * F(a, b, c);
        t2 = (c - a) * F(a - 1.0, b, c);
        t3 = -(c - 1.0) * (1.0 - z) * F(a, b, c - 1.0);
        break;
    case RelationId::pfaff_2_9_3:
        t1 = F(a, b, c);
        t2 = -std::pow(1.0 - z, -a) * gauss_2f1(a, c - b, c, z / (z - 1.0));
        break;
    case RelationId::conn_2_10_1: {
        t1 = F(a, b, c);
        t2 = -gamma_ratio({c, c - a - b}, {c - a, c - b}) * gauss_2f1(a, b, a + b - c + 1.0, 1.0 - z);
        t3 = -gamma_ratio({c, a + b - c}, {a, b}) * std::pow(1.0 - z, c - a - b) *
             gauss_2f1(c - a, c - b, c - a - b + 1.0, 1.0 - z);
        break;
    }
    case RelationId::quad_2_11_5: {
        const cplx zz = 4.0 * z / ((1.0 + z) * (1.0 + z));
        t1 = gauss_2f1(a, b, 2.0 * b, zz);
        t2 = -std::pow(1.0 + z, 2.0 * a) * gauss_2f1(a, a + 0.5 - b, b + 0.5, z * z);
        break;
    }
    }

    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
    return std::abs(t1 + t2 + t3) / scale;
}

inline cplx pochhammer(cplx x, int n) {
    cplx p = 1.0;
    for (int i = 0; i < n; ++i) p *= x + cplx(double(i));
    return p;
}

// Regularized incomplete beta I_x(p, q) for integer q >= 1, evaluated by the
// finite binomial expansion of the integrand.
inline cplx incomplete_beta_I(double x, cplx p, int q) {
    if (p.real() <= 0.0) throw invalid_parameter("incomplete beta needs Re(p) > 0");
    if (q < 1) throw invalid_parameter("incomplete beta needs integer q >= 1");
    if (x < 0.0 || x > 1.0) throw invalid_parameter("incomplete beta needs x in [0,1]");
    if (x == 0.0) return 0.0;
    double fr = 1.0, fqr = 1.0; // r!, (q-1-r)!
    for (int i = 1; i <= q - 1; ++i) fqr *= i;
    cplx sum = 0.0;
    double sign = 1.0;
    for (int r = 0; r <= q - 1; ++r) {
        sum += sign / (fr * fqr) * std::pow(cplx(x), p + cplx(double(r))) / (p + cplx(double(r)));
        sign = -sign;
        fr *= (r + 1);
        if (r + 1 <= q - 1) fqr /= (q - 1 - r);
    }
    return pochhammer(p, q) * sum;
}

// |cos(2kx) - F(-k, k; 1/2; sin^2 x)|. The polynomial side is the Chebyshev
// closed form used throughout the weight-k computations.
inline double chebyshev_cos_residual(int k, double x) {
    const int n = std::abs(k);
    const double s2 = std::sin(x) * std::sin(x);
    const cplx f = detail::hyp_polynomial(cplx(-double(n)), cplx(double(n)), cplx(0.5), cplx(s2));
    return std::abs(std::cos(2.0 * n * x) - f.real()) + std::abs(f.imag());
}

} // namespace chyp
