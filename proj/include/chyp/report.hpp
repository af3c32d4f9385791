#pragma once

#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chyp/linalg.hpp"

namespace chyp {

enum class QuadScheme { tensor_gauss_legendre, adaptive };

struct QuadConfig {
    QuadScheme scheme{QuadScheme::tensor_gauss_legendre};
    int cells{24};             // panels per compactified axis
    double rel_tol{1e-7};
    double trunc_radius{-1.0}; // tan-map scale; negative = auto
    int gl_points{16};
    int refine_depth{28};      // dyadic depth near boundary singularities
    int theta_points{32};      // angular trapezoid nodes (3-D configurations)
};

struct IdentityReport {
    std::string identity_id;
    std::string inputs;
    cplx lhs{};
    cplx rhs{};
    double rel_err{};
    bool pass{};
    QuadConfig cfg{};
    double quad_error_estimate{}; // relative change under cell doubling
    std::vector<double> refine_increments;
    double runtime_ms{0.0}; // populated only when timings are requested

    static constexpr double pass_safety = 10.0;
};

inline double relative_error(cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

inline IdentityReport make_report(std::string id, std::string inputs, cplx lhs, cplx rhs,
                                  const QuadConfig& cfg, double quad_err = 0.0) {
    IdentityReport r;
    r.identity_id = std::move(id);
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_err = relative_error(lhs, rhs);
    r.pass = r.rel_err <= cfg.rel_tol * IdentityReport::pass_safety;
    r.cfg = cfg;
    r.quad_error_estimate = quad_err;
    return r;
}

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string fmt_cplx(cplx z) {
    return fmt_double(z.real()) + (z.imag() < 0 ? "" : "+") + fmt_double(z.imag()) + "i";
}

inline nlohmann::json to_json(const IdentityReport& r) {
    nlohmann::json j;
    j["identity_id"] = r.identity_id;
    j["inputs"] = r.inputs;
    j["lhs"] = {fmt_double(r.lhs.real()), fmt_double(r.lhs.imag())};
    j["rhs"] = {fmt_double(r.rhs.real()), fmt_double(r.rhs.imag())};
    j["rel_err"] = fmt_double(r.rel_err);
    j["pass"] = r.pass;
    j["quad_error_estimate"] = fmt_double(r.quad_error_estimate);
    j["cfg"] = {{"cells", r.cfg.cells},
                {"rel_tol", fmt_double(r.cfg.rel_tol)},
                {"gl_points", r.cfg.gl_points},
                {"refine_depth", r.cfg.refine_depth},
                {"theta_points", r.cfg.theta_points},
                {"scheme", r.cfg.scheme == QuadScheme::adaptive ? "adaptive"
                                                                : "tensor_gauss_legendre"}};
    if (!r.refine_increments.empty()) {
        nlohmann::json inc = nlohmann::json::array();
        for (double d : r.refine_increments) inc.push_back(fmt_double(d));
        j["refine_increments"] = inc;
    }
    j["runtime_ms"] = fmt_double(r.runtime_ms);
    return j;
}

inline std::string csv_header() {
    return "identity_id,inputs,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,pass,runtime_ms";
}

inline std::string to_csv_row(const IdentityReport& r) {
    std::ostringstream os;
    os << r.identity_id << ",\"" << r.inputs << "\"," << fmt_double(r.lhs.real()) << ","
       << fmt_double(r.lhs.imag()) << "," << fmt_double(r.rhs.real()) << ","
       << fmt_double(r.rhs.imag()) << "," << fmt_double(r.rel_err) << ","
       << (r.pass ? "true" : "false") << "," << fmt_double(r.runtime_ms);
    return os.str();
}

} // namespace chyp
