#pragma once

#include <stdexcept>
#include <string>

namespace chyp {

// Base class for every failure the library can raise on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct overflow_error : error {
    explicit overflow_error(const std::string& w) : error("integer overflow: " + w) {}
};
struct invalid_parameter : error {
    explicit invalid_parameter(const std::string& w) : error("invalid parameter: " + w) {}
};
struct denominator_vanishes : error {
    explicit denominator_vanishes(const std::string& w) : error("denominator vanishes: " + w) {}
};
struct solver_failure : error {
    explicit solver_failure(const std::string& w) : error("solver failure: " + w) {}
};
struct pole_at_c : error {
    explicit pole_at_c(const std::string& w) : error("2F1 lower parameter at a pole: " + w) {}
};
struct non_convergence : error {
    explicit non_convergence(const std::string& w) : error("series does not converge: " + w) {}
};
struct diverges_at_one : error {
    explicit diverges_at_one(const std::string& w) : error("Gauss sum diverges at z=1: " + w) {}
};
struct boundary_collision : error {
    explicit boundary_collision(const std::string& w) : error("point collides with boundary: " + w) {}
};
struct singular_at_zero : error {
    explicit singular_at_zero(const std::string& w) : error("singular at zero: " + w) {}
};
struct coincident_points : error {
    explicit coincident_points(const std::string& w) : error("coincident points: " + w) {}
};
struct pole_at_prefactor : error {
    explicit pole_at_prefactor(const std::string& w) : error("kernel prefactor pole: " + w) {}
};
struct pole_guard : error {
    explicit pole_guard(const std::string& w) : error("spectral parameter too close to a pole: " + w) {}
};
struct stencil_out_of_domain : error {
    explicit stencil_out_of_domain(const std::string& w) : error("stencil leaves the domain: " + w) {}
};
struct slow_decay : error {
    explicit slow_decay(const std::string& w) : error("integrand tail too heavy: " + w) {}
};
struct non_finite : error {
    explicit non_finite(const std::string& w) : error("non-finite sample: " + w) {}
};
struct singularity_unresolved : error {
    explicit singularity_unresolved(const std::string& w) : error("local refinement failed: " + w) {}
};
struct convergence_region : error {
    explicit convergence_region(const std::string& w) : error("outside convergence region: " + w) {}
};
struct orbit_collision : error {
    explicit orbit_collision(const std::string& w) : error("orbit point collision: " + w) {}
};
struct not_in_gamma_n : error {
    explicit not_in_gamma_n(const std::string& w) : error("pair fails the Gamma-and-N intersection membership equation: " + w) {}
};
struct config_error : error {
    explicit config_error(const std::string& w) : error("bad configuration: " + w) {}
};
struct unknown_expression : error {
    explicit unknown_expression(const std::string& w) : error("unknown expression: " + w) {}
};
struct io_error : error {
    explicit io_error(const std::string& w) : error("i/o failure: " + w) {}
};

} // namespace chyp
