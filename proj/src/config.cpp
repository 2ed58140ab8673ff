#include "geosph/config.hpp"

#include <stdexcept>

namespace geosph {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

void SimulationConfig::finalize() {
    require(dp > 0.0, "numerics.dp must be positive");
    if (h <= 0.0) h = 1.5 * dp;
    require(dt > 0.0, "numerics.dt must be positive");
    require(t_end >= 0.0, "numerics.t_end must be non-negative");
    require(beta1 >= 0.0, "numerics.beta1 must be non-negative");
    require(beta2 >= 0.0, "numerics.beta2 must be non-negative");
    require(gamma >= 0.0, "numerics.gamma must be non-negative");
    require(alpha_hg >= 0.0, "numerics.alpha_hg must be non-negative");
    require(k_update > 0.0, "numerics.k_update must be positive");
    require(gravity >= 0.0, "numerics.gravity must be non-negative");
    require(c_d >= 0.0, "numerics.c_d must be non-negative");
    require(output_interval > 0.0, "output.interval must be positive");
    require(geostatic_ke_tol > 0.0, "numerics.geostatic_ke_tol must be positive");
}

std::string to_string(Method m) {
    return m == Method::CESPH ? "CESPH" : "TLSPH";
}

std::string to_string(DampingMode m) {
    return m == DampingMode::Off ? "off" : "viscous";
}

std::string to_string(Pk1Form f) {
    return f == Pk1Form::Left ? "left" : "right";
}

} // namespace geosph
