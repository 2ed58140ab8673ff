#pragma once

#include <cmath>
#include <numbers>

#include "geosph/tensor.hpp"

namespace geosph {

/// Wendland C2 kernel, 2D normalization. Compact support of radius 2h.
struct KernelSpec {
    double h = 0.0;              ///< smoothing length, m
    double alpha_d = 0.0;        ///< 7/(32 pi h^2), 1/m^2
    double support_radius = 0.0; ///< 2h, m
};

inline KernelSpec make_kernel(double h) {
    KernelSpec spec;
    spec.h = h;
    spec.alpha_d = 7.0 / (32.0 * std::numbers::pi * h * h);
    spec.support_radius = 2.0 * h;
    return spec;
}

/// W(r) = alpha_d (q + 1/2)(2 - q)^4 for q = r/h <= 2, zero beyond.
inline double kernel_value(double r, const KernelSpec& spec) {
    const double q = r / spec.h;
    if (q >= 2.0) return 0.0;
    const double t = 2.0 - q;
    const double t2 = t * t;
    return spec.alpha_d * (q + 0.5) * t2 * t2;
}

/// dW/dq = -5 alpha_d q (2 - q)^3 for q <= 2.
inline double kernel_deriv_q(double r, const KernelSpec& spec) {
    const double q = r / spec.h;
    if (q >= 2.0) return 0.0;
    const double t = 2.0 - q;
    return -5.0 * spec.alpha_d * q * t * t * t;
}

/// Gradient of W with respect to the first particle of the pair
/// (r_vec = x_i - x_j). Equal to (dW/dq / h) r_vec/|r_vec|; the removable
/// singularity at r = 0 is closed with the zero vector.
inline Vec2 kernel_gradient(const Vec2& r_vec, const KernelSpec& spec) {
    const double r2 = norm2(r_vec);
    const double support2 = spec.support_radius * spec.support_radius;
    if (r2 >= support2 || r2 == 0.0) return {0.0, 0.0};
    // (dW/dq)/(h r) * r_vec = -5 alpha_d (2-q)^3 / h^2 * r_vec
    const double q = std::sqrt(r2) / spec.h;
    const double t = 2.0 - q;
    const double c = -5.0 * spec.alpha_d * t * t * t / (spec.h * spec.h);
    return c * r_vec;
}

} // namespace geosph
