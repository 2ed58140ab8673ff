#pragma once

#include <cstdint>
#include <ostream>

namespace geosph {

/// Built-in oracle suites: kernel quadrature, return-mapping residuals,
/// affine deformation-gradient reproduction, momentum conservation.
/// Returns 0 when every suite passes, 1 otherwise.
int run_verify(std::uint64_t seed, std::ostream& os);

} // namespace geosph
