#pragma once
// Named test amplitudes with derivatives, shared by the CLI and the tests.

#include <string>

#include "hfilon/filonq.hpp"

namespace hfilon {

// "demo1"    x cos x / (1 + x^4)
// "one"      1
// "cheb:<n>" T_n(x)
// "c2spline" cubic B-spline on irregular knots in (0, 1): C^2 but not C^3
// Derivatives up to max_hermite_order are attached (c2spline: up to 2).
// Throws std::invalid_argument for unknown names.
AmplitudeSpec named_amplitude(const std::string& name);

}  // namespace hfilon
