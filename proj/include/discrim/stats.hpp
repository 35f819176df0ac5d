#pragma once

#include <span>

namespace discrim {

// Inclusive (linear interpolation, h = (n-1) q) quantile of the sample.
// NaN for an empty sample.
double quantile(std::span<const double> values, double q);

inline double median(std::span<const double> values) { return quantile(values, 0.5); }

}  // namespace discrim
