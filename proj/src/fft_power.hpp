#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chirplike::detail {

struct SparseSample {
    std::size_t index;
    double value;
};

/// |X[k]|^2 for k = 0..length/2 where X is the length-point DFT of a real
/// sequence that is zero except at the given indices.
std::vector<double> sparse_power_spectrum(std::span<const SparseSample> samples, std::size_t length);

} // namespace chirplike::detail
