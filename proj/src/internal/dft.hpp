#pragma once

#include <span>
#include <vector>

namespace dichogen::detail {

/// |X_j| for j = 0 .. n/2 of the discrete Fourier transform
/// X_j = sum_k x_k exp(-2 pi i j k / n) of a real vector.
std::vector<double> real_dft_magnitudes(std::span<const double> x);

}  // namespace dichogen::detail
