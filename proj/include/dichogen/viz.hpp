#pragma once

// SVG and CSV renderings of generated sequences: plain bars, the centered
// DFT magnitude spectrum, the mean-corrected random walk and the scatter of
// consecutive Horner block pairs.

#include <string>
#include <utility>
#include <vector>

#include "dichogen/genkernel.hpp"

namespace dichogen::viz {

struct Dims {
  int width = 900;
  int height = 220;
};

inline constexpr Dims kDefaultDims{900, 220};
inline constexpr Dims kScatterDims{440, 440};

struct Diagram {
  enum class Kind { Bar, DftBar, Walk, Scatter };
  Kind kind = Kind::Bar;
  /// Bar, DftBar, Walk: one number per element, already transformed.
  std::vector<double> series;
  /// Scatter only.
  std::vector<std::pair<double, double>> points;
  Dims dims = kDefaultDims;
  std::string title;
};

/// Builders. All throw std::invalid_argument on empty input.
Diagram bar_diagram(const Word& values, Dims dims = kDefaultDims);
/// |DFT(x - mean)| rotated so frequency 0 lands at index floor(N / 2).
Diagram dft_diagram(const Word& values, Dims dims = kDefaultDims);
/// Partial sums of x - mean.
Diagram walk_diagram(const Word& values, Dims dims = kDefaultDims);
Diagram scatter_diagram(const std::vector<std::pair<double, double>>& pairs,
                        Dims dims = kScatterDims);

/// Full magnitude spectrum of x - mean in centered order.
std::vector<double> centered_dft_magnitudes(const Word& values);
std::vector<double> walk_positions(const Word& values);

std::string render_svg(const Diagram& diagram);
std::string emit_csv(const Diagram& diagram);

std::string bar_svg(const Word& values, Dims dims = kDefaultDims);
std::string dft_bar_svg(const Word& values, Dims dims = kDefaultDims);
std::string walk_svg(const Word& values, Dims dims = kDefaultDims);
std::string scatter_svg(const std::vector<std::pair<double, double>>& pairs,
                        Dims dims = kScatterDims);

/// Shortest round-trip decimal form with '.' as the separator.
std::string format_number(double v);

}  // namespace dichogen::viz
