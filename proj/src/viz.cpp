#include "dichogen/viz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "internal/dft.hpp"

namespace dichogen::viz {

namespace {

constexpr double kMargin = 20.0;

void require_non_empty(bool empty, const char* what) {
  if (empty) throw std::invalid_argument(std::string(what) + ": empty input");
}

void require_dims(Dims dims) {
  if (dims.width <= 0 || dims.height <= 0) {
    throw std::invalid_argument("diagram dimensions must be positive");
  }
}

double mean(const Word& values) {
  double sum = 0.0;
  for (Value v : values) sum += static_cast<double>(v);
  return sum / static_cast<double>(values.size());
}

// Fixed three decimals, trailing zeros trimmed. Enough for pixel coordinates
// and stable across platforms.
std::string coord(double v) {
  if (std::fabs(v) < 5e-4) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  if (ec != std::errc{}) throw std::runtime_error("coordinate formatting failed");
  std::string s(buf, end);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(const Diagram& d) {
  const std::string w = std::to_string(d.dims.width);
  const std::string h = std::to_string(d.dims.height);
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w + "\" height=\"" +
       h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  s += "<title>" + escape_xml(d.title) + "</title>\n";
  s += "<text x=\"" + coord(kMargin) + "\" y=\"14\" font-family=\"sans-serif\" font-size=\"12\">" +
       escape_xml(d.title) + "</text>\n";
  return s;
}

struct Range {
  double lo;
  double hi;
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

Range value_range(const std::vector<double>& series, bool include_zero) {
  auto [mn, mx] = std::minmax_element(series.begin(), series.end());
  Range r{*mn, *mx};
  if (include_zero) {
    r.lo = std::min(r.lo, 0.0);
    r.hi = std::max(r.hi, 0.0);
  }
  return r;
}

// Vertical bars from the zero line; used for both Bar and DftBar.
std::string render_bars(const Diagram& d) {
  const double w = d.dims.width - 2 * kMargin;
  const double h = d.dims.height - 2 * kMargin;
  const Range r = value_range(d.series, true);
  const double step = w / static_cast<double>(d.series.size());
  const auto y_of = [&](double v) { return kMargin + h * (r.hi - v) / r.span(); };
  const double zero = y_of(0.0);
  std::string s = header(d);
  s += "<g fill=\"steelblue\">\n";
  for (std::size_t i = 0; i < d.series.size(); ++i) {
    const double y = y_of(d.series[i]);
    s += "<rect x=\"" + coord(kMargin + step * static_cast<double>(i)) + "\" y=\"" +
         coord(std::min(y, zero)) + "\" width=\"" + coord(step) + "\" height=\"" +
         coord(std::fabs(zero - y)) + "\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

std::string render_walk(const Diagram& d) {
  const double w = d.dims.width - 2 * kMargin;
  const double h = d.dims.height - 2 * kMargin;
  const Range r = value_range(d.series, true);
  const double n = static_cast<double>(d.series.size());
  const auto y_of = [&](double v) { return kMargin + h * (r.hi - v) / r.span(); };
  std::string s = header(d);
  s += "<line x1=\"" + coord(kMargin) + "\" y1=\"" + coord(y_of(0.0)) + "\" x2=\"" +
       coord(kMargin + w) + "\" y2=\"" + coord(y_of(0.0)) + "\" stroke=\"gray\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (std::size_t i = 0; i < d.series.size(); ++i) {
    if (i) s += ' ';
    const double x = n > 1 ? kMargin + w * static_cast<double>(i) / (n - 1) : kMargin;
    s += coord(x) + "," + coord(y_of(d.series[i]));
  }
  s += "\"/>\n</svg>\n";
  return s;
}

std::string render_scatter(const Diagram& d) {
  const double w = d.dims.width - 2 * kMargin;
  const double h = d.dims.height - 2 * kMargin;
  std::string s = header(d);
  s += "<rect x=\"" + coord(kMargin) + "\" y=\"" + coord(kMargin) + "\" width=\"" + coord(w) +
       "\" height=\"" + coord(h) + "\" fill=\"none\" stroke=\"gray\"/>\n";
  s += "<g fill=\"black\">\n";
  for (const auto& [x, y] : d.points) {
    s += "<circle cx=\"" + coord(kMargin + w * x) + "\" cy=\"" + coord(kMargin + h * (1.0 - y)) +
         "\" r=\"1.5\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

std::vector<double> centered_dft_magnitudes(const Word& values) {
  require_non_empty(values.empty(), "centered_dft_magnitudes");
  const std::size_t n = values.size();
  const double mu = mean(values);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(values[i]) - mu;
  const std::vector<double> half = detail::real_dft_magnitudes(x);
  std::vector<double> centered(n);
  for (std::size_t j = 0; j < n; ++j) {
    // Real input: |X_j| = |X_{n-j}|.
    const double mag = j < half.size() ? half[j] : half[n - j];
    centered[(j + n / 2) % n] = mag;
  }
  return centered;
}

std::vector<double> walk_positions(const Word& values) {
  require_non_empty(values.empty(), "walk_positions");
  const double mu = mean(values);
  std::vector<double> pos;
  pos.reserve(values.size());
  double acc = 0.0;
  for (Value v : values) {
    acc += static_cast<double>(v) - mu;
    pos.push_back(acc);
  }
  return pos;
}

Diagram bar_diagram(const Word& values, Dims dims) {
  require_non_empty(values.empty(), "bar_diagram");
  require_dims(dims);
  Diagram d{Diagram::Kind::Bar, {}, {}, dims, "values"};
  d.series.reserve(values.size());
  for (Value v : values) d.series.push_back(static_cast<double>(v));
  return d;
}

Diagram dft_diagram(const Word& values, Dims dims) {
  require_dims(dims);
  return {Diagram::Kind::DftBar, centered_dft_magnitudes(values), {}, dims,
          "|DFT(x - mean)|, frequency 0 centered"};
}

Diagram walk_diagram(const Word& values, Dims dims) {
  require_dims(dims);
  return {Diagram::Kind::Walk, walk_positions(values), {}, dims, "random walk of x - mean"};
}

Diagram scatter_diagram(const std::vector<std::pair<double, double>>& pairs, Dims dims) {
  require_non_empty(pairs.empty(), "scatter_diagram");
  require_dims(dims);
  return {Diagram::Kind::Scatter, {}, pairs, dims, "consecutive block pairs"};
}

std::string render_svg(const Diagram& d) {
  require_dims(d.dims);
  switch (d.kind) {
    case Diagram::Kind::Bar:
    case Diagram::Kind::DftBar:
      require_non_empty(d.series.empty(), "render_svg");
      return render_bars(d);
    case Diagram::Kind::Walk:
      require_non_empty(d.series.empty(), "render_svg");
      return render_walk(d);
    case Diagram::Kind::Scatter:
      require_non_empty(d.points.empty(), "render_svg");
      return render_scatter(d);
  }
  throw std::logic_error("render_svg: unknown diagram kind");
}

std::string emit_csv(const Diagram& d) {
  std::string out;
  if (d.kind == Diagram::Kind::Scatter) {
    out = "x,y\n";
    for (const auto& [x, y] : d.points) out += format_number(x) + "," + format_number(y) + "\n";
    return out;
  }
  switch (d.kind) {
    case Diagram::Kind::Bar: out = "index,value\n"; break;
    case Diagram::Kind::DftBar: out = "index,magnitude\n"; break;
    default: out = "index,position\n"; break;
  }
  for (std::size_t i = 0; i < d.series.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_number(d.series[i]) + "\n";
  }
  return out;
}

std::string bar_svg(const Word& values, Dims dims) { return render_svg(bar_diagram(values, dims)); }

std::string dft_bar_svg(const Word& values, Dims dims) {
  return render_svg(dft_diagram(values, dims));
}

std::string walk_svg(const Word& values, Dims dims) {
  return render_svg(walk_diagram(values, dims));
}

std::string scatter_svg(const std::vector<std::pair<double, double>>& pairs, Dims dims) {
  return render_svg(scatter_diagram(pairs, dims));
}

}  // namespace dichogen::viz
