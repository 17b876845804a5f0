#pragma once

#include <cmath>
#include <functional>

namespace quadrature {

// Composite 16-point Gauss-Legendre on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 200) {
  static constexpr double kNode[8] = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
      0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
  };
  static constexpr double kWeight[8] = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
      0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
  };
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    double panel = 0.0;
    for (int k = 0; k < 8; ++k) {
      panel += kWeight[k] * (f(mid - half * kNode[k]) + f(mid + half * kNode[k]));
    }
    total += panel * half;
  }
  return total;
}

}  // namespace quadrature
