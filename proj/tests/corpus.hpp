#pragma once

// Fixed test potentials shared by the unit and acceptance suites.

#include <string>
#include <vector>

namespace corpus {

inline constexpr const char* kConstant3 = "piece [0, 1]: 3\n";

// Smooth, non-constant potentials with f > 2 on [-0.25, 1.25] and O(1/n)
// determinant-ratio error (constants converge exponentially and would make
// error-decay checks degenerate).
inline std::vector<std::string> smooth_sources() {
  return {
      "piece [0, 1]: x + 3\n",
      "piece [0, 1]: 3.3 + x^2/2 + sin(3*x)\n",
      "piece [0, 1]: 4 + cos(2*x)\n",
      "piece [0, 1]: 3 + exp(-x)\n",
      "piece [0, 1]: 5 - x^2\n",
  };
}

// Two-branch potential with one jump at c.
inline std::string ff_source(const std::string& c_expr, const std::string& side) {
  return "piece [0, " + c_expr + "]: 3.3 + x^2/2 + sin(3*x)\n" +
         "piece [" + c_expr + ", 1]: 3.5 - x\n" +
         "jump at " + c_expr + " side " + side + "\n";
}

// Oscillatory two-branch potential with an irrational jump position.
inline std::string ff2_source() {
  return "piece [0, 0.9 - 1/pi]: 3.3 + x^2/2 + sqrt(x)*sin(13*x)\n"
         "piece [0.9 - 1/pi, 1]: 3.5 - cos(20*x)\n"
         "jump at 0.9 - 1/pi side left\n";
}

// Step potential A on [0, c], B on (c, 1].
inline std::string step_source(double a, double b, const std::string& c_expr,
                               const std::string& side) {
  return "piece [0, " + c_expr + "]: " + std::to_string(a) + "\n" +
         "piece [" + c_expr + ", 1]: " + std::to_string(b) + "\n" +
         "jump at " + c_expr + " side " + side + "\n";
}

}  // namespace corpus
