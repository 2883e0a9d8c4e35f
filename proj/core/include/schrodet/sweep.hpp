#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schrodet/asymptotics.hpp"
#include "schrodet/matrix.hpp"
#include "schrodet/piecewise.hpp"

namespace schrodet {

/// One experiment description: a potential (in the potential grammar), the
/// index shift, the n grid, which checks the scenario is meant for, and
/// where results go. Scenario files mix potential lines with key-value
/// lines:
///
///   piece [0, 0.5]: 3.3 + x^2/2 + sin(3*x)
///   piece [0.5, 1]: 3.5 - x
///   jump at 0.5 side right
///   epsilon 1
///   n 10..200            # or `n 10..3000 step 23` or `n 1, 2, 50`
///   checks ratio fit
///   output sweep.csv
///   format csv
struct Scenario {
  std::string potential_source;  // scenario keys blanked out, line numbers kept
  double epsilon = 1.0;
  std::vector<int> n_set;
  std::vector<std::string> checks;
  std::string output_path;  // empty = stdout
  enum class Format { csv, json };
  Format format = Format::csv;

  PiecewisePotential potential() const;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

/// One sweep row: the computed ratio det/G^n, the closed-form prediction at
/// that n, and their difference.
struct SweepRecord {
  int n = 0;
  double ratio = 0.0;
  double prediction = 0.0;
  double error = 0.0;
};

/// Computes one record per n, in parallel when threads != 1 (0 = hardware
/// count). Per-n work is pure, so results are identical for any worker
/// count; records come back sorted by n. Errors are rethrown with the
/// offending n prepended.
std::vector<SweepRecord> run_sweep(const Scenario& s, int threads = 0);
std::vector<SweepRecord> run_sweep(const PiecewisePotential& f, const AsymptoticPrediction& pred,
                                   std::span<const int> ns, double epsilon, int threads = 0);

/// Least-squares fits of |error| against n: a power law A n^b on
/// (log n, log|error|) and an exponential A B^n on (n, log|error|), over
/// records with |error| > 1e-14. Requires at least 10 usable records.
struct PowerLawFit {
  double amplitude = 0.0;  // A in A n^b
  double exponent = 0.0;   // b
  double rss = 0.0;        // log-space residual sum of squares
  double exp_amplitude = 0.0;
  double exp_base = 0.0;  // B in A B^n
  double exp_rss = 0.0;
  bool power_law_wins = false;
  int n_min = 0;
  int n_max = 0;
  std::size_t used = 0;
};

PowerLawFit fit_power_law(std::span<const SweepRecord> records);

/// Both sides of the trace asymptotics for phi = s^power: lhs is
/// Tr[phi(T_n)]/n from the eigensolver, rhs the double integral
/// (1/2pi) ∫_0^1 ∫_0^{2pi} phi(f(x) - 2 cos t) dt dx with a 1024-node
/// trapezoid in t (periodic, spectrally accurate) and adaptive quadrature
/// in x.
struct KmsResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

KmsResult kms_check(const PiecewisePotential& f, int n, int power, double epsilon = 1.0);

/// max over p in {1,2} of |Tr[T_n(f;eps_a)^p] - Tr[T_n(f;eps_b)^p]| / n.
/// O(1/n) for smooth f: the spectral statistics ignore the shift even though
/// the determinant limit depends on it.
double shift_invariance_check(const PiecewisePotential& f, int n, double eps_a, double eps_b);

/// CSV with header `n,ratio,prediction,error`, 17 significant digits;
/// byte-identical across runs and worker counts.
void write_csv(std::ostream& os, std::span<const SweepRecord> records);
std::string to_csv(std::span<const SweepRecord> records);

/// JSON array with the same fields.
void write_json(std::ostream& os, std::span<const SweepRecord> records);

}  // namespace schrodet
