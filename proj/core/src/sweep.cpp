#include "schrodet/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "schrodet/errors.hpp"
#include "schrodet/kahan.hpp"
#include "schrodet/quadrature.hpp"

namespace schrodet {

namespace {

std::size_t skip_ws(std::string_view s, std::size_t p) {
  while (p < s.size() && (s[p] == ' ' || s[p] == '\t' || s[p] == '\r')) ++p;
  return p;
}

std::string_view trim(std::string_view s) {
  std::size_t b = skip_ws(s, 0);
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

const std::set<std::string, std::less<>> kKnownChecks = {
    "ratio", "predict", "fit", "kms", "eigs-invariance", "em", "ms"};

int parse_int(std::string_view text, int line) {
  const std::string_view t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParseError("expected an integer, got '" + std::string(t) + "'", line, 1);
  }
  return value;
}

// n grid forms: "A..B", "A..B step S", or a comma list.
std::vector<int> parse_n_spec(std::string_view text, int line) {
  std::vector<int> out;
  const std::string_view t = trim(text);
  if (const auto dots = t.find(".."); dots != std::string_view::npos) {
    const int first = parse_int(t.substr(0, dots), line);
    std::string_view rest = trim(t.substr(dots + 2));
    int stride = 1;
    if (const auto sp = rest.find("step"); sp != std::string_view::npos) {
      stride = parse_int(rest.substr(sp + 4), line);
      rest = trim(rest.substr(0, sp));
    }
    const int last = parse_int(rest, line);
    if (first < 1 || last < first) throw ParseError("bad n range", line, 1);
    if (stride < 1) throw ParseError("stride must be >= 1", line, 1);
    for (int n = first; n <= last; n += stride) out.push_back(n);
  } else {
    std::size_t start = 0;
    while (start <= t.size()) {
      std::size_t comma = t.find(',', start);
      if (comma == std::string_view::npos) comma = t.size();
      out.push_back(parse_int(t.substr(start, comma - start), line));
      start = comma + 1;
      if (comma == t.size()) break;
    }
    for (int n : out) {
      if (n < 1) throw ParseError("n values must be >= 1", line, 1);
    }
  }
  if (out.empty()) throw ParseError("empty n set", line, 1);
  return out;
}

double parse_const_value(std::string_view text, int line) {
  const Expr e = parse_expr_at(trim(text), line, 1);
  if (!is_constant(e)) throw ParseError("expected a constant expression", line, 1);
  return e.eval(0.0);
}

}  // namespace

PiecewisePotential Scenario::potential() const { return parse_potential(potential_source); }

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::string masked;
  masked.reserve(text.size());

  int line_no = 1;
  std::size_t start = 0;
  bool have_n = false;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    std::string_view body = raw;
    if (const auto h = body.find('#'); h != std::string_view::npos) body = body.substr(0, h);

    std::size_t p = skip_ws(body, 0);
    std::size_t q = p;
    while (q < body.size() &&
           (std::isalpha(static_cast<unsigned char>(body[q])) || body[q] == '-')) {
      ++q;
    }
    const std::string_view kw = body.substr(p, q - p);
    const std::string_view rest = body.substr(q);

    bool scenario_key = true;
    if (kw == "epsilon") {
      s.epsilon = parse_const_value(rest, line_no);
    } else if (kw == "n") {
      s.n_set = parse_n_spec(rest, line_no);
      have_n = true;
    } else if (kw == "checks") {
      s.checks.clear();
      std::string word;
      std::istringstream in{std::string(rest)};
      while (in >> word) {
        if (!word.empty() && word.back() == ',') word.pop_back();
        if (word.empty()) continue;
        if (!kKnownChecks.contains(word)) {
          throw ParseError("unknown check '" + word + "'", line_no, 1);
        }
        s.checks.push_back(word);
      }
    } else if (kw == "output") {
      s.output_path = std::string(trim(rest));
    } else if (kw == "format") {
      const std::string_view v = trim(rest);
      if (v == "csv") {
        s.format = Scenario::Format::csv;
      } else if (v == "json") {
        s.format = Scenario::Format::json;
      } else {
        throw ParseError("format must be csv or json", line_no, 1);
      }
    } else if (kw == "domain" || kw == "piece" || kw == "jump" || kw.empty()) {
      scenario_key = false;  // potential grammar (or blank); leave in place
    } else {
      throw ParseError("unrecognized directive '" + std::string(kw) + "'", line_no, 1);
    }

    if (scenario_key) {
      masked.append(raw.size(), ' ');
    } else {
      masked.append(raw);
    }
    masked.push_back('\n');
    ++line_no;
    start = end + 1;
    if (end == text.size()) break;
  }

  if (!have_n) s.n_set.clear();
  if (s.checks.empty()) s.checks.push_back("ratio");
  s.potential_source = std::move(masked);
  // Validate the potential eagerly so scenario errors surface at load time.
  (void)s.potential();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<SweepRecord> run_sweep(const PiecewisePotential& f, const AsymptoticPrediction& pred,
                                   std::span<const int> ns, double epsilon, int threads) {
  if (ns.empty()) throw ValidationError("scenario has no n values");
  std::vector<SweepRecord> records(ns.size());
  std::vector<std::exception_ptr> errors(ns.size());

  const auto work = [&](std::size_t i) {
    try {
      const int n = ns[i];
      const double r = det_ratio(f, n, epsilon, pred.g_log);
      const double p = jump_prediction(pred, n);
      records[i] = SweepRecord{n, r, p, r - p};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::size_t nthreads =
      std::min<std::size_t>(threads > 0 ? static_cast<std::size_t>(threads) : hw, ns.size());

  if (nthreads <= 1) {
    for (std::size_t i = 0; i < ns.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= ns.size()) return;
          work(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    const std::string where = "n = " + std::to_string(ns[i]) + ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const NumericalError& e) {
      throw NumericalError(where + e.what());
    } catch (const std::exception& e) {
      throw ValidationError(where + e.what());
    }
  }

  std::sort(records.begin(), records.end(),
            [](const SweepRecord& a, const SweepRecord& b) { return a.n < b.n; });
  return records;
}

std::vector<SweepRecord> run_sweep(const Scenario& s, int threads) {
  const PiecewisePotential f = s.potential();
  const AsymptoticPrediction pred = make_prediction(f, s.epsilon);
  return run_sweep(f, pred, s.n_set, s.epsilon, threads);
}

PowerLawFit fit_power_law(std::span<const SweepRecord> records) {
  std::vector<std::pair<double, double>> pts;  // (n, log|error|)
  int n_min = 0, n_max = 0;
  for (const SweepRecord& r : records) {
    const double e = std::abs(r.error);
    if (e <= 1e-14) continue;  // degenerate points would dominate the log fit
    pts.emplace_back(static_cast<double>(r.n), std::log(e));
    if (n_min == 0 || r.n < n_min) n_min = r.n;
    if (r.n > n_max) n_max = r.n;
  }
  if (pts.size() < 10) {
    throw ValidationError("need at least 10 records with |error| > 1e-14 to fit, have " +
                          std::to_string(pts.size()));
  }

  const auto least_squares = [&](bool log_x) {
    KahanSum sx, sy, sxx, sxy;
    for (const auto& [n, ly] : pts) {
      const double x = log_x ? std::log(n) : n;
      sx += x;
      sy += ly;
      sxx += x * x;
      sxy += x * ly;
    }
    const double m = static_cast<double>(pts.size());
    const double slope = (m * sxy.value() - sx.value() * sy.value()) /
                         (m * sxx.value() - sx.value() * sx.value());
    const double intercept = (sy.value() - slope * sx.value()) / m;
    KahanSum rss;
    for (const auto& [n, ly] : pts) {
      const double x = log_x ? std::log(n) : n;
      const double resid = ly - (intercept + slope * x);
      rss += resid * resid;
    }
    return std::array<double, 3>{intercept, slope, rss.value()};
  };

  const auto [pow_icept, pow_slope, pow_rss] = least_squares(true);
  const auto [exp_icept, exp_slope, exp_rss] = least_squares(false);

  PowerLawFit fit;
  fit.amplitude = std::exp(pow_icept);
  fit.exponent = pow_slope;
  fit.rss = pow_rss;
  fit.exp_amplitude = std::exp(exp_icept);
  fit.exp_base = std::exp(exp_slope);
  fit.exp_rss = exp_rss;
  fit.power_law_wins = pow_rss < exp_rss;
  fit.n_min = n_min;
  fit.n_max = n_max;
  fit.used = pts.size();
  return fit;
}

namespace {

constexpr int kTrapezoidNodes = 1024;

const std::array<double, kTrapezoidNodes>& two_cos_table() {
  static const std::array<double, kTrapezoidNodes> table = [] {
    std::array<double, kTrapezoidNodes> t{};
    for (int j = 0; j < kTrapezoidNodes; ++j) {
      t[static_cast<std::size_t>(j)] =
          2.0 * std::cos(2.0 * std::numbers::pi * j / kTrapezoidNodes);
    }
    return t;
  }();
  return table;
}

}  // namespace

KmsResult kms_check(const PiecewisePotential& f, int n, int power, double epsilon) {
  const TraceFunction phi = TraceFunction::power(power);
  const SchrodingerMatrix m = build_matrix(f, n, epsilon);
  KmsResult out;
  out.lhs = trace_phi(m, phi) / n;

  const auto& cos_t = two_cos_table();
  const auto symbol_mean = [&](double x, Approach ap) {
    const double v = f.eval(x, ap);
    KahanSum acc;
    for (double c : cos_t) acc += phi(v - c);
    return acc.value() / kTrapezoidNodes;
  };
  const auto cuts = f.fn().interior_breakpoints(0.0, 1.0);
  out.rhs = integrate_with_breakpoints(symbol_mean, 0.0, 1.0, cuts, 1e-10);
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

double shift_invariance_check(const PiecewisePotential& f, int n, double eps_a, double eps_b) {
  const SchrodingerMatrix ma = build_matrix(f, n, eps_a);
  const SchrodingerMatrix mb = build_matrix(f, n, eps_b);
  double worst = 0.0;
  for (int p = 1; p <= 2; ++p) {
    const TraceFunction phi = TraceFunction::power(p);
    const double gap = std::abs(trace_phi(ma, phi) - trace_phi(mb, phi)) / n;
    worst = std::max(worst, gap);
  }
  return worst;
}

void write_csv(std::ostream& os, std::span<const SweepRecord> records) {
  os << "n,ratio,prediction,error\n";
  char buf[128];
  for (const SweepRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.n, r.ratio, r.prediction, r.error);
    os << buf;
  }
}

std::string to_csv(std::span<const SweepRecord> records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

void write_json(std::ostream& os, std::span<const SweepRecord> records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRecord& r : records) {
    arr.push_back({{"n", r.n}, {"ratio", r.ratio}, {"prediction", r.prediction}, {"error", r.error}});
  }
  os << arr.dump(2) << '\n';
}

}  // namespace schrodet
