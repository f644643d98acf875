// pvlab: command-line front end for the prime-variation laboratory.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pvlab/arcs.hpp"
#include "pvlab/circle.hpp"
#include "pvlab/csv.hpp"
#include "pvlab/errors.hpp"
#include "pvlab/kernels.hpp"
#include "pvlab/lab.hpp"
#include "pvlab/numtheory.hpp"
#include "pvlab/parallel.hpp"
#include "pvlab/variation.hpp"
#include "pvlab/weights.hpp"

using namespace pvlab;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kResolution = 3, kIo = 4 };

// Writes to --out when given, else stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw IoError("cannot open " + out_path + " for writing");
  f << text;
  if (!f) throw IoError("write failed for " + out_path);
}

std::vector<double> parse_data(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--data: cannot parse '" + item + "'");
    }
    if (!std::isfinite(out.back())) throw ConfigError("--data: entries must be finite");
  }
  if (out.empty()) throw ConfigError("--data: empty sequence");
  return out;
}

std::string path_string(const std::vector<std::size_t>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? ";" : "") + std::to_string(path[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();
  CLI::App app{"pvlab: r-variation and circle-method laboratory for prime averages"};
  app.require_subcommand(1);
  std::string out;

  auto* sieve_cmd = app.add_subcommand("sieve", "prime count and theta(n_max); optional cache file");
  std::uint64_t n_max = 0;
  std::string cache_out;
  bool list = false;
  sieve_cmd->add_option("--n-max", n_max, "sieve limit (>= 2)")->required();
  sieve_cmd->add_option("--cache", cache_out, "also write the binary prime cache to this path");
  sieve_cmd->add_flag("--list", list, "print the primes instead of the summary");
  sieve_cmd->add_option("--out", out, "output path (default stdout)");

  auto* kernel_cmd = app.add_subcommand("kernel", "dump a kernel as site,weight CSV");
  std::string family = "avg";
  std::int64_t N = 0, M = 0;
  kernel_cmd->add_option("--family", family, "avg | hilbert | avg_unweighted");
  kernel_cmd->add_option("--N", N, "truncation N (>= 2)")->required();
  kernel_cmd->add_option("--out", out, "output path (default stdout)");

  auto* expsum_cmd = app.add_subcommand("expsum", "prime exponential sum over M < p <= N");
  std::string xi_text = "0";
  expsum_cmd->add_option("--N", N, "upper limit N (>= 2)")->required();
  expsum_cmd->add_option("--M", M, "lower window edge (default 0)");
  expsum_cmd->add_option("--xi", xi_text, "frequency, a/b or decimal (exact)");
  expsum_cmd->add_option("--family", family, "avg | hilbert | avg_unweighted");
  expsum_cmd->add_option("--out", out, "output path (default stdout)");

  auto* arcs_cmd = app.add_subcommand("arcs", "major/minor classification of xi, or of every j/Q");
  double alpha = 4.0;
  std::int64_t arcs_Q = 0;
  arcs_cmd->add_option("--N", N, "N (>= 3)")->required();
  arcs_cmd->add_option("--alpha", alpha, "arc exponent alpha > 0");
  arcs_cmd->add_option("--xi", xi_text, "point to classify (a/b or decimal)");
  arcs_cmd->add_option("--Q", arcs_Q, "classify the whole grid j/Q instead of --xi");
  arcs_cmd->add_option("--out", out, "output path (default stdout)");

  auto* nu_cmd = app.add_subcommand("nu", "multiplier grid: nu, m_N or their difference");
  double D = 2.0;
  int t_max = 6;
  std::string kind = "nu";
  std::int64_t Q = 4096;
  nu_cmd->add_option("--N", N, "N (>= 2)")->required();
  nu_cmd->add_option("--family", family, "avg | hilbert | avg_unweighted");
  nu_cmd->add_option("--D", D, "cutoff scale D > 1 (default 2)");
  nu_cmd->add_option("--t-max", t_max, "requested truncation level (default 6)");
  nu_cmd->add_option("--Q", Q, "grid size, power of two (default 4096)");
  nu_cmd->add_option("--kind", kind, "nu | m | error (default nu)");
  nu_cmd->add_option("--out", out, "output path (default stdout)");

  auto* var_cmd = app.add_subcommand("variation", "r-variation of a sequence with one maximizing path");
  double r = 2.0;
  std::string data;
  double approx = -1.0;
  var_cmd->add_option("--r", r, "exponent r >= 1")->required();
  var_cmd->add_option("--data", data, "comma-separated values")->required();
  var_cmd->add_option("--approx", approx, "APPROXIMATE mode with this turning-point threshold");
  var_cmd->add_option("--out", out, "output path (default stdout)");

  auto* transfer_cmd = app.add_subcommand("transfer", "weight transfer on the prime-average instance");
  std::int64_t n_top = 1000, x = 2;
  transfer_cmd->add_option("--n", n_top, "length n (default 1000)");
  transfer_cmd->add_option("--r", r, "exponent r >= 1 (default 2)");
  transfer_cmd->add_option("--x", x, "a_n = delta_0(x - n) (default 2)");
  transfer_cmd->add_option("--out", out, "output path (default stdout)");

  auto* exp_cmd = app.add_subcommand("experiment", "run an experiment from a key = value config file");
  std::string config_path, svg_path;
  exp_cmd->add_option("--config", config_path, "config file")->required();
  exp_cmd->add_option("--out", out, "CSV path (overrides the config 'output')");
  exp_cmd->add_option("--svg", svg_path, "SVG chart path (overrides the config 'svg')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    std::ostringstream os;
    if (sieve_cmd->parsed()) {
      const PrimeTable table(n_max);
      if (!cache_out.empty()) save_prime_cache(table, cache_out);
      CsvWriter w(os);
      if (list) {
        w.row({"p"});
        for (auto p : table.primes()) w.row({std::to_string(p)});
      } else {
        w.row({"n_max", "prime_count", "theta"});
        w.row({std::to_string(n_max), std::to_string(table.primes().size()), format_real(table.theta(n_max))});
      }
    } else if (kernel_cmd->parsed()) {
      if (N < 2) throw ConfigError("--N must be >= 2");
      const PrimeTable table(static_cast<std::uint64_t>(N));
      write_kernel_csv(os, build_kernel(table, parse_kernel_family(family), N));
    } else if (expsum_cmd->parsed()) {
      if (N < 2 || M < 0 || M > N) throw ConfigError("need 0 <= --M <= --N and --N >= 2");
      const Rational xi = parse_rational(xi_text);
      const PrimeTable table(static_cast<std::uint64_t>(N));
      const auto s = prime_exponential_sum(table, torus(xi), M, N, parse_kernel_family(family));
      CsvWriter w(os);
      w.row({"xi", "M", "N", "family", "re", "im", "abs"});
      w.row({xi.str(), std::to_string(M), std::to_string(N), family, format_real(s.real()), format_real(s.imag()),
             format_real(std::abs(s))});
    } else if (arcs_cmd->parsed()) {
      const ArcDecomposition arcs(N, alpha);
      CsvWriter w(os);
      w.comment("N=" + std::to_string(N) + ",alpha=" + format_real(alpha) + ",halfwidth=" +
                format_real(static_cast<double>(arcs.halfwidth())) + ",q_max=" + std::to_string(arcs.q_max()));
      w.row({"xi", "class", "a", "q"});
      const auto row = [&](const Rational& xi) {
        const auto c = arc_classify(arcs, xi);
        w.row({xi.str(), c.major ? "major" : "minor", c.major ? std::to_string(c.center.a) : "",
               c.major ? std::to_string(c.center.q) : ""});
      };
      if (arcs_Q > 0) {
        for (std::int64_t j = 0; j < arcs_Q; ++j) row(Rational(j, arcs_Q));
      } else {
        row(torus(parse_rational(xi_text)));
      }
    } else if (nu_cmd->parsed()) {
      if (kind != "nu" && kind != "m" && kind != "error") throw ConfigError("--kind must be nu | m | error");
      const auto fam = parse_kernel_family(family);
      const Cutoff cutoff(D);
      MultiplierGrid g;
      if (kind == "nu") {
        g = build_nu(cutoff, fam, N, t_max, Q);
      } else {
        const PrimeTable table(static_cast<std::uint64_t>(N));
        g = exponential_sum_grid(table, fam, 0, N, Q);
        if (kind == "error") {
          const auto nu = build_nu(cutoff, fam, N, t_max, Q);
          for (std::size_t j = 0; j < g.values.size(); ++j) g.values[j] -= nu.values[j];
          g.label = "error";
          g.D = D;
          g.t_max = nu.t_max;
        }
      }
      write_grid_csv(os, g);
    } else if (var_cmd->parsed()) {
      const auto seq = parse_data(data);
      const auto res = approx >= 0.0 ? variation_approx(seq, r, approx) : variation_exact(seq, r);
      CsvWriter w(os);
      w.row({"r", "value", "path", "mode"});
      w.row({format_real(r), format_real(res.value), path_string(res.path), res.approximate ? "APPROXIMATE" : "exact"});
    } else if (transfer_cmd->parsed()) {
      if (n_top < 2) throw ConfigError("--n must be >= 2");
      const PrimeTable table(static_cast<std::uint64_t>(n_top));
      std::vector<double> w(static_cast<std::size_t>(n_top)), wp(w.size()), a(w.size());
      for (std::int64_t n = 1; n <= n_top; ++n) {
        if (table.is_prime(static_cast<std::uint64_t>(n))) {
          w[static_cast<std::size_t>(n - 1)] = std::log(static_cast<double>(n));
          wp[static_cast<std::size_t>(n - 1)] = 1.0;
        }
        a[static_cast<std::size_t>(n - 1)] = n == x ? 1.0 : 0.0;
      }
      const auto res = prop52_check(WeightScheme(w, wp), a, r);
      CsvWriter cw(os);
      cw.row({"n", "r", "x", "lhs", "rhs", "Cprime", "pass"});
      cw.row({std::to_string(n_top), format_real(r), std::to_string(x), format_real(res.lhs), format_real(res.rhs),
              format_real(res.Cprime), res.lhs <= res.Cprime * res.rhs * (1.0 + 1e-10) ? "1" : "0"});
    } else if (exp_cmd->parsed()) {
      auto cfg = load_config(config_path);
      if (!out.empty()) cfg.output = out;
      if (!svg_path.empty()) cfg.svg = svg_path;
      cfg = resolve(cfg);
      const auto rows = run_experiment(cfg);
      std::ostringstream csv;
      write_results_csv(csv, rows);
      emit(cfg.output, csv.str());
      if (!cfg.svg.empty()) emit(cfg.svg, render_svg(csv.str()));
      return kOk;
    }
    emit(out, os.str());
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << '\n';
    return kResolution;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfig;
  } catch (const RangeError& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return kConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
