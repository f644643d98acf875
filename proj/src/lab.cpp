#include "pvlab/lab.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "pvlab/arcs.hpp"
#include "pvlab/circle.hpp"
#include "pvlab/csv.hpp"
#include "pvlab/cutoff.hpp"
#include "pvlab/errors.hpp"
#include "pvlab/numtheory.hpp"
#include "pvlab/parallel.hpp"
#include "pvlab/variation.hpp"
#include "pvlab/weights.hpp"

namespace pvlab {

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {
      "assembly-decay", "major-arc", "siegel-walfisz", "minor-arc", "kernel-diff",
      "normalization",  "blowup",    "transfer",       "split",     "lemma21"};
  return ids;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(std::string_view key, const std::string& why) {
  throw ConfigError("field '" + std::string(key) + "': " + why);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T v{};
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty())
    bad(key, "cannot parse '" + std::string(text) + "' as a number");
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(v)) bad(key, "value must be finite");
  return v;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (trim(item).empty()) bad(key, "empty list element");
    out.push_back(parse_number<T>(key, item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::int64_t> default_ladder(const std::string& id) {
  if (id == "assembly-decay") return {100, 1000, 10000, 100000};
  if (id == "major-arc" || id == "siegel-walfisz") return {100, 1000000};
  if (id == "minor-arc") return {1000, 10000, 100000};
  if (id == "kernel-diff") return {100000};
  if (id == "normalization") return {100, 1000, 10000, 100000, 1000000};
  if (id == "blowup") return {10000};
  if (id == "transfer") return {1000};
  return {100};  // split, lemma21: the ladder only sizes the sieve
}

std::string fmt(double v) { return format_real(v); }

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  std::map<std::string, int> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key(trim(s.substr(0, eq)));
    const std::string_view val = trim(s.substr(eq + 1));
    if (seen[key]++) bad(key, "given more than once");
    if (key == "experiment") c.experiment = val;
    else if (key == "n_max") c.n_max = parse_number<std::uint64_t>(key, val);
    else if (key == "ladder") c.ladder = parse_list<std::int64_t>(key, val);
    else if (key == "family") {
      try {
        c.family = parse_kernel_family(val);
      } catch (const ConfigError& e) {
        bad(key, e.what());
      }
    }
    else if (key == "D") c.D = parse_number<double>(key, val);
    else if (key == "alpha") c.alpha = parse_number<double>(key, val);
    else if (key == "epsilon") c.epsilon = parse_number<double>(key, val);
    else if (key == "r") c.r_list = parse_list<double>(key, val);
    else if (key == "Q") c.Q = parse_number<std::int64_t>(key, val);
    else if (key == "t_max") c.t_max = parse_number<int>(key, val);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, val);
    else if (key == "output") c.output = val;
    else if (key == "svg") c.svg = val;
    else if (key == "M") c.M = parse_number<std::int64_t>(key, val);
    else if (key == "q_max") c.q_max = parse_number<std::int64_t>(key, val);
    else if (key == "xi") c.xi = val;
    else if (key == "x") c.x = parse_number<std::int64_t>(key, val);
    else if (key == "beta") c.beta = parse_number<double>(key, val);
    else if (key == "trials") c.trials = parse_number<std::int64_t>(key, val);
    else if (key == "length") c.length = parse_number<std::int64_t>(key, val);
    else if (key == "u") c.u_list = parse_list<double>(key, val);
    else bad(key, "unknown key");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  return parse_config(in);
}

ExperimentConfig resolve(ExperimentConfig c) {
  const auto& ids = experiment_ids();
  if (c.experiment.empty()) bad("experiment", "missing");
  if (std::find(ids.begin(), ids.end(), c.experiment) == ids.end())
    bad("experiment", "unknown experiment '" + c.experiment + "'");
  if (c.ladder.empty()) c.ladder = default_ladder(c.experiment);
  const std::int64_t floor_N = c.experiment == "kernel-diff" || c.experiment == "assembly-decay" ? 3 : 2;
  for (std::size_t i = 0; i < c.ladder.size(); ++i) {
    if (c.ladder[i] < floor_N) bad("ladder", "entries must be >= " + std::to_string(floor_N));
    if (i && c.ladder[i] <= c.ladder[i - 1]) bad("ladder", "must be strictly ascending");
  }
  const auto top = static_cast<std::uint64_t>(c.ladder.back());
  if (c.n_max == 0) c.n_max = top;
  if (c.n_max < top) bad("n_max", "smaller than the largest ladder entry");
  if (c.n_max > 4'000'000'000ULL) bad("n_max", "above the supported 4e9");
  if (!(c.D > 1.0)) bad("D", "must be > 1");
  if (!(c.alpha > 0.0)) bad("alpha", "must be > 0");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) bad("epsilon", "must lie in (0, 1)");
  if (c.r_list.empty()) bad("r", "empty");
  for (double r : c.r_list)
    if (r < 1.0) bad("r", "every r must be >= 1");
  if (c.Q < 4 || c.Q > (std::int64_t{1} << 22) || !std::has_single_bit(static_cast<std::uint64_t>(c.Q)))
    bad("Q", "must be a power of two in [4, 2^22]");
  if (c.t_max < 0 || c.t_max > 40) bad("t_max", "must be in [0, 40]");
  if (c.M < 0 || c.M > c.ladder.front()) bad("M", "must be in [0, smallest ladder entry]");
  if (c.q_max < 1 || c.q_max > 1000) bad("q_max", "must be in [1, 1000]");
  try {
    (void)parse_rational(c.xi);
  } catch (const std::exception& e) {
    bad("xi", e.what());
  }
  if (c.trials < 1 || c.trials > 10'000'000) bad("trials", "must be in [1, 1e7]");
  if (c.length < 2 || c.length > 100'000) bad("length", "must be in [2, 1e5]");
  if (c.u_list.empty()) bad("u", "empty");
  if (c.experiment == "lemma21") {
    if (c.D > 4.0) bad("D", "lemma21 needs D <= 4 so eta_t resolves");
    if (c.t_max < 1 || c.t_max > 6) bad("t_max", "lemma21 needs t_max in [1, 6]");
  }
  if (c.experiment == "blowup" && c.ladder.back() > 200'000) bad("ladder", "blowup runs an O(N^2) DP; keep N <= 2e5");
  if (c.experiment == "transfer" && c.ladder.back() > 200'000) bad("ladder", "transfer keeps n <= 2e5");
  return c;
}

namespace {

struct Emitter {
  const ExperimentConfig& cfg;
  std::vector<ResultRow>& rows;
  std::string regime;

  void operator()(std::string params, std::string metric, double value, bool sampled = false,
                  int trunc = -1) const {
    rows.push_back({cfg.experiment, std::move(params), std::move(metric), value, regime, sampled, trunc});
  }
};

void run_assembly(const ExperimentConfig& c, const PrimeTable& table, const Emitter& emit) {
  const Cutoff cutoff(c.D);
  for (auto N : c.ladder) {
    const auto ae = assembly_error(table, cutoff, c.family, N, c.t_max, c.Q);
    std::size_t overlaps = 0;
    for (auto o : ae.overlaps) overlaps += o;
    const std::string p = "N=" + std::to_string(N);
    emit(p, "sup_error", ae.error, false, ae.levels.effective);
    emit(p, "argmax_j", static_cast<double>(ae.argmax), false, ae.levels.effective);
    emit(p, "overlap_points", static_cast<double>(overlaps), false, ae.levels.effective);
    emit(p, "log_decay_reference", std::pow(std::log(static_cast<double>(N)), -c.alpha / 8.0), false,
         ae.levels.effective);
  }
}

void run_major_arc(const ExperimentConfig& c, const PrimeTable& table, const Emitter& emit) {
  for (auto N : c.ladder) {
    double worst = 0.0;
    bool asymptotic = true;
    for (std::int64_t q = 1; q <= c.q_max; ++q) {
      for (auto a : reduced_residues(static_cast<std::uint64_t>(q))) {
        const auto ae = major_arc_error(table, c.family, N, c.M, c.alpha, static_cast<std::int64_t>(a), q);
        asymptotic = asymptotic && ae.asymptotic_regime;
        Emitter local = emit;
        if (!ae.asymptotic_regime) local.regime = "exploratory";
        local("N=" + std::to_string(N) + ";a=" + std::to_string(a) + ";q=" + std::to_string(q), "arc_error",
              ae.error, true);
        worst = std::max(worst, ae.error);
      }
    }
    Emitter local = emit;
    if (!asymptotic) local.regime = "exploratory";
    local("N=" + std::to_string(N), "max_arc_error", worst, true);
  }
}

void run_siegel_walfisz(const ExperimentConfig& c, const PrimeTable& table, const Emitter& emit) {
  for (auto x : c.ladder) {
    const auto ux = static_cast<std::uint64_t>(x);
    for (std::int64_t q = 1; q <= c.q_max; ++q) {
      const double phi = static_cast<double>(arith().phi(static_cast<std::uint64_t>(q)));
      for (auto r : reduced_residues(static_cast<std::uint64_t>(q))) {
        const double psi = chebyshev_psi_progression(table, ux, static_cast<std::uint64_t>(q), r);
        emit("x=" + std::to_string(x) + ";q=" + std::to_string(q) + ";r=" + std::to_string(r),
             "relative_deviation", std::abs(psi - static_cast<double>(x) / phi) / static_cast<double>(x));
      }
    }
  }
}

void run_minor_arc(const ExperimentConfig& c, const PrimeTable& table, const Emitter& emit) {
  const Rational gamma = torus(parse_rational(c.xi));
  for (auto N : c.ladder) {
    const std::string p = "N=" + std::to_string(N) + ";xi=" + gamma.str();
    const double n = static_cast<double>(N);
    const double th = table.theta(static_cast<std::uint64_t>(N));
    // F_N = sum_{p <= N} e(xi p) log p = N m_N
    const double F = std::abs(prime_exponential_sum(table, gamma, 0, N, KernelFamily::avg)) * n;
    emit(p, "normalized_sum", F * n / (th * th));
    emit(p, "sum_over_theta", F / th);
    if (N >= 3) {
      const double lp = std::pow(std::log(n), c.alpha);
      const auto Qcap = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::min(n / lp, 2147483648.0)));
      const auto da = dirichlet_approx(gamma, Qcap);
      emit(p, "dirichlet_q", static_cast<double>(da.q));
      emit(p, "dirichlet_remainder", std::abs(da.remainder));
      emit(p, "major", arc_classify(ArcDecomposition(N, c.alpha), gamma).major ? 1.0 : 0.0);
      if (da.q >= 2) emit(p, "vinogradov_over_N", vinogradov_bound(n, static_cast<double>(da.q)) / n);
    }
  }
}

void run_kernel_diff(const ExperimentConfig& c, const PrimeTable& table, const Emitter& emit) {
  double worst = 0.0;
  std::int64_t violations = 0;
  std::size_t next = 0;
  for (std::int64_t N = 3; N <= c.ladder.back(); ++N) {
    const double d = kernel_l1_difference(table, c.family, N);
    const double ref = std::log(static_cast<double>(N)) / static_cast<double>(N);
    worst = std::max(worst, d / ref);
    if (d > 3.0 * ref) ++violations;
    while (next < c.ladder.size() && c.ladder[next] == N) {
      const std::string p = "N=" + std::to_string(N);
      emit(p, "max_ratio_to_logN_over_N", worst);
      emit(p, "violations_of_3logN_over_N", static_cast<double>(violations));
      ++next;
    }
  }
}

void run_normalization(const ExperimentConfig& c, const PrimeTable& table, const Emitter& emit) {
  for (auto N : c.ladder) {
    const auto uN = static_cast<std::uint64_t>(N);
    const std::string p = "N=" + std::to_string(N);
    emit(p, "theta_over_N", table.theta(uN) / static_cast<double>(N));
    emit(p, "deviation", std::abs(table.theta(uN) / static_cast<double>(N) - 1.0));
    emit(p, "weighted_deviation", pnt_normalization_check(table, uN, c.beta));
  }
}

void run_blowup(const ExperimentConfig& c, const PrimeTable& table, const Emitter& emit) {
  const std::int64_t top = c.ladder.back();
  std::vector<std::int64_t> Ns;
  for (std::int64_t N = 2; N <= top; ++N) Ns.push_back(N);
  const auto traj = trajectory(table, c.family, FiniteSignal::delta(0), Ns, c.x);
  double prev = INFINITY;
  bool monotone = true;
  auto rs = c.r_list;
  std::sort(rs.begin(), rs.end());
  for (double r : rs) {
    const double v = variation_exact(traj, r).value;
    monotone = monotone && v <= prev;
    prev = v;
    emit("r=" + fmt(r) + ";N=" + std::to_string(top) + ";x=" + std::to_string(c.x), "V_r", v);
  }
  emit("N=" + std::to_string(top) + ";x=" + std::to_string(c.x), "nonincreasing_in_r", monotone ? 1.0 : 0.0);
}

void run_transfer(const ExperimentConfig& c, const PrimeTable& table, const Emitter& emit) {
  const std::int64_t top = c.ladder.back();
  std::vector<double> w(static_cast<std::size_t>(top)), wp(w.size());
  for (std::int64_t n = 1; n <= top; ++n)
    if (table.is_prime(static_cast<std::uint64_t>(n))) {
      w[static_cast<std::size_t>(n - 1)] = std::log(static_cast<double>(n));
      wp[static_cast<std::size_t>(n - 1)] = 1.0;
    }
  const WeightScheme scheme(w, wp);
  // a_n = f(x - n) for a seeded random f, and for f = delta_0.
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> a_rand(w.size()), a_delta(w.size(), 0.0);
  for (auto& v : a_rand) v = unif(rng);
  if (c.x >= 1 && c.x <= top) a_delta[static_cast<std::size_t>(c.x - 1)] = 1.0;
  const std::pair<const char*, const std::vector<double>*> inputs[] = {{"random", &a_rand}, {"delta", &a_delta}};
  for (const auto& [name, a] : inputs) {
    for (double r : c.r_list) {
      const auto res = prop52_check(scheme, *a, r);
      const std::string p = "r=" + fmt(r) + ";n=" + std::to_string(top) + ";f=" + name;
      emit(p, "lhs", res.lhs);
      emit(p, "rhs", res.rhs);
      emit(p, "Cprime", res.Cprime);
      emit(p, "pass", res.lhs <= res.Cprime * res.rhs * (1.0 + 1e-10) ? 1.0 : 0.0);
    }
  }
}

void run_split(const ExperimentConfig& c, const Emitter& emit) {
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const auto len = static_cast<std::size_t>(c.length);
  std::vector<std::vector<double>> seqs(static_cast<std::size_t>(c.trials), std::vector<double>(len));
  for (auto& s : seqs)
    for (auto& v : s) v = unif(rng);
  const auto part = BlockPartition::for_length(c.epsilon, len);
  for (double r : c.r_list) {
    std::vector<double> ratio(seqs.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_count())
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(seqs.size()); ++i) {
      const auto& s = seqs[static_cast<std::size_t>(i)];
      const auto sp = long_short_split(s, r, part);
      const double v = variation_exact(s, r).value;
      const double denom = sp.long_part + sp.short_part;
      ratio[static_cast<std::size_t>(i)] = denom > 0.0 ? v / denom : (v > 0.0 ? INFINITY : 0.0);
    }
    double worst = 0.0;
    std::int64_t bad_count = 0;
    for (double q : ratio) {
      worst = std::max(worst, q);
      if (q > 3.0) ++bad_count;
    }
    const std::string p = "r=" + fmt(r) + ";length=" + std::to_string(len) + ";epsilon=" + fmt(c.epsilon);
    emit(p, "max_ratio", worst);
    emit(p, "violations_of_factor_3", static_cast<double>(bad_count));
  }
}

void run_lemma21(const ExperimentConfig& c, const Emitter& emit) {
  const Cutoff cutoff(c.D);
  for (int t = 1; t <= c.t_max; ++t) {
    const auto J = lemma21_default_J(cutoff, t);
    for (double u : c.u_list) {
      const auto res = lemma21_check(cutoff, t, u, J);
      const std::string p = "t=" + std::to_string(t) + ";u=" + fmt(u) + ";J=" + std::to_string(J);
      emit(p, "first", res.first, false, t);
      emit(p, "second", res.second, false, t);
      emit(p, "second_bound", std::abs(u) * std::pow(c.D, -t - 2), false, t);
    }
  }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& raw) {
  const ExperimentConfig c = resolve(raw);
  std::vector<ResultRow> rows;
  const Emitter emit{c, rows, (c.alpha <= 32.0 || c.D <= 32.0) ? "exploratory" : "paper"};
  const auto& id = c.experiment;
  if (id == "split") {
    run_split(c, emit);
    return rows;
  }
  if (id == "lemma21") {
    run_lemma21(c, emit);
    return rows;
  }
  const PrimeTable table(c.n_max);
  if (id == "assembly-decay") run_assembly(c, table, emit);
  else if (id == "major-arc") run_major_arc(c, table, emit);
  else if (id == "siegel-walfisz") run_siegel_walfisz(c, table, emit);
  else if (id == "minor-arc") run_minor_arc(c, table, emit);
  else if (id == "kernel-diff") run_kernel_diff(c, table, emit);
  else if (id == "normalization") run_normalization(c, table, emit);
  else if (id == "blowup") run_blowup(c, table, emit);
  else if (id == "transfer") run_transfer(c, table, emit);
  return rows;
}

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  CsvWriter w(os);
  w.row({"experiment", "params", "metric", "value", "regime", "sampled_sup", "truncation"});
  for (const auto& r : rows)
    w.row({r.experiment, r.params, r.metric, format_real(r.value), r.regime, r.sampled_sup ? "1" : "0",
           r.truncation < 0 ? "" : std::to_string(r.truncation)});
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else if (ch != '\r') {
      out.back() += ch;
    }
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(std::string_view csv) {
  // series name -> (x, y) points in file order
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split_csv_line(line);
    if (header.empty()) {
      header = std::move(f);
      for (const char* need : {"params", "metric", "value"})
        if (std::find(header.begin(), header.end(), need) == header.end())
          throw ConfigError(std::string("results CSV lacks the '") + need + "' column");
      continue;
    }
    const auto col = [&](std::string_view name) -> std::string {
      for (std::size_t i = 0; i < header.size() && i < f.size(); ++i)
        if (header[i] == name) return f[i];
      return {};
    };
    const std::string params = col("params");
    const auto eq = params.find('=');
    if (eq == std::string::npos) continue;
    const auto semi = params.find(';');
    double x = 0.0, y = 0.0;
    try {
      x = std::stod(params.substr(eq + 1, semi == std::string::npos ? std::string::npos : semi - eq - 1));
      y = std::stod(col("value"));
    } catch (const std::exception&) {
      continue;
    }
    std::string name = col("metric");
    if (semi != std::string::npos) name += " [" + params.substr(semi + 1) + "]";
    series[name].push_back({x, y});
  }
  bool logx = true, logy = true;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& [name, pts] : series)
    for (auto [x, y] : pts) {
      if (!(x > 0.0)) logx = false;
      if (!(y > 0.0)) logy = false;
    }
  const auto tx = [&](double v) { return logx ? std::log10(v) : v; };
  const auto ty = [&](double v) { return logy ? std::log10(v) : v; };
  for (const auto& [name, pts] : series)
    for (auto [x, y] : pts) {
      if (!std::isfinite(tx(x)) || !std::isfinite(ty(y))) continue;
      x0 = std::min(x0, tx(x));
      x1 = std::max(x1, tx(x));
      y0 = std::min(y0, ty(y));
      y1 = std::max(y1, ty(y));
    }
  if (!(x1 > x0)) { x0 -= 1.0; x1 += 1.0; }
  if (!(y1 > y0)) { y0 -= 1.0; y1 += 1.0; }
  constexpr double W = 720, H = 440, left = 70, right = 250, top = 20, bottom = 50;
  const auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * (W - left - right); };
  const auto py = [&](double v) { return H - bottom - (ty(v) - y0) / (y1 - y0) * (H - top - bottom); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
     << "\" stroke=\"black\"/>\n";
  const auto axis_label = [&](double v, bool is_log) { return format_real(is_log ? std::pow(10.0, v) : v); };
  os << "<text x=\"" << left << "\" y=\"" << H - bottom + 18 << "\" font-size=\"11\">" << axis_label(x0, logx) << "</text>\n";
  os << "<text x=\"" << W - right << "\" y=\"" << H - bottom + 18 << "\" font-size=\"11\" text-anchor=\"end\">"
     << axis_label(x1, logx) << "</text>\n";
  os << "<text x=\"" << left - 4 << "\" y=\"" << H - bottom << "\" font-size=\"11\" text-anchor=\"end\">"
     << axis_label(y0, logy) << "</text>\n";
  os << "<text x=\"" << left - 4 << "\" y=\"" << top + 10 << "\" font-size=\"11\" text-anchor=\"end\">"
     << axis_label(y1, logy) << "</text>\n";
  os << "<text x=\"" << (W - right + left) / 2 << "\" y=\"" << H - 12 << "\" font-size=\"12\" text-anchor=\"middle\">"
     << (logx ? "log scale" : "linear scale") << " / " << (logy ? "log" : "linear") << "</text>\n";
  std::size_t idx = 0;
  for (const auto& [name, pts] : series) {
    const char* color = colors[idx % std::size(colors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : pts)
      if (std::isfinite(tx(x)) && std::isfinite(ty(y))) os << format_real(px(x)) << ',' << format_real(py(y)) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << W - right + 8 << "\" y=\"" << top + 14 * (idx + 1) << "\" font-size=\"10\" fill=\"" << color
       << "\">" << xml_escape(name) << "</text>\n";
    ++idx;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace pvlab
