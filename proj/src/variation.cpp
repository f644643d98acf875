#include "pvlab/variation.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pvlab/errors.hpp"

namespace pvlab {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kParallelThreshold = 2048;

void validate(std::span<const double> seq, double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw DomainError("r-variation requires finite r >= 1, got " + std::to_string(r));
  for (const double v : seq)
    if (!std::isfinite(v)) throw DomainError("r-variation requires a finite sequence");
}

struct Candidate {
  double value;
  std::size_t pred;
};

// Better candidate: larger value, then smaller predecessor (kNone = "start here"
// ranks below every real index only when values tie at zero, see caller).
inline bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.pred < b.pred;
}

Candidate best_predecessor_serial(std::span<const double> seq, const std::vector<double>& f, std::size_t j,
                                  double r) {
  Candidate best{0.0, kNone};
  for (std::size_t i = 0; i < j; ++i) {
    const double v = f[i] + jump_cost(seq[j] - seq[i], r);
    if (v > best.value) best = {v, i};
  }
  return best;
}

Candidate best_predecessor_parallel(std::span<const double> seq, const std::vector<double>& f, std::size_t j,
                                    double r) {
  Candidate best{0.0, kNone};
#pragma omp parallel
  {
    Candidate local{0.0, kNone};
#pragma omp for schedule(static) nowait
    for (std::size_t i = 0; i < j; ++i) {
      const double v = f[i] + jump_cost(seq[j] - seq[i], r);
      if (v > local.value || (v == local.value && local.pred != kNone && i < local.pred)) local = {v, i};
    }
#pragma omp critical(pvlab_dp_merge)
    {
      if (local.pred != kNone && (best.pred == kNone ? local.value > best.value : better(local, best))) best = local;
    }
  }
  return best;
}

VariationResult finish(std::span<const double> seq, const std::vector<double>& f,
                       const std::vector<std::size_t>& pred, double r) {
  VariationResult res;
  std::size_t end = kNone;
  double top = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f[j] > top) {
      top = f[j];
      end = j;
    }
  if (end == kNone) return res;
  for (std::size_t j = end; j != kNone; j = pred[j]) res.path.push_back(j);
  std::reverse(res.path.begin(), res.path.end());
  // V_r dominates the oscillation max - min; keep that exactly so the
  // pointwise sup estimate holds in floating point. A root within rounding of
  // the oscillation (about an ulp per summed jump) is noise and snaps to it, so
  // monotone sequences give the same value for every r.
  const auto [lo, hi] = std::minmax_element(seq.begin(), seq.end());
  const double osc = *hi - *lo;
  const double root = std::pow(top, 1.0 / r);
  const double slack = (8.0 + static_cast<double>(res.path.size())) * std::numeric_limits<double>::epsilon();
  res.value = root <= osc * (1.0 + slack) ? osc : root;
  return res;
}

VariationResult run_dp(std::span<const double> seq, double r, bool allow_parallel) {
  validate(seq, r);
  const std::size_t n = seq.size();
  if (n < 2) return {};
  std::vector<double> f(n, 0.0);
  std::vector<std::size_t> pred(n, kNone);
  for (std::size_t j = 1; j < n; ++j) {
    const Candidate c = allow_parallel && j >= kParallelThreshold && omp_get_max_threads() > 1
                            ? best_predecessor_parallel(seq, f, j, r)
                            : best_predecessor_serial(seq, f, j, r);
    f[j] = c.value;
    pred[j] = c.pred;
  }
  return finish(seq, f, pred, r);
}

}  // namespace

double jump_cost(double d, double r) {
  const double a = std::abs(d);
  if (r == 1.0) return a;
  if (r == 2.0) return a * a;
  return std::pow(a, r);
}

VariationResult variation_exact(std::span<const double> seq, double r) { return run_dp(seq, r, true); }

namespace serial {
VariationResult variation_dp(std::span<const double> seq, double r) { return run_dp(seq, r, false); }
}  // namespace serial

double variation_norm(std::span<const double> seq, double r) {
  const VariationResult v = variation_exact(seq, r);
  double sup = 0.0;
  for (const double x : seq) sup = std::max(sup, std::abs(x));
  return sup + v.value;
}

VariationResult variation_approx(std::span<const double> seq, double r, double threshold) {
  validate(seq, r);
  // Turning points: drop repeats, keep the ends of every monotone run.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!keep.empty() && seq[i] == seq[keep.back()]) continue;
    if (keep.size() >= 2) {
      const double prev = seq[keep[keep.size() - 2]], mid = seq[keep.back()];
      if ((mid - prev) * (seq[i] - mid) > 0) keep.back() = i;  // still monotone: extend the run
      else keep.push_back(i);
    } else {
      keep.push_back(i);
    }
  }
  if (threshold > 0.0) {
    bool changed = true;
    while (changed && keep.size() > 3) {
      changed = false;
      std::vector<std::size_t> next;
      next.push_back(keep[0]);
      std::size_t i = 1;
      for (; i + 2 < keep.size(); ++i) {
        if (std::abs(seq[keep[i + 1]] - seq[keep[i]]) < threshold) {
          ++i;  // drop the interior pair (i, i + 1); neighbours stay alternating
          changed = true;
          continue;
        }
        next.push_back(keep[i]);
      }
      for (; i < keep.size(); ++i) next.push_back(keep[i]);
      keep.swap(next);
    }
  }
  std::vector<double> reduced(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) reduced[i] = seq[keep[i]];
  VariationResult res = variation_exact(reduced, r);
  for (auto& p : res.path) p = keep[p];
  res.approximate = true;
  return res;
}

BlockPartition BlockPartition::for_length(double epsilon, std::size_t length) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("block partition needs epsilon in (0, 1)");
  BlockPartition part;
  part.epsilon = epsilon;
  for (std::size_t k = 0;; ++k) {
    const double e = std::pow(static_cast<double>(k), epsilon);
    if (e >= 63.0) break;
    const auto nk = static_cast<std::size_t>(std::floor(std::exp2(e)));
    if (nk > length) break;
    if (part.boundaries.empty() || part.boundaries.back() != nk) part.boundaries.push_back(nk);
  }
  return part;
}

LongShortSplit long_short_split(std::span<const double> seq, double r, const BlockPartition& part) {
  validate(seq, r);
  const std::size_t J = seq.size();
  LongShortSplit out;
  if (J == 0) return out;

  std::vector<double> at_boundaries;
  std::vector<std::size_t> starts;  // 1-based block starts within [1, J]
  for (const auto b : part.boundaries)
    if (b >= 1 && b <= J) {
      at_boundaries.push_back(seq[b - 1]);
      starts.push_back(b);
    }
  out.long_part = variation_exact(at_boundaries, r).value;

  if (starts.empty() || starts.front() != 1) starts.insert(starts.begin(), 1);
  double acc = 0.0;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const std::size_t lo = starts[k];
    const std::size_t hi = k + 1 < starts.size() ? starts[k + 1] - 1 : J;
    const double v = variation_exact(seq.subspan(lo - 1, hi - lo + 1), r).value;
    acc += std::pow(v, r);
  }
  out.short_part = std::pow(acc, 1.0 / r);
  return out;
}

SupDomination sup_domination_check(std::span<const double> seq, double r, std::size_t n0) {
  if (n0 < 1 || n0 > seq.size()) throw DomainError("sup_domination_check: n0 out of range");
  SupDomination out;
  for (const double x : seq) out.lhs = std::max(out.lhs, std::abs(x));
  out.rhs = std::abs(seq[n0 - 1]) + variation_exact(seq, r).value;
  return out;
}

}  // namespace pvlab
