#include "bitext/galechurch.hpp"

#include <cmath>
#include <limits>

namespace bitext {

namespace {

// Length model parameters: expected char ratio c and per-char variance s².
constexpr double kC = 1.0;
constexpr double kS2 = 6.8;
constexpr double kCostCap = 25.0;

}  // namespace

std::string to_string(BeadKind kind) {
  switch (kind) {
    case BeadKind::b11: return "1-1";
    case BeadKind::b10: return "1-0";
    case BeadKind::b01: return "0-1";
    case BeadKind::b21: return "2-1";
    case BeadKind::b12: return "1-2";
    case BeadKind::b22: return "2-2";
  }
  return "?";
}

bool AlignmentPath::tiles(size_t src_count, size_t tgt_count) const {
  size_t s = 0, t = 0;
  for (const Bead& bead : beads) {
    if (bead.src_begin != s || bead.tgt_begin != t) return false;
    const BeadShape& shape = kBeadShapes[size_t(bead.kind)];
    if (bead.src_end != bead.src_begin + size_t(shape.src)) return false;
    if (bead.tgt_end != bead.tgt_begin + size_t(shape.tgt)) return false;
    s = bead.src_end;
    t = bead.tgt_end;
  }
  return s == src_count && t == tgt_count;
}

double normal_cdf(double x) {
  // Abramowitz & Stegun 7.1.26 rational approximation of erf.
  double ax = std::fabs(x) / std::sqrt(2.0);
  double t = 1.0 / (1.0 + 0.3275911 * ax);
  double poly = t * (0.254829592 +
                     t * (-0.284496736 +
                          t * (1.421413741 +
                               t * (-1.453152027 + t * 1.061405429))));
  double erf = 1.0 - poly * std::exp(-ax * ax);
  double cdf = 0.5 * (1.0 + erf);
  return x >= 0.0 ? cdf : 1.0 - cdf;
}

double bead_length_cost(long long src_len, long long tgt_len) {
  if (src_len <= 0) return kCostCap;  // delta is unbounded without source mass
  double delta =
      (double(tgt_len) - kC * double(src_len)) / std::sqrt(double(src_len) * kS2);
  double two_tail = 2.0 * (1.0 - normal_cdf(std::fabs(delta)));
  if (!(two_tail > 0.0) || -std::log(two_tail) > kCostCap) return kCostCap;
  return -std::log(two_tail);
}

double bead_cost(BeadKind kind, long long src_len, long long tgt_len) {
  return bead_length_cost(src_len, tgt_len) -
         std::log(kBeadPriors[size_t(kind)]);
}

AlignmentPath gale_church(const std::vector<long long>& src_lens,
                          const std::vector<long long>& tgt_lens) {
  const size_t n = src_lens.size(), m = tgt_lens.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> cost((n + 1) * (m + 1), kInf);
  std::vector<int8_t> back((n + 1) * (m + 1), -1);
  auto idx = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  cost[idx(0, 0)] = 0.0;

  for (size_t i = 0; i <= n; ++i) {
    for (size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      double best = kInf;
      int best_kind = -1;
      for (size_t k = 0; k < kBeadShapes.size(); ++k) {
        const BeadShape& shape = kBeadShapes[k];
        if (i < size_t(shape.src) || j < size_t(shape.tgt)) continue;
        double prev = cost[idx(i - shape.src, j - shape.tgt)];
        if (prev == kInf) continue;
        long long src_len = 0, tgt_len = 0;
        for (int a = 0; a < shape.src; ++a) src_len += src_lens[i - 1 - a];
        for (int a = 0; a < shape.tgt; ++a) tgt_len += tgt_lens[j - 1 - a];
        double total = prev + bead_cost(BeadKind(k), src_len, tgt_len);
        // Strict < keeps the earliest kind in declaration order on ties,
        // which prefers 1-1 first.
        if (total < best) {
          best = total;
          best_kind = int(k);
        }
      }
      cost[idx(i, j)] = best;
      back[idx(i, j)] = int8_t(best_kind);
    }
  }

  AlignmentPath path;
  path.cost = cost[idx(n, m)];
  size_t i = n, j = m;
  while (i != 0 || j != 0) {
    const BeadShape& shape = kBeadShapes[size_t(back[idx(i, j)])];
    Bead bead{BeadKind(back[idx(i, j)]), i - size_t(shape.src), i,
              j - size_t(shape.tgt), j};
    path.beads.push_back(bead);
    i -= size_t(shape.src);
    j -= size_t(shape.tgt);
  }
  std::reverse(path.beads.begin(), path.beads.end());
  return path;
}

}  // namespace bitext
