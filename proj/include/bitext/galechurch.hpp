#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace bitext {

enum class BeadKind { b11, b10, b01, b21, b12, b22 };

struct BeadShape {
  int src;
  int tgt;
};

inline constexpr std::array<BeadShape, 6> kBeadShapes = {
    BeadShape{1, 1}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {2, 2}};

// Priors from the classic length-based alignment model, in kind order.
inline constexpr std::array<double, 6> kBeadPriors = {0.89,  0.0099, 0.0099,
                                                      0.089, 0.089,  0.011};

std::string to_string(BeadKind kind);

struct Bead {
  BeadKind kind;
  size_t src_begin, src_end;  // half-open sentence index ranges
  size_t tgt_begin, tgt_end;

  friend bool operator==(const Bead&, const Bead&) = default;
};

struct AlignmentPath {
  std::vector<Bead> beads;
  double cost = 0.0;

  // True when the beads tile both documents exactly.
  bool tiles(size_t src_count, size_t tgt_count) const;
};

// Cost of one bead under the Gaussian length model plus its prior,
// length arguments being summed character counts. Capped at 25 per term.
double bead_length_cost(long long src_len, long long tgt_len);
double bead_cost(BeadKind kind, long long src_len, long long tgt_len);

// Standard normal CDF via a rational-polynomial erf approximation
// (absolute error <= 1.5e-7).
double normal_cdf(double x);

// Minimum-cost monotonic bead tiling of the two documents given sentence
// character counts. Ties prefer 1-1, then the declared kind order.
AlignmentPath gale_church(const std::vector<long long>& src_lens,
                          const std::vector<long long>& tgt_lens);

}  // namespace bitext
