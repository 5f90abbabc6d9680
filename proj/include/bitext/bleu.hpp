#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace bitext {

inline constexpr int kMaxNgramOrder = 4;

enum class Smoothing { none, exp };

struct BleuScore {
  double score = 0.0;  // [0, 100]
  std::array<double, kMaxNgramOrder> precisions{};  // fractions in [0, 1]
  double brevity_penalty = 1.0;
  size_t hyp_len = 0;
  size_t ref_len = 0;
  int effective_order = kMaxNgramOrder;

  std::string report() const;  // one-line CLI evaluation format
};

// mteval-13a style tokenization: line separators to spaces, ASCII
// punctuation padded (period/comma kept inside numbers, dash split after a
// digit), non-ASCII punctuation and symbols padded, mixed case preserved.
std::vector<std::string> tokenize_13a(std::string_view text);

// Aggregated n-gram statistics; corpus BLEU sums these before scoring.
struct BleuStats {
  std::array<long long, kMaxNgramOrder> matched{};
  std::array<long long, kMaxNgramOrder> total{};
  size_t hyp_len = 0;
  size_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats ngram_stats(const std::vector<std::string>& hyp_tokens,
                      const std::vector<std::string>& ref_tokens, int max_n);

// Scores aggregated stats. The geometric mean runs over the effective order
// (the largest n with any n-grams in the hypothesis, capped at max_n) so
// that identical short sentences still score 100.
BleuScore score_stats(const BleuStats& stats, int max_n, Smoothing smoothing);

BleuScore sentence_bleu(std::string_view hyp, std::string_view ref,
                        int max_n = kMaxNgramOrder,
                        Smoothing smoothing = Smoothing::exp);

BleuScore corpus_bleu(const std::vector<std::string>& hyps,
                      const std::vector<std::string>& refs,
                      int max_n = kMaxNgramOrder,
                      Smoothing smoothing = Smoothing::exp);

}  // namespace bitext
