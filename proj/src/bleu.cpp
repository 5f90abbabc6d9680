#include "bitext/bleu.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "bitext/error.hpp"
#include "bitext/unicode.hpp"

namespace bitext {

namespace {

namespace uni = bitext::unicode;

bool ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

// ASCII punctuation the 13a scheme always pads: everything except
// period, comma, hyphen and apostrophe (which get contextual rules).
bool always_padded_ascii(char32_t cp) {
  if (cp >= 0x80) return false;
  if ((cp >= U'!' && cp <= U'&') || (cp >= U'(' && cp <= U'+') ||
      (cp >= U':' && cp <= U'@') || (cp >= U'[' && cp <= U'`') ||
      (cp >= U'{' && cp <= U'~') || cp == U'/')
    return true;
  return false;
}

}  // namespace

std::vector<std::string> tokenize_13a(std::string_view text) {
  std::u32string cps = uni::decode_utf8(text);
  for (char32_t& cp : cps)
    if (cp == U'\n' || cp == U'\r' || cp == U'\t') cp = U' ';

  std::u32string padded;
  padded.reserve(cps.size() * 2);
  auto pad = [&](char32_t cp) {
    padded.push_back(U' ');
    padded.push_back(cp);
    padded.push_back(U' ');
  };
  for (size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    bool prev_digit = i > 0 && ascii_digit(cps[i - 1]);
    bool next_digit = i + 1 < cps.size() && ascii_digit(cps[i + 1]);
    if (always_padded_ascii(cp)) {
      pad(cp);
    } else if ((cp == U'.' || cp == U',') && !(prev_digit && next_digit)) {
      pad(cp);
    } else if (cp == U'-' && prev_digit) {
      pad(cp);
    } else if (cp >= 0x80 && (uni::is_punctuation(cp) || uni::is_symbol(cp))) {
      pad(cp);
    } else {
      padded.push_back(cp);
    }
  }

  std::vector<std::string> tokens;
  std::u32string current;
  for (char32_t cp : padded) {
    if (cp == U' ') {
      if (!current.empty()) {
        tokens.push_back(uni::encode_utf8(current));
        current.clear();
      }
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) tokens.push_back(uni::encode_utf8(current));
  return tokens;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    matched[n] += other.matched[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

BleuStats ngram_stats(const std::vector<std::string>& hyp_tokens,
                      const std::vector<std::string>& ref_tokens, int max_n) {
  BleuStats stats;
  stats.hyp_len = hyp_tokens.size();
  stats.ref_len = ref_tokens.size();
  for (int n = 1; n <= max_n; ++n) {
    if (hyp_tokens.size() < size_t(n)) break;
    std::unordered_map<std::string, long long> ref_counts;
    if (ref_tokens.size() >= size_t(n)) {
      for (size_t i = 0; i + n <= ref_tokens.size(); ++i) {
        std::string gram = ref_tokens[i];
        for (int k = 1; k < n; ++k) gram += '\x1f' + ref_tokens[i + k];
        ++ref_counts[gram];
      }
    }
    std::unordered_map<std::string, long long> hyp_counts;
    for (size_t i = 0; i + n <= hyp_tokens.size(); ++i) {
      std::string gram = hyp_tokens[i];
      for (int k = 1; k < n; ++k) gram += '\x1f' + hyp_tokens[i + k];
      ++hyp_counts[gram];
    }
    long long matched = 0, total = 0;
    for (const auto& [gram, count] : hyp_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    stats.matched[n - 1] = matched;
    stats.total[n - 1] = total;
  }
  return stats;
}

BleuScore score_stats(const BleuStats& stats, int max_n, Smoothing smoothing) {
  BleuScore out;
  out.hyp_len = stats.hyp_len;
  out.ref_len = stats.ref_len;

  int effective = 0;
  for (int n = 0; n < max_n; ++n)
    if (stats.total[n] > 0) effective = n + 1;
  out.effective_order = effective;

  if (effective == 0) {
    out.score = 0.0;
    out.brevity_penalty = stats.hyp_len == 0 ? 0.0 : 1.0;
    return out;
  }

  double smooth_scale = 1.0;
  double log_sum = 0.0;
  bool zero = false;
  for (int n = 0; n < effective; ++n) {
    double p;
    if (stats.matched[n] > 0) {
      p = double(stats.matched[n]) / double(stats.total[n]);
    } else if (smoothing == Smoothing::exp) {
      // k-th zero-match order gets 1/2^k of one unit.
      smooth_scale *= 2.0;
      p = 1.0 / (smooth_scale * double(stats.total[n]));
    } else {
      p = 0.0;
      zero = true;
    }
    out.precisions[n] = p;
    if (p > 0.0) log_sum += std::log(p);
  }

  double bp = 1.0;
  if (stats.hyp_len < stats.ref_len)
    bp = std::exp(1.0 - double(stats.ref_len) / double(stats.hyp_len));
  out.brevity_penalty = bp;
  out.score = zero ? 0.0 : bp * std::exp(log_sum / effective) * 100.0;
  return out;
}

BleuScore sentence_bleu(std::string_view hyp, std::string_view ref, int max_n,
                        Smoothing smoothing) {
  if (max_n < 1 || max_n > kMaxNgramOrder)
    throw DataError("max_n must be in 1..4");
  return score_stats(ngram_stats(tokenize_13a(hyp), tokenize_13a(ref), max_n),
                     max_n, smoothing);
}

BleuScore corpus_bleu(const std::vector<std::string>& hyps,
                      const std::vector<std::string>& refs, int max_n,
                      Smoothing smoothing) {
  if (hyps.size() != refs.size())
    throw DataError("corpus BLEU length mismatch: " +
                    std::to_string(hyps.size()) + " hypotheses vs " +
                    std::to_string(refs.size()) + " references");
  if (max_n < 1 || max_n > kMaxNgramOrder)
    throw DataError("max_n must be in 1..4");
  BleuStats stats;
  for (size_t i = 0; i < hyps.size(); ++i)
    stats += ngram_stats(tokenize_13a(hyps[i]), tokenize_13a(refs[i]), max_n);
  return score_stats(stats, max_n, smoothing);
}

std::string BleuScore::report() const {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "BLEU = %.2f %.1f/%.1f/%.1f/%.1f (BP = %.3f, hyp_len = %zu, "
                "ref_len = %zu)",
                score, precisions[0] * 100.0, precisions[1] * 100.0,
                precisions[2] * 100.0, precisions[3] * 100.0, brevity_penalty,
                hyp_len, ref_len);
  return buf;
}

}  // namespace bitext
