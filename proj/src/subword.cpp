#include "bitext/subword.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "bitext/error.hpp"
#include "bitext/text.hpp"
#include "bitext/unicode.hpp"

namespace bitext {

namespace {

namespace uni = bitext::unicode;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

void renormalize(std::vector<double>& logp) {
  double lse = kNegInf;
  for (double lp : logp) lse = log_add(lse, lp);
  for (double& lp : logp) lp -= lse;
}

struct Word {
  std::u32string chars;
  long long count = 0;
};

std::vector<Word> collect_words(const std::vector<std::string>& corpus) {
  std::unordered_map<std::string, long long> counts;
  std::vector<std::string> order;
  for (const auto& sentence : corpus) {
    for (auto& token : split_tokens(sentence)) {
      auto [it, inserted] = counts.emplace(token, 0);
      if (inserted) order.push_back(token);
      ++it->second;
    }
  }
  std::vector<Word> words;
  words.reserve(order.size());
  for (const auto& w : order)
    words.push_back({uni::decode_utf8(w), counts[w]});
  return words;
}

// Token inventory with per-word match lists, rebuilt after pruning.
struct Lattice {
  std::vector<std::u32string> tokens;
  std::vector<double> logp;
  std::unordered_map<std::u32string, int> index;

  int find(const std::u32string& t) const {
    auto it = index.find(t);
    return it == index.end() ? -1 : it->second;
  }
};

// Total log-likelihood plus expected token counts via forward-backward
// over every segmentation of each word.
double e_step(const Lattice& lat, const std::vector<Word>& words,
              int max_token_len, std::vector<double>& expected) {
  expected.assign(lat.tokens.size(), 0.0);
  double loglik = 0.0;
  std::vector<double> fwd, bwd;
  for (const Word& word : words) {
    const std::u32string& w = word.chars;
    const int n = int(w.size());
    fwd.assign(n + 1, 0.0);
    bwd.assign(n + 1, 0.0);
    fwd[0] = 1.0;
    // Probabilities underflow only for absurd word lengths; words are
    // whitespace tokens, so plain doubles are fine here.
    for (int i = 0; i < n; ++i) {
      if (fwd[i] == 0.0) continue;
      for (int len = 1; len <= max_token_len && i + len <= n; ++len) {
        int t = lat.find(w.substr(i, len));
        if (t < 0) continue;
        fwd[i + len] += fwd[i] * std::exp(lat.logp[t]);
      }
    }
    const double z = fwd[n];
    if (z <= 0.0) continue;  // unsegmentable; cannot happen with char seeds
    bwd[n] = 1.0;
    for (int i = n - 1; i >= 0; --i) {
      for (int len = 1; len <= max_token_len && i + len <= n; ++len) {
        int t = lat.find(w.substr(i, len));
        if (t < 0) continue;
        bwd[i] += std::exp(lat.logp[t]) * bwd[i + len];
      }
    }
    loglik += double(word.count) * std::log(z);
    for (int i = 0; i < n; ++i) {
      if (fwd[i] == 0.0) continue;
      for (int len = 1; len <= max_token_len && i + len <= n; ++len) {
        int t = lat.find(w.substr(i, len));
        if (t < 0) continue;
        double posterior =
            fwd[i] * std::exp(lat.logp[t]) * bwd[i + len] / z;
        expected[t] += double(word.count) * posterior;
      }
    }
  }
  return loglik;
}

void m_step(Lattice& lat, const std::vector<double>& expected) {
  double total = 0.0;
  for (double c : expected) total += c;
  if (total <= 0.0) return;
  const double log_total = std::log(total);
  for (size_t t = 0; t < lat.tokens.size(); ++t) {
    // The underflow floor keeps dead tokens representable without
    // diverting measurable probability mass.
    double c = std::max(expected[t], 1e-300);
    lat.logp[t] = std::log(c) - log_total;
  }
  renormalize(lat.logp);
}

// Best alternative log-probability of spelling token `t` out of the other
// tokens; used to estimate the likelihood loss of dropping it.
double viterbi_without(const Lattice& lat, int skip, int max_token_len) {
  const std::u32string& w = lat.tokens[skip];
  const int n = int(w.size());
  std::vector<double> best(n + 1, kNegInf);
  best[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (best[i] == kNegInf) continue;
    for (int len = 1; len <= max_token_len && i + len <= n; ++len) {
      int t = lat.find(w.substr(i, len));
      if (t < 0 || t == skip) continue;
      best[i + len] = std::max(best[i + len], best[i] + lat.logp[t]);
    }
  }
  return best[n];
}

std::map<std::string, double> snapshot(const Lattice& lat) {
  std::map<std::string, double> entries;
  for (size_t t = 0; t < lat.tokens.size(); ++t)
    entries[uni::encode_utf8(lat.tokens[t])] = lat.logp[t];
  return entries;
}

void rebuild_index(Lattice& lat) {
  lat.index.clear();
  for (size_t t = 0; t < lat.tokens.size(); ++t)
    lat.index[lat.tokens[t]] = int(t);
}

}  // namespace

SubwordVocab train_unigram(const std::vector<std::string>& corpus, Lang lang,
                           const TrainOptions& options,
                           const TrainObserver& observer) {
  if (corpus.empty()) throw DataError("train_unigram: empty corpus");
  std::vector<Word> words = collect_words(corpus);
  if (words.empty()) throw DataError("train_unigram: corpus has no tokens");

  // Seed pool: all substrings up to seed_max_len above the frequency
  // floor, plus every observed character.
  std::unordered_map<std::u32string, long long> substr_freq;
  for (const Word& word : words) {
    const int n = int(word.chars.size());
    for (int i = 0; i < n; ++i)
      for (int len = 1; len <= options.seed_max_len && i + len <= n; ++len)
        substr_freq[word.chars.substr(i, len)] += word.count;
  }

  Lattice lat;
  std::vector<long long> seed_counts;
  for (const auto& [sub, freq] : substr_freq) {
    if (sub.size() > 1 && freq < options.freq_floor) continue;
    lat.tokens.push_back(sub);
    seed_counts.push_back(freq);
  }
  // Deterministic order regardless of hash iteration.
  {
    std::vector<size_t> perm(lat.tokens.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
      return lat.tokens[a] < lat.tokens[b];
    });
    std::vector<std::u32string> toks(perm.size());
    std::vector<long long> cnts(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) {
      toks[i] = lat.tokens[perm[i]];
      cnts[i] = seed_counts[perm[i]];
    }
    lat.tokens.swap(toks);
    seed_counts.swap(cnts);
  }

  long long char_count = 0;
  for (const auto& t : lat.tokens)
    if (t.size() == 1) ++char_count;
  if (options.target_size < char_count)
    throw DataError("train_unigram: target_size " +
                    std::to_string(options.target_size) + " is below the " +
                    std::to_string(char_count) + " distinct characters");

  double seed_total = 0.0;
  for (long long c : seed_counts) seed_total += double(c);
  lat.logp.resize(lat.tokens.size());
  for (size_t t = 0; t < lat.tokens.size(); ++t)
    lat.logp[t] = std::log(double(seed_counts[t])) - std::log(seed_total);
  rebuild_index(lat);
  if (observer) observer(TrainPhase::seed, snapshot(lat));

  std::vector<double> expected;
  while (true) {
    for (int step = 0; step < options.em_steps_per_round; ++step) {
      e_step(lat, words, options.seed_max_len, expected);
      m_step(lat, expected);
      if (observer) observer(TrainPhase::em, snapshot(lat));
    }
    if (int(lat.tokens.size()) <= options.target_size) break;

    // Rank multi-character tokens by estimated likelihood loss when
    // removed; drop the cheapest prune_fraction (never below target).
    e_step(lat, words, options.seed_max_len, expected);
    struct Loss {
      double value;
      int token;
    };
    std::vector<Loss> losses;
    for (size_t t = 0; t < lat.tokens.size(); ++t) {
      if (lat.tokens[t].size() <= 1) continue;
      double alt = viterbi_without(lat, int(t), options.seed_max_len);
      double loss = alt == kNegInf
                        ? std::numeric_limits<double>::max()
                        : expected[t] * (lat.logp[t] - alt);
      losses.push_back({loss, int(t)});
    }
    long long prunable = std::min<long long>(
        std::max<long long>(1, llround(double(losses.size()) *
                                       options.prune_fraction)),
        static_cast<long long>(lat.tokens.size()) - options.target_size);
    std::sort(losses.begin(), losses.end(), [&](const Loss& a, const Loss& b) {
      if (a.value != b.value) return a.value < b.value;
      return lat.tokens[a.token] < lat.tokens[b.token];
    });
    std::vector<bool> drop(lat.tokens.size(), false);
    for (long long k = 0; k < prunable && size_t(k) < losses.size(); ++k)
      drop[losses[k].token] = true;

    Lattice next;
    for (size_t t = 0; t < lat.tokens.size(); ++t) {
      if (drop[t]) continue;
      next.tokens.push_back(lat.tokens[t]);
      next.logp.push_back(lat.logp[t]);
    }
    lat = std::move(next);
    rebuild_index(lat);
    renormalize(lat.logp);
    if (observer) observer(TrainPhase::prune, snapshot(lat));
  }

  SubwordVocab vocab;
  vocab.lang = lang;
  vocab.entries = snapshot(lat);
  return vocab;
}

std::vector<SubwordToken> segment(const SubwordVocab& vocab,
                                  std::string_view sentence) {
  // Decoded vocab keyed by codepoints for lattice matching.
  std::unordered_map<std::u32string, double> table;
  size_t max_len = 1;
  for (const auto& [token, logp] : vocab.entries) {
    std::u32string key = uni::decode_utf8(token);
    table[key] = logp;
    max_len = std::max(max_len, key.size());
  }

  std::vector<SubwordToken> out;
  for (const auto& word_utf8 : split_tokens(sentence)) {
    std::u32string w = uni::decode_utf8(word_utf8);
    const int n = int(w.size());
    // Viterbi over the word; unknown characters bridge with a penalty
    // worse than any vocabulary path.
    const double kUnknownPenalty = -1e5;
    std::vector<double> best(n + 1, kNegInf);
    std::vector<int> back_len(n + 1, 0);
    std::vector<bool> back_unknown(n + 1, false);
    best[0] = 0.0;
    for (int i = 0; i < n; ++i) {
      if (best[i] == kNegInf) continue;
      for (int len = 1; len <= int(max_len) && i + len <= n; ++len) {
        auto it = table.find(w.substr(i, len));
        if (it == table.end()) continue;
        double score = best[i] + it->second;
        if (score > best[i + len] ||
            (score == best[i + len] && len > back_len[i + len])) {
          best[i + len] = score;
          back_len[i + len] = len;
          back_unknown[i + len] = false;
        }
      }
      double score = best[i] + kUnknownPenalty;
      if (score > best[i + 1]) {
        best[i + 1] = score;
        back_len[i + 1] = 1;
        back_unknown[i + 1] = true;
      }
    }
    std::vector<SubwordToken> word_tokens;
    int pos = n;
    while (pos > 0) {
      int len = back_len[pos];
      word_tokens.push_back({uni::encode_utf8(w.substr(pos - len, len)),
                             back_unknown[pos]});
      pos -= len;
    }
    std::reverse(word_tokens.begin(), word_tokens.end());
    if (!word_tokens.empty())
      word_tokens.front().text = kBoundaryMarker + word_tokens.front().text;
    out.insert(out.end(), word_tokens.begin(), word_tokens.end());
  }
  return out;
}

std::string detokenize(const std::vector<SubwordToken>& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    std::string_view text = token.text;
    if (text.substr(0, kBoundaryMarker.size()) == kBoundaryMarker) {
      if (!out.empty()) out += ' ';
      text.remove_prefix(kBoundaryMarker.size());
    }
    out += text;
  }
  return out;
}

UnionVocab union_vocabs(const std::vector<SubwordVocab>& vocabs) {
  if (vocabs.empty()) throw DataError("union_vocabs: no vocabularies");
  UnionVocab out;
  for (const auto& vocab : vocabs) {
    for (const auto& [token, logp] : vocab.entries) {
      out.entries.insert(token);
      out.origin[token].insert(vocab.lang);
    }
  }
  return out;
}

std::string SubwordVocab::to_tsv() const {
  std::vector<std::pair<std::string, double>> rows(entries.begin(),
                                                   entries.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string out;
  char buf[64];
  for (const auto& [token, logp] : rows) {
    std::snprintf(buf, sizeof buf, "\t%.6f\n", logp);
    out += token;
    out += buf;
  }
  return out;
}

SubwordVocab SubwordVocab::from_tsv(const std::string& text, Lang lang) {
  SubwordVocab vocab;
  vocab.lang = lang;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError("vocab line " + std::to_string(line_no) +
                      ": expected token<TAB>logprob");
    try {
      vocab.entries[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw DataError("vocab line " + std::to_string(line_no) +
                      ": bad log-probability");
    }
  }
  return vocab;
}

void SubwordVocab::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write \"" + path + "\"");
  out << to_tsv();
}

SubwordVocab SubwordVocab::load(const std::string& path, Lang lang) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_tsv(buf.str(), lang);
}

}  // namespace bitext
