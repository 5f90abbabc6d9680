#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bitext/lang.hpp"

namespace bitext {

// Word-boundary sentinel prepended to word-initial tokens.
inline constexpr char32_t kBoundaryMarkerCp = 0x2581;  // "▁"
inline const std::string kBoundaryMarker = "\xE2\x96\x81";

struct SubwordVocab {
  Lang lang = Lang::en;
  std::map<std::string, double> entries;  // token -> log probability

  bool contains(const std::string& token) const {
    return entries.count(token) != 0;
  }
  // Serialized as TSV rows "token<TAB>logprob", most probable first.
  std::string to_tsv() const;
  static SubwordVocab from_tsv(const std::string& text, Lang lang);
  void save(const std::string& path) const;
  static SubwordVocab load(const std::string& path, Lang lang);
};

struct UnionVocab {
  std::set<std::string> entries;
  std::map<std::string, std::set<Lang>> origin;
};

struct TrainOptions {
  int target_size = 4000;
  int seed_max_len = 8;
  int freq_floor = 2;          // minimum substring frequency for seeding
  double prune_fraction = 0.2;  // multi-char tokens dropped per prune round
  int em_steps_per_round = 2;
};

// Observer invoked after each EM step and each prune with the live entry
// table; used by tests to trace corpus likelihood.
enum class TrainPhase { seed, em, prune };
using TrainObserver =
    std::function<void(TrainPhase, const std::map<std::string, double>&)>;

// Trains a unigram-LM subword vocabulary: seeds candidates from frequent
// substrings plus all single characters, then alternates EM over each
// word's segmentation lattice with likelihood-based pruning until the
// vocabulary reaches the target size.
SubwordVocab train_unigram(const std::vector<std::string>& corpus, Lang lang,
                           const TrainOptions& options = {},
                           const TrainObserver& observer = nullptr);

struct SubwordToken {
  std::string text;  // display form; word-initial tokens carry the marker
  bool unknown = false;

  friend bool operator==(const SubwordToken&, const SubwordToken&) = default;
};

// Viterbi segmentation under the vocabulary. Characters absent from the
// vocabulary come back as single-character tokens flagged unknown, so the
// round trip with detokenize always restores the input.
std::vector<SubwordToken> segment(const SubwordVocab& vocab,
                                  std::string_view sentence);

std::string detokenize(const std::vector<SubwordToken>& tokens);

UnionVocab union_vocabs(const std::vector<SubwordVocab>& vocabs);

}  // namespace bitext
