#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "bitext/lang.hpp"

namespace bitext {

// Sparse unit vector over interned token ids, components sorted by id.
using SparseVector = std::vector<std::pair<int, double>>;

double dot(const SparseVector& a, const SparseVector& b);

class TfIdfIndex {
 public:
  // Builds from (document id, token sequence) pairs: tf = 1 + ln(count),
  // idf = ln(N / df), components L2-normalized. Documents whose every
  // token has zero idf keep the zero vector.
  static TfIdfIndex build(
      const std::vector<std::pair<std::string, std::vector<std::string>>>&
          docs,
      Lang pivot);

  // Maps a token sequence into the index's tf-idf space. Unindexed tokens
  // contribute nothing.
  SparseVector vectorize(const std::vector<std::string>& tokens) const;

  // Candidates ordered by descending cosine score, ties by ascending id.
  std::vector<std::pair<std::string, double>> rank(
      const SparseVector& query,
      const std::vector<std::string>& candidate_ids) const;

  const SparseVector& vector_of(const std::string& id) const;
  double idf(const std::string& token) const;
  size_t doc_count() const { return doc_count_; }
  Lang pivot() const { return pivot_; }

 private:
  Lang pivot_ = Lang::en;
  size_t doc_count_ = 0;
  std::unordered_map<std::string, int> token_ids_;
  std::vector<double> idf_;
  std::unordered_map<std::string, SparseVector> vectors_;
};

}  // namespace bitext
