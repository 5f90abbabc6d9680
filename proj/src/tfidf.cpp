#include "bitext/tfidf.hpp"

#include <algorithm>
#include <cmath>

#include "bitext/error.hpp"

namespace bitext {

double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (a[i].first > b[j].first) {
      ++j;
    } else {
      sum += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return sum;
}

TfIdfIndex TfIdfIndex::build(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& docs,
    Lang pivot) {
  if (docs.empty()) throw DataError("tf-idf index: empty document list");
  TfIdfIndex index;
  index.pivot_ = pivot;
  index.doc_count_ = docs.size();

  std::unordered_map<std::string, int> df;
  std::vector<std::unordered_map<std::string, int>> counts(docs.size());
  for (size_t d = 0; d < docs.size(); ++d) {
    for (const auto& token : docs[d].second) ++counts[d][token];
    for (const auto& [token, count] : counts[d]) ++df[token];
  }

  // Deterministic token interning order.
  std::vector<std::string> tokens;
  tokens.reserve(df.size());
  for (const auto& [token, _] : df) tokens.push_back(token);
  std::sort(tokens.begin(), tokens.end());
  index.idf_.reserve(tokens.size());
  for (const auto& token : tokens) {
    index.token_ids_[token] = int(index.idf_.size());
    index.idf_.push_back(
        std::log(double(docs.size()) / double(df[token])));
  }

  for (size_t d = 0; d < docs.size(); ++d) {
    SparseVector vec;
    vec.reserve(counts[d].size());
    for (const auto& [token, count] : counts[d]) {
      int id = index.token_ids_[token];
      double w = (1.0 + std::log(double(count))) * index.idf_[id];
      if (w != 0.0) vec.emplace_back(id, w);
    }
    std::sort(vec.begin(), vec.end());
    double norm = 0.0;
    for (const auto& [_, w] : vec) norm += w * w;
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (auto& [_, w] : vec) w /= norm;
    } else {
      vec.clear();
    }
    if (index.vectors_.count(docs[d].first))
      throw DataError("tf-idf index: duplicate document id \"" +
                      docs[d].first + "\"");
    index.vectors_[docs[d].first] = std::move(vec);
  }
  return index;
}

SparseVector TfIdfIndex::vectorize(
    const std::vector<std::string>& tokens) const {
  std::unordered_map<int, int> counts;
  for (const auto& token : tokens) {
    auto it = token_ids_.find(token);
    if (it != token_ids_.end()) ++counts[it->second];
  }
  SparseVector vec;
  vec.reserve(counts.size());
  for (const auto& [id, count] : counts) {
    double w = (1.0 + std::log(double(count))) * idf_[id];
    if (w != 0.0) vec.emplace_back(id, w);
  }
  std::sort(vec.begin(), vec.end());
  double norm = 0.0;
  for (const auto& [_, w] : vec) norm += w * w;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& [_, w] : vec) w /= norm;
  } else {
    vec.clear();
  }
  return vec;
}

std::vector<std::pair<std::string, double>> TfIdfIndex::rank(
    const SparseVector& query,
    const std::vector<std::string>& candidate_ids) const {
  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(candidate_ids.size());
  for (const auto& id : candidate_ids)
    scored.emplace_back(id, dot(query, vector_of(id)));
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return scored;
}

const SparseVector& TfIdfIndex::vector_of(const std::string& id) const {
  auto it = vectors_.find(id);
  if (it == vectors_.end())
    throw DataError("document \"" + id + "\" is not indexed");
  return it->second;
}

double TfIdfIndex::idf(const std::string& token) const {
  auto it = token_ids_.find(token);
  return it == token_ids_.end() ? 0.0 : idf_[it->second];
}

}  // namespace bitext
