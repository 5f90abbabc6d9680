#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bitext/document.hpp"
#include "bitext/tfidf.hpp"
#include "bitext/translator.hpp"

namespace bitext {

struct DocPair {
  std::string src_id;
  std::string tgt_id;
  double score = 0.0;  // cosine similarity in [0, 1]
  std::string provenance;
};

struct GroundTruth {
  std::set<std::pair<std::string, std::string>> pairs;
};

// Splits pivot-space text into the tokens the tf-idf index runs on.
// Whitespace splitting by default; the pipeline plugs in the subword
// segmenter here.
using Tokenizer = std::function<std::vector<std::string>(const std::string&)>;
Tokenizer whitespace_tokenizer();

struct RetrievalOptions {
  Lang pivot = Lang::en;
  int window_days = 2;
  double threshold = 0.51;  // inclusive
  std::string provenance;
  Tokenizer tokenizer = whitespace_tokenizer();
};

// Aligns each source document to its best target candidate within the date
// window (all targets when the source is undated), keeps scores >= the
// threshold, and resolves conflicts greedily by descending score so no
// document appears twice. Output is sorted by src_id.
//
// Both sides are compared in pivot space: sources are always translated;
// targets are translated too when tgt_lang differs from the pivot.
std::vector<DocPair> align_documents(const DocumentStore& src_store,
                                     Lang src_lang,
                                     const DocumentStore& tgt_store,
                                     Lang tgt_lang,
                                     const Translator& translator,
                                     const RetrievalOptions& options);

// Percentage (2 decimals) of ground-truth sources whose emitted pair hits
// the ground-truth target; sources without a pair count as misses.
double pseudo_retrieval_accuracy(const std::vector<DocPair>& pairs,
                                 const GroundTruth& truth);

// Metadata-matched pairs: unambiguous (date, ministry) buckets occurring
// exactly once on each side.
GroundTruth derive_ground_truth(const DocumentStore& src_store, Lang src_lang,
                                const DocumentStore& tgt_store, Lang tgt_lang);

// TSV rows: src_id, tgt_id, score (6 decimals), provenance.
std::string doc_pairs_to_tsv(const std::vector<DocPair>& pairs);
std::vector<DocPair> doc_pairs_from_tsv(const std::string& text);

}  // namespace bitext
