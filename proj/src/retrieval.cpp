#include "bitext/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bitext/error.hpp"
#include "bitext/text.hpp"

namespace bitext {

Tokenizer whitespace_tokenizer() {
  return [](const std::string& text) { return split_tokens(text); };
}

std::vector<DocPair> align_documents(const DocumentStore& src_store,
                                     Lang src_lang,
                                     const DocumentStore& tgt_store,
                                     Lang tgt_lang,
                                     const Translator& translator,
                                     const RetrievalOptions& options) {
  // Index target documents in pivot space.
  std::vector<std::pair<std::string, std::vector<std::string>>> tgt_docs;
  std::vector<std::string> tgt_ids = tgt_store.ids_of(tgt_lang);
  for (const auto& id : tgt_ids) {
    const Document& doc = tgt_store.at(id);
    std::string pivot_text;
    if (tgt_lang == options.pivot || doc.sentences.empty()) {
      pivot_text = doc.joined_text();
    } else {
      TranslationBatch batch{tgt_lang, options.pivot, doc.sentences};
      for (const auto& line : translator.translate_batch(batch)) {
        if (!pivot_text.empty()) pivot_text += ' ';
        pivot_text += line;
      }
    }
    tgt_docs.emplace_back(id, options.tokenizer(pivot_text));
  }
  if (tgt_docs.empty()) return {};
  TfIdfIndex index = TfIdfIndex::build(tgt_docs, options.pivot);

  struct Tentative {
    std::string src_id;
    std::string tgt_id;
    double score;
  };
  std::vector<Tentative> tentative;

  for (const auto& src_id : src_store.ids_of(src_lang)) {
    const Document& src_doc = src_store.at(src_id);
    if (src_doc.sentences.empty()) continue;

    TranslationBatch batch{src_lang, options.pivot, src_doc.sentences};
    std::vector<std::string> translated = translator.translate_batch(batch);
    std::string pivot_text;
    for (const auto& line : translated) {
      if (!pivot_text.empty()) pivot_text += ' ';
      pivot_text += line;
    }
    SparseVector query = index.vectorize(options.tokenizer(pivot_text));

    std::vector<std::string> candidates;
    if (src_doc.date) {
      for (const Document* doc : tgt_store.query_date_window(
               tgt_lang, *src_doc.date, options.window_days))
        candidates.push_back(doc->id);
    } else {
      candidates = tgt_ids;  // no date: fall back to the full language
    }
    if (candidates.empty()) continue;

    auto ranked = index.rank(query, candidates);
    const auto& [best_id, best_score] = ranked.front();
    if (best_score >= options.threshold)
      tentative.push_back({src_id, best_id, best_score});
  }

  // Greedy one-to-one assignment by descending score.
  std::sort(tentative.begin(), tentative.end(),
            [](const Tentative& a, const Tentative& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.src_id != b.src_id) return a.src_id < b.src_id;
              return a.tgt_id < b.tgt_id;
            });
  std::set<std::string> used_src, used_tgt;
  std::vector<DocPair> pairs;
  for (const auto& t : tentative) {
    if (used_src.count(t.src_id) || used_tgt.count(t.tgt_id)) continue;
    used_src.insert(t.src_id);
    used_tgt.insert(t.tgt_id);
    pairs.push_back({t.src_id, t.tgt_id, t.score, options.provenance});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const DocPair& a, const DocPair& b) {
              return a.src_id < b.src_id;
            });
  return pairs;
}

double pseudo_retrieval_accuracy(const std::vector<DocPair>& pairs,
                                 const GroundTruth& truth) {
  if (truth.pairs.empty())
    throw DataError("pseudo retrieval accuracy: empty ground truth");
  std::set<std::string> truth_sources;
  for (const auto& [src, _] : truth.pairs) truth_sources.insert(src);

  std::map<std::string, std::string> emitted;
  for (const auto& pair : pairs) emitted[pair.src_id] = pair.tgt_id;

  size_t correct = 0;
  for (const auto& src : truth_sources) {
    auto it = emitted.find(src);
    if (it != emitted.end() && truth.pairs.count({src, it->second}))
      ++correct;
  }
  double pct = 100.0 * double(correct) / double(truth_sources.size());
  return std::round(pct * 100.0) / 100.0;
}

GroundTruth derive_ground_truth(const DocumentStore& src_store, Lang src_lang,
                                const DocumentStore& tgt_store,
                                Lang tgt_lang) {
  auto lowered = [](const std::string& s) {
    std::string out = s;
    for (char& c : out)
      if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    return out;
  };
  using Key = std::pair<std::string, std::string>;  // (date, ministry)
  auto bucket = [&](const DocumentStore& store, Lang lang) {
    std::map<Key, std::vector<std::string>> buckets;
    for (const auto& id : store.ids_of(lang)) {
      const Document& doc = store.at(id);
      if (!doc.date || !doc.ministry) continue;
      buckets[{doc.date->to_string(), lowered(*doc.ministry)}].push_back(id);
    }
    return buckets;
  };
  auto src_buckets = bucket(src_store, src_lang);
  auto tgt_buckets = bucket(tgt_store, tgt_lang);

  GroundTruth truth;
  for (const auto& [key, src_ids] : src_buckets) {
    if (src_ids.size() != 1) continue;
    auto it = tgt_buckets.find(key);
    if (it == tgt_buckets.end() || it->second.size() != 1) continue;
    truth.pairs.insert({src_ids.front(), it->second.front()});
  }
  return truth;
}

std::string doc_pairs_to_tsv(const std::vector<DocPair>& pairs) {
  std::string out;
  char buf[32];
  for (const auto& pair : pairs) {
    std::snprintf(buf, sizeof buf, "%.6f", pair.score);
    out += pair.src_id;
    out += '\t';
    out += pair.tgt_id;
    out += '\t';
    out += buf;
    out += '\t';
    out += pair.provenance;
    out += '\n';
  }
  return out;
}

std::vector<DocPair> doc_pairs_from_tsv(const std::string& text) {
  std::vector<DocPair> pairs;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    size_t pos = 0;
    while (fields.size() < 3) {
      size_t tab = line.find('\t', pos);
      if (tab == std::string::npos) break;
      fields.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    if (fields.size() < 3)
      throw DataError("doc pair line " + std::to_string(line_no) +
                      ": expected 4 tab-separated fields");
    fields.push_back(line.substr(pos));
    pairs.push_back({fields[0], fields[1], std::stod(fields[2]), fields[3]});
  }
  return pairs;
}

}  // namespace bitext
