#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bitext/document.hpp"
#include "bitext/lang.hpp"

namespace bitext {

enum class TranslatorKind { identity, dictionary, exec, cached };

struct TranslatorSpec {
  TranslatorKind kind = TranslatorKind::identity;
  std::optional<std::string> dictionary_path;
  // Token-level noise for the dictionary backend: each token stays
  // untranslated with probability `noise`, decided by a seeded hash so
  // identical batches translate identically.
  double noise = 0.0;
  uint64_t seed = 0;
  std::optional<std::string> command;  // exec backend
  std::optional<std::string> cache_path;
  int batch_size = 64;  // lines per exec round-trip

  static TranslatorSpec identity_spec();
  static TranslatorSpec dictionary_spec(std::string path, double noise = 0.0,
                                        uint64_t seed = 0);
  static TranslatorSpec exec_spec(std::string command);
  static TranslatorSpec cached_spec(std::string path);
};

struct TranslationBatch {
  Lang src_lang;
  Lang tgt_lang;
  std::vector<std::string> lines;
};

class Translator {
 public:
  explicit Translator(TranslatorSpec spec);

  // One output line per input line, in order.
  std::vector<std::string> translate_batch(const TranslationBatch& batch) const;

  const TranslatorSpec& spec() const { return spec_; }

 private:
  TranslatorSpec spec_;
  std::map<std::string, std::string> dictionary_;
  // cache key: src<US>tgt<US>sentence
  std::map<std::string, std::string> cache_;
};

// Translates every sentence of every src_lang document once and writes a
// TSV cache (src_lang, tgt_lang, source, translation) usable by the
// cached backend.
void build_cache(const DocumentStore& store, const TranslatorSpec& spec,
                 Lang src_lang, Lang tgt_lang, const std::string& cache_path);

}  // namespace bitext
