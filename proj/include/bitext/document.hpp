#pragma once

#include <chrono>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bitext/lang.hpp"

namespace bitext {

struct Date {
  std::chrono::year_month_day ymd;

  static Date parse(std::string_view text);  // strict YYYY-MM-DD
  std::string to_string() const;
  std::chrono::sys_days days() const { return std::chrono::sys_days(ymd); }

  friend auto operator<=>(const Date& a, const Date& b) {
    return a.days() <=> b.days();
  }
  friend bool operator==(const Date& a, const Date& b) {
    return a.days() == b.days();
  }
};

// One article: the unit of retrieval. Sentences are stored normalized.
struct Document {
  std::string id;
  Lang lang = Lang::en;
  std::optional<Date> date;
  std::optional<std::string> ministry;
  std::string title;
  std::vector<std::string> sentences;
  std::optional<std::string> url;

  std::string joined_text() const;
};

class DocumentStore {
 public:
  void insert(Document doc);  // throws DataError on duplicate id

  const Document& at(const std::string& id) const;
  const Document* find(const std::string& id) const;
  bool contains(const std::string& id) const { return find(id) != nullptr; }
  size_t size() const { return order_.size(); }

  // Ids of one language, in insertion order.
  const std::vector<std::string>& ids_of(Lang lang) const;
  // All ids in insertion order.
  const std::vector<std::string>& ids() const { return order_; }

  // Documents of `lang` dated within `window_days` of `center`, ordered by
  // (date, id). Undated documents are excluded.
  std::vector<const Document*> query_date_window(Lang lang, Date center,
                                                 int window_days) const;

 private:
  std::unordered_map<std::string, Document> docs_;
  std::vector<std::string> order_;
  std::map<Lang, std::vector<std::string>> by_lang_;
  std::map<Lang, std::map<Date, std::vector<std::string>>> by_date_;
};

// Reads one JSON object per line. Sentences pass through normalize_text;
// a "body" field is segmented instead. Errors carry the 1-based line number.
DocumentStore ingest_jsonl(const std::string& path);
DocumentStore ingest_jsonl_text(std::string_view text);

// Writes the store back as JSONL ("sentences" always, fields in a fixed
// order) so that ingest(serialize(store)) round-trips.
std::string serialize_jsonl(const DocumentStore& store);
void write_jsonl(const DocumentStore& store, const std::string& path);

}  // namespace bitext
