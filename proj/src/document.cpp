#include "bitext/document.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bitext/error.hpp"
#include "bitext/text.hpp"

namespace bitext {

using nlohmann::json;

Date Date::parse(std::string_view text) {
  auto fail = [&] {
    throw DataError("invalid date \"" + std::string(text) +
                    "\", expected YYYY-MM-DD");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
  auto num = [&](size_t pos, size_t len) {
    int value = 0;
    auto [p, ec] =
        std::from_chars(text.data() + pos, text.data() + pos + len, value);
    if (ec != std::errc() || p != text.data() + pos + len) fail();
    return value;
  };
  Date d{std::chrono::year_month_day{std::chrono::year(num(0, 4)),
                                     std::chrono::month(unsigned(num(5, 2))),
                                     std::chrono::day(unsigned(num(8, 2)))}};
  if (!d.ymd.ok()) fail();
  return d;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::string Document::joined_text() const {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

void DocumentStore::insert(Document doc) {
  if (docs_.count(doc.id))
    throw DataError("duplicate id \"" + doc.id + "\"");
  const std::string id = doc.id;
  by_lang_[doc.lang].push_back(id);
  if (doc.date) by_date_[doc.lang][*doc.date].push_back(id);
  order_.push_back(id);
  docs_.emplace(id, std::move(doc));
}

const Document& DocumentStore::at(const std::string& id) const {
  auto it = docs_.find(id);
  if (it == docs_.end()) throw DataError("unknown document id \"" + id + "\"");
  return it->second;
}

const Document* DocumentStore::find(const std::string& id) const {
  auto it = docs_.find(id);
  return it == docs_.end() ? nullptr : &it->second;
}

const std::vector<std::string>& DocumentStore::ids_of(Lang lang) const {
  static const std::vector<std::string> kEmpty;
  auto it = by_lang_.find(lang);
  return it == by_lang_.end() ? kEmpty : it->second;
}

std::vector<const Document*> DocumentStore::query_date_window(
    Lang lang, Date center, int window_days) const {
  std::vector<const Document*> out;
  auto lit = by_date_.find(lang);
  if (lit == by_date_.end()) return out;
  using std::chrono::days;
  Date lo{std::chrono::year_month_day(center.days() - days(window_days))};
  Date hi{std::chrono::year_month_day(center.days() + days(window_days))};
  for (auto it = lit->second.lower_bound(lo);
       it != lit->second.end() && it->first <= hi; ++it) {
    std::vector<std::string> ids = it->second;
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) out.push_back(&docs_.at(id));
  }
  return out;
}

namespace {

Document parse_document_line(const json& obj, size_t line_no) {
  auto line_err = [line_no](const std::string& msg) {
    return DataError("line " + std::to_string(line_no) + ": " + msg);
  };
  if (!obj.is_object()) throw line_err("expected a JSON object");

  auto require_string = [&](const char* field) {
    if (!obj.contains(field))
      throw line_err(std::string("missing field ") + field);
    if (!obj[field].is_string())
      throw line_err(std::string("field ") + field + " must be a string");
    return obj[field].get<std::string>();
  };

  Document doc;
  doc.id = require_string("id");
  if (doc.id.empty()) throw line_err("empty id");
  std::string lang_code = require_string("lang");
  auto lang = try_parse_lang(lang_code);
  if (!lang) throw line_err("unknown lang \"" + lang_code + "\"");
  doc.lang = *lang;

  if (obj.contains("date") && !obj["date"].is_null()) {
    if (!obj["date"].is_string()) throw line_err("field date must be a string");
    try {
      doc.date = Date::parse(obj["date"].get<std::string>());
    } catch (const DataError& e) {
      throw line_err(e.what());
    }
  }
  if (obj.contains("ministry") && !obj["ministry"].is_null())
    doc.ministry = normalize_text(obj["ministry"].get<std::string>());
  if (obj.contains("title") && !obj["title"].is_null())
    doc.title = normalize_text(obj["title"].get<std::string>());
  if (obj.contains("url") && !obj["url"].is_null())
    doc.url = obj["url"].get<std::string>();

  const bool has_sentences = obj.contains("sentences");
  const bool has_body = obj.contains("body");
  if (has_sentences == has_body)
    throw line_err("exactly one of \"sentences\" or \"body\" is required");
  if (has_sentences) {
    if (!obj["sentences"].is_array())
      throw line_err("field sentences must be an array of strings");
    for (const auto& s : obj["sentences"]) {
      if (!s.is_string())
        throw line_err("field sentences must be an array of strings");
      std::string norm = normalize_text(s.get<std::string>());
      if (!norm.empty()) doc.sentences.push_back(std::move(norm));
    }
  } else {
    if (!obj["body"].is_string())
      throw line_err("field body must be a string");
    doc.sentences =
        segment_sentences(normalize_text(obj["body"].get<std::string>()),
                          doc.lang);
  }
  return doc;
}

}  // namespace

DocumentStore ingest_jsonl_text(std::string_view text) {
  DocumentStore store;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (line.empty() ||
        line.find_first_not_of(" \t\r") == std::string_view::npos)
      continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) +
                      ": malformed JSON: " + e.what());
    }
    store.insert(parse_document_line(obj, line_no));
  }
  return store;
}

DocumentStore ingest_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_jsonl_text(buf.str());
}

std::string serialize_jsonl(const DocumentStore& store) {
  std::string out;
  for (const auto& id : store.ids()) {
    const Document& doc = store.at(id);
    json obj;
    obj["id"] = doc.id;
    obj["lang"] = std::string(to_string(doc.lang));
    if (doc.date) obj["date"] = doc.date->to_string();
    if (doc.ministry) obj["ministry"] = *doc.ministry;
    if (!doc.title.empty()) obj["title"] = doc.title;
    obj["sentences"] = doc.sentences;
    if (doc.url) obj["url"] = *doc.url;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void write_jsonl(const DocumentStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write \"" + path + "\"");
  out << serialize_jsonl(store);
}

}  // namespace bitext
