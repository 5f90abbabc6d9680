#include "bitext/text.hpp"

#include "bitext/unicode.hpp"

namespace bitext {

namespace {

namespace uni = bitext::unicode;

bool is_zero_width(char32_t cp) {
  // ZWSP, ZWNJ, ZWJ, word joiner, BOM/ZWNBSP.
  return cp == 0x200B || cp == 0x200C || cp == 0x200D || cp == 0x2060 ||
         cp == 0xFEFF;
}

// Sentence terminators per script family. Danda scripts keep Latin ? and !
// but do not treat the ASCII period as a terminator.
std::u32string terminators_for(Lang lang) {
  switch (lang) {
    case Lang::hi:
    case Lang::mr:
    case Lang::bn:
    case Lang::or_:
    case Lang::pa:
      return U"।॥?!";
    case Lang::ur:
      return U"۔؟!";
    default:
      return U".?!";
  }
}

bool is_upper_latin(char32_t cp) { return cp >= U'A' && cp <= U'Z'; }

}  // namespace

std::string normalize_text(std::string_view raw) {
  std::u32string cps = uni::decode_utf8(raw);
  std::u32string nfc = uni::to_nfc(cps);

  std::u32string out;
  out.reserve(nfc.size());
  bool pending_space = false;
  for (char32_t cp : nfc) {
    if (is_zero_width(cp)) continue;
    if (uni::is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(cp);
  }
  return uni::encode_utf8(out);
}

std::vector<std::string> segment_sentences(std::string_view raw, Lang lang) {
  std::u32string cps = uni::decode_utf8(raw);
  const std::u32string terms = terminators_for(lang);
  std::vector<std::string> sentences;

  size_t start = 0;
  size_t i = 0;
  auto flush = [&](size_t end) {
    while (start < end && cps[start] == U' ') ++start;
    size_t stop = end;
    while (stop > start && cps[stop - 1] == U' ') --stop;
    if (stop > start)
      sentences.push_back(uni::encode_utf8(cps.substr(start, stop - start)));
    start = end;
  };

  while (i < cps.size()) {
    if (terms.find(cps[i]) == std::u32string::npos) {
      ++i;
      continue;
    }
    // Abbreviation guard: a period right after a single uppercase Latin
    // letter is an initial ("J. Smith"), except when the letter opens the
    // sentence, where "A." reads as a sentence of its own.
    if (cps[i] == U'.' && i >= 1 && is_upper_latin(cps[i - 1])) {
      bool word_is_single_letter = i == 1 || cps[i - 2] == U' ';
      bool at_sentence_start =
          i == 1 || (word_is_single_letter && i - 2 == start);
      if (word_is_single_letter && !at_sentence_start) {
        ++i;
        continue;
      }
    }
    // Consume the whole terminator run ("?!", "॥...") as one boundary.
    while (i < cps.size() && terms.find(cps[i]) != std::u32string::npos) ++i;
    flush(i);
  }
  flush(cps.size());
  return sentences;
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' ||
                               text[i] == '\n' || text[i] == '\r'))
      ++i;
    size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' &&
           text[j] != '\n' && text[j] != '\r')
      ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace bitext
