#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bitext::unicode {

// UTF-8 decoding. Invalid byte sequences decode to U+FFFD, one replacement
// per offending byte, so every input stays processable.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(const std::u32string& codepoints);
std::string encode_utf8(char32_t cp);

// Canonical composition (NFC): full canonical decomposition, canonical
// reordering of combining marks, then recomposition of primary composites.
// Hangul is handled algorithmically.
std::u32string to_nfc(const std::u32string& codepoints);

int combining_class(char32_t cp);

// General category predicates, backed by generated UCD range tables.
bool is_letter(char32_t cp);       // L*
bool is_mark(char32_t cp);         // M*
bool is_digit(char32_t cp);        // Nd
bool is_punctuation(char32_t cp);  // P*
bool is_symbol(char32_t cp);       // S*
bool is_space(char32_t cp);        // Zs plus line/tab controls

}  // namespace bitext::unicode
