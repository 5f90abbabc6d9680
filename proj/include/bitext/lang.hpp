#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "bitext/error.hpp"

namespace bitext {

// The closed 11-language set the toolkit operates on.
enum class Lang { en, hi, ta, te, ml, ur, bn, gu, mr, or_, pa };

inline constexpr int kLangCount = 11;

// Canonical reporting order for corpus grids.
inline constexpr std::array<Lang, kLangCount> kLangOrder = {
    Lang::en, Lang::hi, Lang::ta, Lang::te, Lang::ml, Lang::ur,
    Lang::bn, Lang::gu, Lang::mr, Lang::or_, Lang::pa};

inline std::string_view to_string(Lang lang) {
  switch (lang) {
    case Lang::en: return "en";
    case Lang::hi: return "hi";
    case Lang::ta: return "ta";
    case Lang::te: return "te";
    case Lang::ml: return "ml";
    case Lang::ur: return "ur";
    case Lang::bn: return "bn";
    case Lang::gu: return "gu";
    case Lang::mr: return "mr";
    case Lang::or_: return "or";
    case Lang::pa: return "pa";
  }
  return "??";
}

inline std::optional<Lang> try_parse_lang(std::string_view code) {
  for (Lang lang : kLangOrder) {
    if (to_string(lang) == code) return lang;
  }
  return std::nullopt;
}

inline Lang parse_lang(std::string_view code) {
  if (auto lang = try_parse_lang(code)) return *lang;
  throw DataError("unknown lang code \"" + std::string(code) + "\"");
}

}  // namespace bitext
