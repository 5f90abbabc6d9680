#include "bitext/unicode.hpp"

#include <algorithm>

namespace bitext::unicode {

namespace {

struct DecompEntry {
  char32_t cp;
  uint16_t offset;
  uint8_t length;
};

struct CccEntry {
  char32_t cp;
  uint8_t ccc;
};

struct CompEntry {
  char32_t first;
  char32_t second;
  char32_t composite;
};

struct CatRange {
  char32_t lo;
  char32_t hi;
  char cls;
};

#include "unicode_tables.inc"

constexpr char32_t kReplacement = 0xFFFD;

// Hangul syllable composition constants (UAX #15 §3.12).
constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161,
                   kTBase = 0x11A7;
constexpr int kLCount = 19, kVCount = 21, kTCount = 28;
constexpr int kNCount = kVCount * kTCount;
constexpr int kSCount = kLCount * kNCount;

const DecompEntry* find_decomp(char32_t cp) {
  auto it = std::lower_bound(
      std::begin(kDecompEntries), std::end(kDecompEntries), cp,
      [](const DecompEntry& e, char32_t c) { return e.cp < c; });
  return (it != std::end(kDecompEntries) && it->cp == cp) ? &*it : nullptr;
}

char32_t find_composite(char32_t a, char32_t b) {
  auto it = std::lower_bound(
      std::begin(kCompEntries), std::end(kCompEntries), std::pair(a, b),
      [](const CompEntry& e, const std::pair<char32_t, char32_t>& k) {
        return e.first != k.first ? e.first < k.first : e.second < k.second;
      });
  if (it != std::end(kCompEntries) && it->first == a && it->second == b)
    return it->composite;
  return 0;
}

void decompose_into(char32_t cp, std::u32string& out) {
  if (cp >= kSBase && cp < kSBase + kSCount) {
    int index = int(cp - kSBase);
    out.push_back(kLBase + index / kNCount);
    out.push_back(kVBase + (index % kNCount) / kTCount);
    if (index % kTCount) out.push_back(kTBase + index % kTCount);
    return;
  }
  if (const DecompEntry* e = find_decomp(cp)) {
    out.append(kDecompPool + e->offset, e->length);
    return;
  }
  out.push_back(cp);
}

char klass_of(char32_t cp) {
  auto it = std::upper_bound(
      std::begin(kCatRanges), std::end(kCatRanges), cp,
      [](char32_t c, const CatRange& r) { return c < r.lo; });
  if (it == std::begin(kCatRanges)) return 0;
  --it;
  return cp <= it->hi ? it->cls : 0;
}

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    unsigned char b0 = text[i];
    int extra;
    char32_t cp;
    if (b0 < 0x80) {
      extra = 0;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      extra = 1;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + extra >= text.size()) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      unsigned char b = text[i + k];
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms and surrogate range.
    static constexpr char32_t kMinByLen[4] = {0, 0x80, 0x800, 0x10000};
    if (!ok || cp < kMinByLen[extra] || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += char(cp);
  } else if (cp < 0x800) {
    out += char(0xC0 | (cp >> 6));
    out += char(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += char(0xE0 | (cp >> 12));
    out += char(0x80 | ((cp >> 6) & 0x3F));
    out += char(0x80 | (cp & 0x3F));
  } else {
    out += char(0xF0 | (cp >> 18));
    out += char(0x80 | ((cp >> 12) & 0x3F));
    out += char(0x80 | ((cp >> 6) & 0x3F));
    out += char(0x80 | (cp & 0x3F));
  }
  return out;
}

std::string encode_utf8(const std::u32string& codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t cp : codepoints) out += encode_utf8(cp);
  return out;
}

int combining_class(char32_t cp) {
  auto it = std::lower_bound(
      std::begin(kCccEntries), std::end(kCccEntries), cp,
      [](const CccEntry& e, char32_t c) { return e.cp < c; });
  return (it != std::end(kCccEntries) && it->cp == cp) ? it->ccc : 0;
}

std::u32string to_nfc(const std::u32string& codepoints) {
  // Full canonical decomposition.
  std::u32string nfd;
  nfd.reserve(codepoints.size());
  for (char32_t cp : codepoints) decompose_into(cp, nfd);

  // Canonical ordering: stable bubble of combining marks.
  for (size_t i = 1; i < nfd.size(); ++i) {
    int ccc = combining_class(nfd[i]);
    if (ccc == 0) continue;
    size_t j = i;
    while (j > 0) {
      int prev = combining_class(nfd[j - 1]);
      if (prev == 0 || prev <= ccc) break;
      std::swap(nfd[j - 1], nfd[j]);
      --j;
    }
  }

  // Recomposition. A candidate is blocked from the last starter when any
  // character sits between them with ccc >= ccc(candidate); canonical order
  // makes the most recently appended one maximal.
  std::u32string out;
  out.reserve(nfd.size());
  int last_starter = -1;
  for (char32_t cp : nfd) {
    int ccc = combining_class(cp);
    if (last_starter >= 0) {
      bool has_intervening = size_t(last_starter) + 1 < out.size();
      bool blocked = has_intervening &&
                     (ccc == 0 || combining_class(out.back()) >= ccc);
      if (!blocked) {
        char32_t starter = out[last_starter];
        char32_t composite = 0;
        if (starter >= kLBase && starter < kLBase + kLCount &&
            cp >= kVBase && cp < kVBase + kVCount) {
          composite = kSBase + (char32_t(starter - kLBase) * kNCount) +
                      (char32_t(cp - kVBase) * kTCount);
        } else if (starter >= kSBase && starter < kSBase + kSCount &&
                   (starter - kSBase) % kTCount == 0 && cp > kTBase &&
                   cp < kTBase + kTCount) {
          composite = starter + (cp - kTBase);
        } else {
          composite = find_composite(starter, cp);
        }
        if (composite) {
          out[last_starter] = composite;
          continue;
        }
      }
    }
    if (ccc == 0) last_starter = int(out.size());
    out.push_back(cp);
  }
  return out;
}

bool is_letter(char32_t cp) { return klass_of(cp) == 'L'; }
bool is_mark(char32_t cp) { return klass_of(cp) == 'M'; }
bool is_digit(char32_t cp) { return klass_of(cp) == 'D'; }
bool is_punctuation(char32_t cp) { return klass_of(cp) == 'P'; }
bool is_symbol(char32_t cp) { return klass_of(cp) == 'S'; }
bool is_space(char32_t cp) { return klass_of(cp) == 'W'; }

}  // namespace bitext::unicode
