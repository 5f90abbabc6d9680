#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bitext/lang.hpp"

namespace bitext {

// Canonical text form used everywhere downstream: NFC, single-space
// separated, trimmed, with zero-width characters and BOMs removed.
// Idempotent and total on valid UTF-8.
std::string normalize_text(std::string_view raw);

// Rule-based sentence splitting on script-specific terminators. Terminators
// stay on their sentence; text without one comes back as a single sentence.
std::vector<std::string> segment_sentences(std::string_view raw, Lang lang);

// Whitespace tokenization of normalized text.
std::vector<std::string> split_tokens(std::string_view text);

}  // namespace bitext
