#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mteval {

using TokenSeq = std::vector<std::string>;
using CharSeq = std::u32string;

enum class Casing { mixed, lower };

// International tokenization as pinned by the BLEU signature component
// `tok.intl`: punctuation is split off unless digit-adjacent, symbols are
// always split, then the result is divided on Unicode whitespace.
TokenSeq tokenize_intl(std::string_view text);

// Unicode scalar sequence for character-level metrics; whitespace is
// stripped first when `remove_whitespace` is set.
CharSeq char_sequence(std::string_view text, bool remove_whitespace);

// mixed = identity, lower = context-free Unicode lowercasing.
std::string apply_casing(std::string_view text, Casing mode);

const char* to_string(Casing mode);

}  // namespace mteval
