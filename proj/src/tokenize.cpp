#include "mteval/tokenize.hpp"

#include "mteval/unicode.hpp"

namespace mteval {

namespace {

using unicode::is_number;
using unicode::is_punctuation;
using unicode::is_space;
using unicode::is_symbol;

}  // namespace

TokenSeq tokenize_intl(std::string_view text) {
  std::u32string cps = unicode::decode_utf8(text);

  // A punctuation character is isolated when its original neighbour on
  // either side is a non-number; digits shield decimal and thousands
  // separators. A missing neighbour (string edge) shields too, which keeps
  // a sentence-final "2019." intact. Symbols are always isolated.
  std::u32string expanded;
  expanded.reserve(cps.size() + cps.size() / 2);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    bool isolate = false;
    if (is_punctuation(cp)) {
      if (i > 0 && !is_number(cps[i - 1])) isolate = true;
      if (i + 1 < cps.size() && !is_number(cps[i + 1])) isolate = true;
    } else if (is_symbol(cp)) {
      isolate = true;
    }
    if (isolate) {
      expanded.push_back(U' ');
      expanded.push_back(cp);
      expanded.push_back(U' ');
    } else {
      expanded.push_back(cp);
    }
  }

  TokenSeq tokens;
  std::u32string current;
  for (char32_t cp : expanded) {
    if (is_space(cp)) {
      if (!current.empty()) {
        tokens.push_back(unicode::encode_utf8(current));
        current.clear();
      }
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) tokens.push_back(unicode::encode_utf8(current));
  return tokens;
}

CharSeq char_sequence(std::string_view text, bool remove_whitespace) {
  std::u32string cps = unicode::decode_utf8(text);
  if (!remove_whitespace) return cps;
  CharSeq out;
  out.reserve(cps.size());
  for (char32_t cp : cps)
    if (!is_space(cp)) out.push_back(cp);
  return out;
}

std::string apply_casing(std::string_view text, Casing mode) {
  if (mode == Casing::mixed) return std::string(text);
  std::u32string cps = unicode::decode_utf8(text);
  std::u32string lowered;
  lowered.reserve(cps.size());
  for (char32_t cp : cps) unicode::append_lower(cp, lowered);
  return unicode::encode_utf8(lowered);
}

const char* to_string(Casing mode) { return mode == Casing::mixed ? "mixed" : "lc"; }

}  // namespace mteval
