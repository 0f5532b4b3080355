#include "mteval/unicode.hpp"

#include <algorithm>

#include "mteval/error.hpp"
#include "mteval/unicode_tables.hpp"

namespace mteval::unicode {

namespace {

using unicode_tables::CodepointRange;

bool in_ranges(const CodepointRange* ranges, std::size_t n, char32_t cp) {
  const CodepointRange* end = ranges + n;
  const CodepointRange* it = std::upper_bound(
      ranges, end, cp, [](char32_t v, const CodepointRange& r) { return v < r.first; });
  return it != ranges && cp <= (it - 1)->last;
}

}  // namespace

const char* version() { return unicode_tables::unicode_version; }

bool is_number(char32_t cp) {
  return in_ranges(unicode_tables::number_ranges, unicode_tables::number_ranges_size, cp);
}

bool is_punctuation(char32_t cp) {
  return in_ranges(unicode_tables::punct_ranges, unicode_tables::punct_ranges_size, cp);
}

bool is_symbol(char32_t cp) {
  return in_ranges(unicode_tables::symbol_ranges, unicode_tables::symbol_ranges_size, cp);
}

bool is_space(char32_t cp) {
  return in_ranges(unicode_tables::space_ranges, unicode_tables::space_ranges_size, cp);
}

void append_lower(char32_t cp, std::u32string& out) {
  using unicode_tables::lower_entries;
  using unicode_tables::lower_entries_size;
  const auto* end = lower_entries + lower_entries_size;
  const auto* it = std::lower_bound(
      lower_entries, end, cp,
      [](const unicode_tables::LowerEntry& e, char32_t v) { return e.upper < v; });
  if (it != end && it->upper == cp) {
    out.push_back(it->lower);
    return;
  }
  for (std::size_t i = 0; i < unicode_tables::lower_expansions_size; ++i) {
    const auto& x = unicode_tables::lower_expansions[i];
    if (x.upper == cp) {
      out.append(x.lower, x.count);
      return;
    }
  }
  out.push_back(cp);
}

namespace {

// Returns the decoded codepoint and advances `i`, or returns ~0u on error.
char32_t decode_one(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  std::size_t len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return ~char32_t{0};
  }
  if (i + len > s.size()) return ~char32_t{0};
  for (std::size_t k = 1; k < len; ++k) {
    unsigned char b = byte(i + k);
    if ((b & 0xC0) != 0x80) return ~char32_t{0};
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong forms, surrogates, and out-of-range values.
  static const char32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < min_for_len[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
    return ~char32_t{0};
  i += len;
  return cp;
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    if (decode_one(bytes, i) == ~char32_t{0}) return false;
  }
  return true;
}

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    char32_t cp = decode_one(bytes, i);
    if (cp == ~char32_t{0})
      throw Error(ErrorCode::InvalidEncoding,
                  "invalid UTF-8 at byte offset " + std::to_string(i));
    out.push_back(cp);
  }
  return out;
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

}  // namespace mteval::unicode
