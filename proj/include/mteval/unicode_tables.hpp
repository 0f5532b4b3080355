#pragma once

#include <cstddef>
#include <cstdint>

namespace mteval::unicode_tables {

struct CodepointRange {
  char32_t first;
  char32_t last;
};

struct LowerEntry {
  char32_t upper;
  char32_t lower;
};

struct LowerExpansion {
  char32_t upper;
  char32_t lower[3];
  std::uint8_t count;
};

extern const char* unicode_version;

extern const CodepointRange number_ranges[];
extern const std::size_t number_ranges_size;
extern const CodepointRange punct_ranges[];
extern const std::size_t punct_ranges_size;
extern const CodepointRange symbol_ranges[];
extern const std::size_t symbol_ranges_size;
extern const CodepointRange space_ranges[];
extern const std::size_t space_ranges_size;

extern const LowerEntry lower_entries[];
extern const std::size_t lower_entries_size;
extern const LowerExpansion lower_expansions[];
extern const std::size_t lower_expansions_size;

}  // namespace mteval::unicode_tables
