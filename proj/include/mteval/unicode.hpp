#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mteval::unicode {

// Unicode version of the bundled category tables; recorded in metric
// signatures.
const char* version();

// General category groups used by the international tokenizer.
bool is_number(char32_t cp);       // Nd, Nl, No
bool is_punctuation(char32_t cp);  // Pc, Pd, Pe, Pf, Pi, Po, Ps
bool is_symbol(char32_t cp);       // Sc, Sk, Sm, So
bool is_space(char32_t cp);

// Context-free lowercase mapping, appended to `out`.
void append_lower(char32_t cp, std::u32string& out);

bool is_valid_utf8(std::string_view bytes);

// Strict decoding; throws Error(InvalidEncoding) on malformed input.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view cps);

}  // namespace mteval::unicode
