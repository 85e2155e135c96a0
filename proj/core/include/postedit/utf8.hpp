#pragma once

#include <string>
#include <string_view>

namespace postedit {

// Decode UTF-8 into code points. Throws Error(malformed_record) on invalid
// input (overlong forms, surrogates, truncated sequences).
std::u32string utf8_decode(std::string_view bytes);

std::string utf8_encode(std::u32string_view points);
std::string utf8_encode(char32_t point);

}  // namespace postedit
