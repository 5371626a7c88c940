#pragma once

#include <string_view>

// Word lists compiled in from core/data (see cmake/EmbedData.cmake).
namespace tuxqa::bundled {

extern const std::string_view kStopwords;
extern const std::string_view kPosLexicon;
extern const std::string_view kNegativeWords;
extern const std::string_view kSalutations;

}  // namespace tuxqa::bundled
