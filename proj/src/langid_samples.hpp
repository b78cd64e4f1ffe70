#pragma once

#include <string_view>

namespace vaguecam::detail {

// Generated at configure time from data/langid/sample.{en,fr}.txt.
extern const std::string_view kLangIdSampleEn;
extern const std::string_view kLangIdSampleFr;

}  // namespace vaguecam::detail
