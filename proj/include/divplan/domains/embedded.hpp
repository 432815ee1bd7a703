#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace divplan::domains {

struct EmbeddedFile {
  std::string_view path;  // relative to data/, e.g. "story/aladdin-domain.pddl"
  std::string_view content;
};

const std::vector<EmbeddedFile>& embedded_files();

std::optional<std::string_view> embedded_file(std::string_view path);

}  // namespace divplan::domains
