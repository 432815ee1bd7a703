#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace divplan::cli {

inline constexpr int kReportSchemaVersion = 1;

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoPlans = 2;

// Entry point shared by the executable and the tests. args excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Text rendering of a plan report; throws on an unknown schema version.
std::string render_report(const nlohmann::json& report, const std::string& what, bool ansi);

}  // namespace divplan::cli
