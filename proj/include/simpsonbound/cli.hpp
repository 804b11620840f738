#pragma once

#include <iosfwd>

namespace simpsonbound {

struct CampaignSummary;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitUsage = 64;

/// Violations take precedence over per-case errors.
int campaign_exit_code(const CampaignSummary& s);

/// Entry point of the command-line tool, with injectable streams for tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace simpsonbound
