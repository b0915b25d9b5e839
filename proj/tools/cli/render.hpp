#pragma once

#include <string>

#include "cli/commands.hpp"

namespace lyap::cli {

std::string render_bound_table(const ReportDocument& doc);
std::string render_estimate_table(const ReportDocument& doc);
std::string render_enumerate_table(const ReportDocument& doc);

/// json/csv are shared by all commands; table dispatches on the payload.
std::string render(const ReportDocument& doc, OutputFormat format);

}  // namespace lyap::cli
