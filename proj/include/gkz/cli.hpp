#pragma once

// Command layer shared by the gkz executable and the Python module.

#include <string>
#include <vector>

#include "gkz/io.hpp"

namespace gkz {

struct CommandResult {
  Json report;
  int exit_code = 0;  // 0, or 3 when verification finds a nonzero residual
};

const std::vector<std::string>& command_names();

/// The job inside an input document: the document itself, or its "job"
/// member when the document is a report.
JobSpec job_from_document(const Json& doc);

/// `input` is a job object, or a previous report (an object with a "job"
/// member) whose emitted solutions `verify` re-checks.
CommandResult run_command(const std::string& verb, const Json& input, const JobSpec& job);

/// Indented plain-text rendering of a report.
std::string render_human(const Json& report);

/// 1 for user errors, 2 for parse errors, 3 for internal failures.
int exit_code_for(const std::exception& e);
std::string error_kind(const std::exception& e);

}  // namespace gkz
