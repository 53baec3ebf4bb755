#pragma once

#include <map>
#include <string>
#include <vector>

namespace sextic {

enum class Command {
  potential_info,
  series,
  sum,
  fit_large_order,
  fit_splitting,
  solve,
  scan,
  crossings,
  deltax,
  reproduce,
};

Command parse_command(const std::string& name);  // UsageError on unknown names
std::string to_string(Command c);

struct RunConfig {
  Command command = Command::potential_info;
  // String-typed key/value parameters; unknown keys are rejected per command.
  std::map<std::string, std::string> params;
  bool emit_timestamp = true;
  // Resolution order: params["output-dir"], then $SEXTIC_OUTPUT_DIR, then ".".
  std::string resolved_output_dir() const;
};

struct RunOutput {
  std::vector<std::string> files;  // paths written
  std::string message;             // one-line human summary
};

// Dispatches to exactly one module pipeline and writes its output files.
// Throws Error subclasses; the CLI front end maps codes to exit status.
RunOutput run(const RunConfig& config);

// Canonical data pipelines behind the published figures; tag in
// {fig1, fig2, fig3, fig4, fig7, fig8}.
RunOutput reproduce_figure(const std::string& tag, const RunConfig& base);

// Reads back the configuration embedded in an output file (CSV `# config:`
// header or JSON `_meta.config` object).
RunConfig parse_output_metadata(const std::string& path);

}  // namespace sextic
