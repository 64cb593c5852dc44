//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_APP_COMMANDS_H_
#define LCJT_APP_COMMANDS_H_

#include <string>
#include <string_view>
#include <vector>

#include "lcjt/app/run_config.h"
#include "lcjt/error.h"

namespace lcjt {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,              // usage, I/O and other failures
  kExitSchema = 2,             // malformed input table or config
  kExitNonFinite = 3,          // training hit a non-finite loss
  kExitMissingCheckpoint = 4,  // generate without a checkpoint
  kExitEmptySamples = 5,       // eval on a sample file with no rows
  kExitUnknownLigase = 6,      // ligase id not among the configured ones
};

class CommandError: public Error {
public:
  CommandError(int code, const std::string &what) : Error(what), code_(code) { }
  int code() const { return code_; }

private:
  int code_;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string message;
};

// Runs one subcommand ("ingest", "train", "generate", "eval", "report").
// Errors become exit codes; the MANIFEST section for the command is written
// either way.
CommandResult run_command(const std::string &name, const RunConfig &cfg);

// Header plus rows of a comma-separated table with 1-based line numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> lines;

  // -1 when absent.
  int column(std::string_view name) const;
};

// Throws SchemaError on an empty text, a missing required column or a row
// whose field count differs from the header.
CsvTable parse_csv_table(std::string_view text, const std::vector<std::string> &required);

}  // namespace lcjt

#endif  // LCJT_APP_COMMANDS_H_
