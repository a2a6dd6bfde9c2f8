#pragma once

#include <string>
#include <vector>

#include "gdpa/io.hpp"

namespace gdpa {

enum ExitCode { kExitOk = 0, kExitPrecondition = 1, kExitInconclusive = 2 };

/// Arguments shared by all commands; unused fields are ignored.
struct CommandOptions {
  std::string ring = "Z";
  std::string family = "classical";
  /// Custom values as a JSON object, or a gcd-morphic sequence as a JSON array.
  std::string values;
  std::string q0;
  /// Inline JSON (starting with '{' or '['), "-" for stdin, or a file path.
  std::string input;
  std::string out = "text";
  std::string mode = "full";
  std::string ideal = "[]";
  long up_to = 20;
  long n = 0, m = 0, h = 1, p = 2, r = 1;
  /// Negative means the command's default.
  long horizon = -1;
  long max_i = -1;
  long limit = 10000;
  long count = 50;
  long max_d = 4;
  unsigned seed = 1;
};

struct CommandResult {
  Json json = Json::object();
  std::string text;
  int code = kExitOk;
};

struct CommandInfo {
  std::string name;
  std::string help;
};

const std::vector<CommandInfo>& commands();
/// Throws SchemaError or another Error on invalid input; other outcomes are
/// reported through the result code.
CommandResult run_command(const std::string& name, const CommandOptions& o);

}  // namespace gdpa
