#pragma once

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace testsupport {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

// Runs the CLI binary with the given argument string via the shell.
inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(ESGIRT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  CliResult result;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), n);
  }
  int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace testsupport
