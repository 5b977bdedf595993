#pragma once

#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace testsupport {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

// Run a shell command, capturing stdout and the exit code.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

} // namespace testsupport
