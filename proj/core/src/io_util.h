// Copyright 2026 The Solfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOLFI_SRC_IO_UTIL_H_
#define SOLFI_SRC_IO_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace solfi {

// Both throw IoError.
std::string ReadFile(const std::filesystem::path& path);
// Creates parent directories; writes through a temporary then renames.
void WriteFile(const std::filesystem::path& path, std::string_view content);

// POSIX single-quote shell quoting.
std::string ShellQuote(std::string_view text);

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

// Runs `command` through /bin/sh, capturing combined output.
CommandResult RunShell(const std::string& command);

}  // namespace solfi

#endif  // SOLFI_SRC_IO_UTIL_H_
