// Copyright 2026 The ifm-resonator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ifm::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Parses a flat `key = value` file. Blank lines and lines starting with '#'
/// or ';' are ignored; keys may carry a leading "--". Throws ConfigError on a
/// line without '=' or with an empty key.
ConfigEntries parse_config(std::string_view text);

/// Reads and parses a config file. Throws std::ios_base::failure when unreadable.
ConfigEntries load_config(const std::filesystem::path &path);

/// Removes `--config <path>` / `--config=<path>` from args and returns the path, if any.
std::optional<std::string> take_config_path(std::vector<std::string> &args);

/// Appends `--key value` for every config entry whose flag does not already
/// appear in `args`, so command-line flags win. Values "true"/"false" become
/// a bare flag or nothing.
std::vector<std::string> merge_config(std::vector<std::string> args, const ConfigEntries &entries);

}  // namespace ifm::cli
