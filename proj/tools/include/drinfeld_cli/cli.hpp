#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "drinfeld/registry.hpp"

namespace drinfeld::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Reads a TOML or JSON config (chosen by extension, .json is JSON and
/// anything else TOML) listing checks.
std::vector<CheckRequest> load_config(const std::filesystem::path& path);
ojson parse_toml(const std::string& text);

/// Entry point of the command-line tool. Reports go to `out` unless --out is
/// given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace drinfeld::cli
