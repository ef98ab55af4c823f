#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

/// Path of the CLI binary under test, passed in by ctest.
inline const char* cli_path() { return std::getenv("MIRRORSIM_CLI"); }

/// Runs the CLI with the given argument string, capturing stdout+stderr.
inline CliResult run_cli(const std::string& args) {
  namespace fs = std::filesystem;
  const fs::path capture =
      fs::temp_directory_path() / ("mirrorsim_cli_out_" + std::to_string(::getpid()) + ".txt");
  const std::string command =
      std::string(cli_path()) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream file(capture);
  std::ostringstream text;
  text << file.rdbuf();
  result.output = text.str();
  fs::remove(capture);
  return result;
}

inline std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

/// Parses CSV text into rows of doubles, skipping the header; non-numeric
/// cells parse as NaN.
inline std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream stream(text);
  std::string line;
  bool header = true;
  while (std::getline(stream, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (...) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// key=value text -> lookup helper.
inline double key_value(const std::string& text, const std::string& key) {
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.rfind(key + "=", 0) == 0) return std::stod(line.substr(key.size() + 1));
  }
  throw std::runtime_error("key not found: " + key);
}

}  // namespace testutil
