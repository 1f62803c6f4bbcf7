#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "dhilbert/signal.hpp"

namespace dhilbert {

/// Parse or I/O failure, with the offending file and line in the message.
class SignalFormatError : public std::runtime_error {
 public:
  SignalFormatError(const std::string& source, std::size_t row, const std::string& what);
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// CSV with header `x,value`, optionally preceded by a `# torus=N` line.
///
/// Window rows may come in any order and may skip sites (filled with 0); a
/// torus file lists sites in [0, N). A file with no data rows loads as the
/// zero signal (one site at x = 0 for windows).
LatticeSignal parse_signal(std::istream& in, const std::string& source = "<stream>");
LatticeSignal load_signal(const std::filesystem::path& path);

/// Shortest decimal form that reads back to the same double.
void format_signal(std::ostream& out, const LatticeSignal& s);
void write_signal(const std::filesystem::path& path, const LatticeSignal& s);

void write_report(const std::filesystem::path& path, const nlohmann::json& report);

}  // namespace dhilbert
