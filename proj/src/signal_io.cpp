#include "dhilbert/signal_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace dhilbert {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(const std::string& text, T& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

}  // namespace

SignalFormatError::SignalFormatError(const std::string& source, std::size_t row, const std::string& what)
    : std::runtime_error(source + (row > 0 ? ":" + std::to_string(row) : std::string()) + ": " + what), row_(row) {}

LatticeSignal parse_signal(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t row = 0;
  std::size_t torus = 0;
  bool have_header = false;
  std::map<site_t, double> values;

  while (std::getline(in, line)) {
    ++row;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (row == 1 && t.rfind("# torus=", 0) == 0) {
        if (!parse_number(t.substr(8), torus) || torus < 2) {
          throw SignalFormatError(source, row, "bad torus size in '" + t + "'");
        }
      } else if (row == 1 && t.find("torus") != std::string::npos) {
        throw SignalFormatError(source, row, "expected '# torus=N', got '" + t + "'");
      }
      continue;
    }
    if (!have_header) {
      std::string compact;
      std::remove_copy_if(t.begin(), t.end(), std::back_inserter(compact), [](char c) { return c == ' '; });
      if (compact != "x,value") throw SignalFormatError(source, row, "expected header 'x,value', got '" + t + "'");
      have_header = true;
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw SignalFormatError(source, row, "expected two fields 'x,value', got '" + t + "'");
    }
    site_t x = 0;
    double v = 0.0;
    if (!parse_number(t.substr(0, comma), x)) throw SignalFormatError(source, row, "bad site index in '" + t + "'");
    if (!parse_number(t.substr(comma + 1), v) || !std::isfinite(v)) {
      throw SignalFormatError(source, row, "bad value in '" + t + "'");
    }
    if (torus > 0 && (x < 0 || x >= static_cast<site_t>(torus))) {
      throw SignalFormatError(source, row, "site " + std::to_string(x) + " outside [0, " + std::to_string(torus) + ")");
    }
    if (!values.emplace(x, v).second) throw SignalFormatError(source, row, "duplicate site " + std::to_string(x));
  }
  if (in.bad()) throw SignalFormatError(source, row, "read error");

  if (torus > 0) {
    std::vector<double> v(torus, 0.0);
    for (const auto& [x, value] : values) v[static_cast<std::size_t>(x)] = value;
    return LatticeSignal::torus(std::move(v));
  }
  if (values.empty()) return LatticeSignal::zero_window(0, 1);
  const site_t first = values.begin()->first;
  const site_t last = values.rbegin()->first;
  std::vector<double> v(static_cast<std::size_t>(last - first + 1), 0.0);
  for (const auto& [x, value] : values) v[static_cast<std::size_t>(x - first)] = value;
  return LatticeSignal::window(first, std::move(v));
}

LatticeSignal load_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SignalFormatError(path.string(), 0, "cannot open for reading");
  return parse_signal(in, path.string());
}

void format_signal(std::ostream& out, const LatticeSignal& s) {
  if (s.is_torus()) out << "# torus=" << s.size() << '\n';
  out << "x,value\n";
  char buf[64];
  for (std::size_t i = 0; i < s.size(); ++i) {
    const site_t x = s.offset() + static_cast<site_t>(i);
    const auto res = std::to_chars(buf, buf + sizeof buf, s.values()[i]);
    out << x << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
}

void write_signal(const std::filesystem::path& path, const LatticeSignal& s) {
  std::ofstream out(path);
  if (!out) throw SignalFormatError(path.string(), 0, "cannot open for writing");
  format_signal(out, s);
  if (!out) throw SignalFormatError(path.string(), 0, "write failed");
}

void write_report(const std::filesystem::path& path, const nlohmann::json& report) {
  std::ofstream out(path);
  if (!out) throw SignalFormatError(path.string(), 0, "cannot open for writing");
  out << report.dump(2) << '\n';
  if (!out) throw SignalFormatError(path.string(), 0, "write failed");
}

}  // namespace dhilbert
