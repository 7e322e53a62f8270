#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "icm/plmap.hpp"

namespace icm {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

Rational parse_field(const std::string& token, std::size_t line) {
  try {
    return Rational::parse(token);
  } catch (const std::exception&) {
    throw ParseError(line, "not a rational literal: '" + token + "'");
  }
}

}  // namespace

PLMap read_pwl(std::istream& in) {
  std::vector<Breakpoint> points;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    std::istringstream fields(text);
    std::string xs, ys, extra;
    if (!(fields >> xs >> ys)) throw ParseError(line, "expected two fields \"X Y\"");
    if (fields >> extra) throw ParseError(line, "unexpected trailing field '" + extra + "'");
    points.push_back({parse_field(xs, line), parse_field(ys, line)});
  }
  if (points.empty()) throw ParseError(line, "no breakpoints");
  return PLMap::make(std::move(points));
}

PLMap read_pwl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_pwl(in);
}

void write_pwl(std::ostream& out, const PLMap& f) {
  for (const auto& b : f.breakpoints()) out << b.x.str() << ' ' << b.y.str() << '\n';
}

}  // namespace icm
