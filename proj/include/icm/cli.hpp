#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "icm/setvalued.hpp"

namespace icm {

enum class GraphFormat { csv, svg };

// Writes S as CSV, or as a standalone SVG of the unit square with dashed
// gridlines at the given x and y coordinates.
void emit_graph(std::ostream& out, const SegmentSet& s, GraphFormat format,
                const std::vector<Rational>& grid_x = {}, const std::vector<Rational>& grid_y = {});

// Exit codes returned by run().
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int negative = 1;      // boolean verb answered false, or a check failed
inline constexpr int usage = 2;         // bad arguments, unreadable or invalid map files
inline constexpr int precondition = 3;  // mathematical hypothesis not met
inline constexpr int resource = 4;      // breakpoint cap exceeded
inline constexpr int internal = 5;      // internal invariant violated
}  // namespace exit_code

// Runs `icm <verb> ...` with argv-style arguments (excluding the program
// name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icm
