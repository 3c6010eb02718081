#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "msl/grid_path.hpp"
#include "msl/malliavin.hpp"
#include "msl/step_function.hpp"

namespace msl {

// Shortest round-trippable decimal form of a double.
std::string fmt_double(double x);

// Header t,x1,...,xd and one row per grid node.
void write_grid_path_csv(std::ostream& os, const GridPath& p);
std::string grid_path_csv(const GridPath& p);
GridPath read_grid_path_csv(std::istream& is);

// Rows a,b,level_1,...,level_k, one per piece.
void write_step_function_csv(std::ostream& os, const StepFunction& f);
StepFunction read_step_function_csv(std::istream& is);

// Columns s,t,component,value (component indexes the solution coordinate).
void write_derivative_field_csv(std::ostream& os, const DerivativeField& field);

// Generic numeric table with a header row.
void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace msl
