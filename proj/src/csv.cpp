#include "msl/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace msl {

std::string fmt_double(double x) {
    char buf[40];
    // %.17g round-trips every double exactly.
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("csv: malformed number '" + s + "'");
    return v;
}

}  // namespace

void write_grid_path_csv(std::ostream& os, const GridPath& p) {
    os << 't';
    for (int c = 0; c < p.dim; ++c) os << ",x" << (c + 1);
    os << '\n';
    for (int k = 0; k < p.nodes(); ++k) {
        os << fmt_double(p.time(k));
        for (int c = 0; c < p.dim; ++c) os << ',' << fmt_double(p.at(k, c));
        os << '\n';
    }
}

std::string grid_path_csv(const GridPath& p) {
    std::ostringstream os;
    write_grid_path_csv(os, p);
    return os.str();
}

GridPath read_grid_path_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("csv: empty path file");
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "t")
        throw std::invalid_argument("csv: path header must be t,x1,...,xd");
    const int dim = static_cast<int>(header.size()) - 1;

    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != dim + 1)
            throw std::invalid_argument("csv: row width does not match header");
        times.push_back(parse_double(cells[0]));
        for (int c = 0; c < dim; ++c) values.push_back(parse_double(cells[c + 1]));
    }
    if (times.size() < 2) throw std::invalid_argument("csv: path needs at least 2 nodes");
    const double t0 = times.front();
    const double dt = times[1] - times[0];
    GridPath p(t0, dt, static_cast<int>(times.size()), dim);
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (std::abs(times[k] - p.time(static_cast<int>(k))) > 1e-9 * std::max(1.0, std::abs(times[k])))
            throw std::invalid_argument("csv: time column is not a uniform grid");
    }
    p.values = std::move(values);
    return p;
}

void write_step_function_csv(std::ostream& os, const StepFunction& f) {
    os << "a,b";
    for (int c = 0; c < f.components; ++c) os << ",level_" << (c + 1);
    os << '\n';
    for (int k = 0; k < f.pieces(); ++k) {
        os << fmt_double(f.breakpoints[k]) << ',' << fmt_double(f.breakpoints[k + 1]);
        for (int c = 0; c < f.components; ++c) os << ',' << fmt_double(f.level(k, c));
        os << '\n';
    }
}

StepFunction read_step_function_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("csv: empty step-function file");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "a" || header[1] != "b")
        throw std::invalid_argument("csv: step-function header must be a,b,level_1,...");
    const int comps = static_cast<int>(header.size()) - 2;

    std::vector<double> bps;
    std::vector<double> levels;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != comps + 2)
            throw std::invalid_argument("csv: row width does not match header");
        const double a = parse_double(cells[0]);
        const double b = parse_double(cells[1]);
        if (bps.empty()) {
            bps.push_back(a);
        } else if (std::abs(bps.back() - a) > 1e-12 * std::max(1.0, std::abs(a))) {
            throw std::invalid_argument("csv: step-function pieces must be contiguous");
        }
        bps.push_back(b);
        for (int c = 0; c < comps; ++c) levels.push_back(parse_double(cells[c + 2]));
    }
    return StepFunction(std::move(bps), std::move(levels), comps);
}

void write_derivative_field_csv(std::ostream& os, const DerivativeField& field) {
    os << "s,t,component,value\n";
    for (std::size_t ti = 0; ti < field.t_indices.size(); ++ti) {
        const double t = field.t0 + field.t_indices[ti] * field.dt;
        for (int k = 0; k < field.s_nodes; ++k) {
            const double s = field.t0 + k * field.dt;
            for (int c = 0; c < field.dim; ++c)
                os << fmt_double(s) << ',' << fmt_double(t) << ',' << (c + 1) << ','
                   << fmt_double(field.value(static_cast<int>(ti), k)[c]) << '\n';
        }
    }
}

void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt_double(row[i]);
        os << '\n';
    }
}

}  // namespace msl
