#include "mnv/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mnv/error.hpp"

namespace mnv {

namespace {

std::string format(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse(const std::string& s, std::size_t line)
{
    if (s == "nan" || s == "-nan" || s == "NaN") {
        return std::nan("");
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw InvalidArgument("field csv line " + std::to_string(line) + ": bad number '" + s + "'");
}

constexpr const char* kHeader = "x,y,t,U,ReV,ImV";

}  // namespace

void write_field_csv(std::ostream& os, const FieldGrid& fg)
{
    os << kHeader << '\n';
    const PlaneGrid& g = fg.grid;
    for (std::size_t k = 0; k < fg.times.size(); ++k) {
        for (std::size_t j = 0; j < g.ny; ++j) {
            for (std::size_t i = 0; i < g.nx; ++i) {
                const FieldValue& v = fg.at(i, j, k);
                os << format(g.x(i)) << ',' << format(g.y(j)) << ',' << format(fg.times[k]) << ','
                   << format(v.U) << ',' << format(v.V.real()) << ',' << format(v.V.imag()) << '\n';
            }
        }
    }
}

FieldGrid read_field_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kHeader) {
        throw InvalidArgument(std::string("field csv must start with the header ") + kHeader);
    }
    struct Row {
        double x, y, t, u, re, im;
    };
    std::vector<Row> rows;
    std::size_t n = 1;
    while (std::getline(is, line)) {
        ++n;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        double c[6];
        int k = 0;
        while (std::getline(ss, cell, ',')) {
            if (k == 6) {
                throw InvalidArgument("field csv line " + std::to_string(n) + ": too many columns");
            }
            c[k++] = parse(cell, n);
        }
        if (k != 6) {
            throw InvalidArgument("field csv line " + std::to_string(n) + ": expected 6 columns");
        }
        rows.push_back({c[0], c[1], c[2], c[3], c[4], c[5]});
    }
    if (rows.empty()) {
        throw InvalidArgument("field csv has no data rows");
    }

    // nx from the first change of y, ny from the first change of t
    std::size_t nx = 1;
    while (nx < rows.size() && rows[nx].y == rows[0].y && rows[nx].t == rows[0].t) {
        ++nx;
    }
    std::size_t per_slice = nx;
    while (per_slice < rows.size() && rows[per_slice].t == rows[0].t) {
        ++per_slice;
    }
    if (per_slice % nx != 0 || rows.size() % per_slice != 0) {
        throw InvalidArgument("field csv rows do not form a complete grid");
    }
    FieldGrid fg;
    fg.grid = {rows[0].x, rows[nx - 1].x, rows[0].y, rows[per_slice - 1].y, nx, per_slice / nx};
    fg.grid.validate();
    const std::size_t nt = rows.size() / per_slice;
    fg.values.reserve(rows.size());
    for (std::size_t k = 0; k < nt; ++k) {
        fg.times.push_back(rows[k * per_slice].t);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t k = r / per_slice;
        const std::size_t v = r % per_slice;
        const Row& row = rows[r];
        if (row.x != rows[v % nx].x || row.y != rows[(v / nx) * nx].y || row.t != fg.times[k]) {
            throw InvalidArgument("field csv line " + std::to_string(r + 2) + " is out of grid order");
        }
        fg.values.push_back({row.u, Complex(row.re, row.im)});
    }
    return fg;
}

}  // namespace mnv
