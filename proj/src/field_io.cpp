#include "gsmooth/field_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gsmooth/errors.hpp"

namespace gsmooth {

namespace {

constexpr const char* kCsvHeader = "# label,sigma1,sigma2,min,max,step";

std::string g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

double to_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw InvalidSpec("trailing characters in number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw InvalidSpec("cannot parse number '" + s + "'");
    }
}

}  // namespace

void write_field_csv(std::ostream& out, const PhaseSpaceField& field) {
    const QuadratureGrid& grid = field.grid();
    out << kCsvHeader << '\n';
    out << "# " << to_string(field.label()) << ',' << g17(field.sigma1()) << ',' << g17(field.sigma2()) << ','
        << g17(grid.min()) << ',' << g17(grid.max()) << ',' << g17(grid.step()) << '\n';
    const Eigen::MatrixXd& values = field.values();
    for (int i = 0; i < values.rows(); ++i) {
        for (int j = 0; j < values.cols(); ++j) {
            if (j > 0) out << ',';
            out << g17(values(i, j));
        }
        out << '\n';
    }
}

PhaseSpaceField read_field_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw InvalidSpec("field CSV: missing header line");
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw InvalidSpec("field CSV: missing metadata line");
    const auto meta = split_commas(line.substr(2));
    if (meta.size() != 6) throw InvalidSpec("field CSV: metadata needs 6 fields");
    const QuadratureGrid grid(to_double(meta[3]), to_double(meta[4]), to_double(meta[5]));
    const int n = grid.points();
    Eigen::MatrixXd values(n, n);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw InvalidSpec("field CSV: expected " + std::to_string(n) + " rows");
        const auto cells = split_commas(line);
        if (static_cast<int>(cells.size()) != n) throw InvalidSpec("field CSV: row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) values(i, j) = to_double(cells[j]);
    }
    return PhaseSpaceField(grid, std::move(values), parse_field_label(meta[0]), to_double(meta[1]), to_double(meta[2]));
}

nlohmann::json field_to_json(const PhaseSpaceField& field) {
    nlohmann::json rows = nlohmann::json::array();
    const Eigen::MatrixXd& values = field.values();
    for (int i = 0; i < values.rows(); ++i) {
        std::vector<double> row(values.cols());
        for (int j = 0; j < values.cols(); ++j) row[j] = values(i, j);
        rows.push_back(std::move(row));
    }
    return {
        {"label", std::string(to_string(field.label()))},
        {"sigma1", field.sigma1()},
        {"sigma2", field.sigma2()},
        {"grid", {{"min", field.grid().min()}, {"max", field.grid().max()}, {"step", field.grid().step()}}},
        {"values", std::move(rows)},
    };
}

PhaseSpaceField field_from_json(const nlohmann::json& j) {
    try {
        const auto& g = j.at("grid");
        const QuadratureGrid grid(g.at("min").get<double>(), g.at("max").get<double>(), g.at("step").get<double>());
        const auto& rows = j.at("values");
        const int n = grid.points();
        if (static_cast<int>(rows.size()) != n) throw InvalidSpec("field JSON: wrong number of rows");
        Eigen::MatrixXd values(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n) throw InvalidSpec("field JSON: wrong row length");
            for (int k = 0; k < n; ++k) values(i, k) = rows[i][k].get<double>();
        }
        return PhaseSpaceField(grid, std::move(values), parse_field_label(j.at("label").get<std::string>()),
                               j.at("sigma1").get<double>(), j.at("sigma2").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("field JSON: ") + e.what());
    }
}

}  // namespace gsmooth
