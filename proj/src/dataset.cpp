#include "clrspline/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace clrspline {

namespace {

constexpr double kSumToOneTol = 5e-3;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& cell, const std::string& origin,
                    int row, int col) {
    const std::string text = trim(cell);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw std::runtime_error(origin + ": row " + std::to_string(row) +
                                 ", column " + std::to_string(col) +
                                 ": not a number: '" + cell + "'");
    }
    return value;
}

}  // namespace

Dataset parse_histogram_csv(std::istream& in, const std::string& origin) {
    std::string line;
    int lineno = 0;

    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            if (!trim(out).empty()) return true;
        }
        return false;
    };

    if (!next_line(line)) {
        throw std::runtime_error(origin + ": empty input, expected a header row");
    }
    const auto header = split_csv_line(line);
    if (header.size() < 3 || trim(header[0]) != "label" ||
        trim(header[1]) != "group") {
        throw std::runtime_error(
            origin + ": header must be 'label,group,<midpoint>,...'");
    }
    const int classes = static_cast<int>(header.size()) - 2;

    Dataset ds;
    ds.midpoints.resize(classes);
    for (int j = 0; j < classes; ++j) {
        ds.midpoints[j] = parse_number(header[j + 2], origin, lineno, j + 3);
        if (j > 0 && !(ds.midpoints[j] > ds.midpoints[j - 1])) {
            throw std::runtime_error(origin +
                                     ": midpoints must be strictly increasing");
        }
    }

    std::vector<std::vector<double>> rows;
    std::set<std::string> seen;
    while (next_line(line)) {
        const auto cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != classes + 2) {
            throw std::runtime_error(
                origin + ": row " + std::to_string(lineno) + ": expected " +
                std::to_string(classes + 2) + " cells, got " +
                std::to_string(cells.size()));
        }
        const std::string label = trim(cells[0]);
        if (label.empty()) {
            throw std::runtime_error(origin + ": row " + std::to_string(lineno) +
                                     ": empty label");
        }
        if (!seen.insert(label).second) {
            throw std::runtime_error(origin + ": row " + std::to_string(lineno) +
                                     ": duplicate label '" + label + "'");
        }
        ds.labels.push_back(label);
        ds.groups.push_back(trim(cells[1]));
        std::vector<double> row(classes);
        double sum = 0.0;
        for (int j = 0; j < classes; ++j) {
            const double y = parse_number(cells[j + 2], origin, lineno, j + 3);
            if (!(y > 0.0)) {
                throw std::runtime_error(
                    origin + ": row " + std::to_string(lineno) + ", column " +
                    std::to_string(j + 3) + ": non-positive proportion " +
                    trim(cells[j + 2]) +
                    " (zero counts must be imputed before ingestion)");
            }
            row[j] = y;
            sum += y;
        }
        if (std::abs(sum - 1.0) > kSumToOneTol) {
            throw std::runtime_error(
                origin + ": row " + std::to_string(lineno) + " ('" + label +
                "'): proportions sum to " + std::to_string(sum) +
                ", outside 1 +/- " + std::to_string(kSumToOneTol));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::runtime_error(origin + ": no data rows");
    }

    ds.proportions.resize(static_cast<Eigen::Index>(rows.size()), classes);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < classes; ++j) {
            ds.proportions(static_cast<Eigen::Index>(i), j) = rows[i][j];
        }
    }
    return ds;
}

Dataset parse_histogram_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return parse_histogram_csv(in, path);
}

}  // namespace clrspline
