#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "clrspline/types.hpp"

namespace clrspline {

/// A parsed histogram table: one labelled, grouped proportion row per
/// distribution-valued observation, all sharing the same class midpoints.
struct Dataset {
    std::vector<std::string> labels;
    std::vector<std::string> groups;
    Vector midpoints;
    Matrix proportions;  // rows x classes

    int rows() const { return static_cast<int>(labels.size()); }
    int classes() const { return static_cast<int>(midpoints.size()); }
};

/// Reads `label,group,<midpoint...>` CSV (LF or CRLF). Validation failures
/// throw std::runtime_error with row/column coordinates: duplicate labels,
/// non-numeric cells, ragged rows, non-positive proportions, row sums away
/// from one beyond the rounded-data tolerance 5e-3, non-increasing midpoints.
Dataset parse_histogram_csv(std::istream& in, const std::string& origin);
Dataset parse_histogram_csv(const std::string& path);

}  // namespace clrspline
