#pragma once

// Brute-force reference evaluator for the reference-list indicators. It uses plain
// standard containers and textbook formulas (mean-absolute-difference Gini, direct
// ordered-pair sums) and deliberately links nothing from the scoring library, so the
// two implementations can check each other.

#include <cstddef>
#include <string>
#include <vector>

namespace idr::oracle {

struct NaiveScore
{
    std::size_t variety = 0;
    double balance = 0.0;
    double avg_disparity = 0.0;
    double rao_stirling = 0.0;
    double integrated_diversity = 0.0;
};

/// `references[r]` lists the category indices of reference r; `matrix` is the row-major
/// dim x dim disparity matrix.
NaiveScore naive_score(
    const std::vector<std::vector<std::size_t>>& references, const std::vector<double>& matrix, std::size_t dim);

/// Same JSON line layout as the scorer's output.
std::string naive_score_line(const std::string& pub_id, const NaiveScore& score);

} // namespace idr::oracle
