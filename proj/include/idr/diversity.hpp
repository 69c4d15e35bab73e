#pragma once

#include "idr/corpus.hpp"
#include "idr/disparity.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace idr {

/// Reference-list diversity of one publication.
struct DiversityScore
{
    std::size_t variety = 0;
    double balance = 1.0;
    double avg_disparity = 0.0;
    double rao_stirling = 0.0;
    double integrated_diversity = 1.0;
    /// Share of each present category in the full-counted total, sorted by category.
    std::vector<std::pair<ScId, double>> proportions;
};

/// Number of categories with a non-zero count.
std::size_t variety(const ScCountVector& counts);

/// One minus the Gini concentration of the counts. In [1/V, 1]; exactly 1 when V = 1.
double balance(const ScCountVector& counts);

/// Unweighted mean disparity over ordered pairs of distinct present categories; 0 for a
/// single category.
double average_disparity(std::span<const ScId> present, const DisparityMatrix& d);

/// Sum over ordered pairs i != j of p_i p_j d_ij.
double rao_stirling(const ScCountVector& counts, const DisparityMatrix& d);

/// 1 / sum over all ordered pairs (diagonal included) of p_i p_j (1 - d_ij). Equals
/// 1 / (1 - rao_stirling) and is exactly 1 for a single category.
double integrated_diversity(const ScCountVector& counts, const DisparityMatrix& d);

DiversityScore score_counts(const ScCountVector& counts, const DisparityMatrix& d);
DiversityScore score_publication(const Publication& pub, const DisparityMatrix& d);

struct ScoredPublication
{
    std::string pub_id;
    DiversityScore score;
};

/// Scores every publication, splitting the work over `threads` workers (0 picks the
/// hardware concurrency). The result is sorted by pub_id whatever the thread count.
std::vector<ScoredPublication> score_corpus(
    std::span<const Publication> pubs, const DisparityMatrix& d, std::size_t threads = 1);

/// `{"pub_id":..,"variety":..,"balance":..,"avg_disparity":..,"rao_stirling":..,
/// "integrated_diversity":..}` with reals at 17 significant digits.
std::string score_json_line(const std::string& pub_id, const DiversityScore& score);

} // namespace idr
