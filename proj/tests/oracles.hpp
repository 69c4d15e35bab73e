#pragma once

// Test-only reference routines. Each one is written from the textbook definition and
// shares nothing with the library code path it checks.

#include "idr/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace idr::test {

/// Gini from the mean absolute difference: sum_i sum_j |x_i - x_j| / (2 V^2 mu).
inline double gini_mean_abs_difference(const std::vector<std::uint64_t>& x)
{
    const auto v = x.size();
    std::uint64_t pair_sum = 0; // exact
    std::uint64_t total = 0;
    for (auto a : x) {
        total += a;
        for (auto b : x) {
            pair_sum += a > b ? a - b : b - a;
        }
    }
    // 2 V^2 mu = 2 V X
    return static_cast<double>(pair_sum) / (2.0 * static_cast<double>(v) * static_cast<double>(total));
}

struct BruteGroup
{
    std::size_t n = 0;
    double variety = 0, balance = 0, disparity = 0, id = 0;
};

/// Group means by an arbitrary key function, summed with long double.
template <typename KeyFn>
std::map<std::string, BruteGroup> brute_group_means(const std::vector<PaperRecord>& papers, KeyFn key)
{
    std::map<std::string, std::vector<const PaperRecord*>> groups;
    for (const auto& p : papers) {
        groups[key(p)].push_back(&p);
    }
    std::map<std::string, BruteGroup> out;
    for (const auto& [k, members] : groups) {
        long double v = 0, b = 0, d = 0, id = 0;
        for (const auto* p : members) {
            v += p->variety;
            b += p->balance;
            d += p->avg_disparity;
            id += p->integrated_diversity;
        }
        const long double n = members.size();
        out[k] = {members.size(), double(v / n), double(b / n), double(d / n), double(id / n)};
    }
    return out;
}

struct BruteStats
{
    double mean, median, sd, min, max;
};

/// Two-pass population statistics; the median by selection rather than a full sort.
inline BruteStats brute_stats(std::vector<double> x)
{
    const auto n = x.size();
    long double sum = 0;
    for (double v : x) {
        sum += v;
    }
    const long double mean = sum / n;
    long double sq = 0;
    for (double v : x) {
        sq += (v - mean) * (v - mean);
    }
    auto lo = x.begin() + static_cast<std::ptrdiff_t>((n - 1) / 2);
    std::nth_element(x.begin(), lo, x.end());
    double a = *lo;
    double b = a;
    if (n % 2 == 0) {
        b = *std::min_element(lo + 1, x.end());
    }
    return {double(mean), (a + b) / 2, double(std::sqrt(sq / n)), *std::min_element(x.begin(), x.end()),
            *std::max_element(x.begin(), x.end())};
}

/// Bin counts by scanning every bin's interval for every value.
inline std::vector<std::size_t> brute_bins(const std::vector<double>& ids, const std::vector<double>& edges)
{
    std::vector<std::size_t> counts(edges.size() - 1, 0);
    for (double v : ids) {
        if (v == 1.0) {
            continue;
        }
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            const bool last = k + 2 == edges.size();
            if (v >= edges[k] && (v < edges[k + 1] || (last && v <= edges[k + 1]))) {
                ++counts[k];
                break;
            }
        }
    }
    return counts;
}

} // namespace idr::test
