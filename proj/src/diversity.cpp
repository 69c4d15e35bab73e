#include "idr/diversity.hpp"

#include "idr/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <exception>
#include <numeric>
#include <thread>

namespace idr {

namespace {

void require_non_empty(const ScCountVector& counts)
{
    if (counts.empty()) {
        throw InputError("empty SC count vector");
    }
}

void require_in_range(const ScCountVector& counts, const DisparityMatrix& d)
{
    for (const auto& [sc, x] : counts.entries()) {
        if (sc.get() >= d.dim()) {
            throw InputError(
                "SC index " + std::to_string(sc.get()) + " out of range for disparity matrix of dimension " +
                std::to_string(d.dim()));
        }
    }
}

std::vector<double> proportions_of(const ScCountVector& counts)
{
    std::vector<double> p;
    p.reserve(counts.size());
    const double total = static_cast<double>(counts.total());
    for (const auto& [sc, x] : counts.entries()) {
        p.push_back(static_cast<double>(x) / total);
    }
    return p;
}

struct PairSums
{
    double rao_stirling = 0.0; // sum over i != j of p_i p_j d_ij
    double similarity = 0.0;   // sum over all (i, j) of p_i p_j (1 - d_ij)
};

PairSums pair_sums(const ScCountVector& counts, std::span<const double> p, const DisparityMatrix& d)
{
    auto entries = counts.entries();
    PairSums sums;
    double off_diagonal_similarity = 0.0;
    double self = 0.0;
    for (std::size_t a = 0; a < entries.size(); ++a) {
        self += p[a] * p[a];
        auto row = d.row(entries[a].first.get());
        for (std::size_t b = a + 1; b < entries.size(); ++b) {
            double dis = row[entries[b].first.get()];
            double w = p[a] * p[b];
            sums.rao_stirling += w * dis;
            off_diagonal_similarity += w * (1.0 - dis);
        }
    }
    sums.rao_stirling *= 2.0;
    sums.similarity = self + 2.0 * off_diagonal_similarity;
    return sums;
}

double inverse_similarity(double denominator)
{
    if (!(denominator > 0.0)) {
        throw InvariantViolation("integrated diversity denominator is not positive");
    }
    // with d in [0,1] the denominator is at most 1; rounding may push it a few ulps past
    return denominator >= 1.0 ? 1.0 : 1.0 / denominator;
}

} // namespace

std::size_t variety(const ScCountVector& counts)
{
    require_non_empty(counts);
    return counts.size();
}

double balance(const ScCountVector& counts)
{
    require_non_empty(counts);
    const auto v = static_cast<std::int64_t>(counts.size());
    if (v == 1) {
        return 1.0;
    }
    std::vector<std::uint64_t> sorted;
    sorted.reserve(counts.size());
    for (const auto& [sc, x] : counts.entries()) {
        sorted.push_back(x);
    }
    std::sort(sorted.begin(), sorted.end());

    // exact integer numerator, single division at the end
    std::int64_t numerator = 0;
    for (std::int64_t i = 1; i <= v; ++i) {
        numerator += (2 * i - v - 1) * static_cast<std::int64_t>(sorted[static_cast<std::size_t>(i - 1)]);
    }
    return 1.0 - static_cast<double>(numerator) / (static_cast<double>(v) * static_cast<double>(counts.total()));
}

double average_disparity(std::span<const ScId> present, const DisparityMatrix& d)
{
    if (present.empty()) {
        throw InputError("empty SC set");
    }
    for (auto sc : present) {
        if (sc.get() >= d.dim()) {
            throw InputError(
                "SC index " + std::to_string(sc.get()) + " out of range for disparity matrix of dimension " +
                std::to_string(d.dim()));
        }
    }
    const auto v = present.size();
    if (v == 1) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t a = 0; a < v; ++a) {
        for (std::size_t b = a + 1; b < v; ++b) {
            sum += d(present[a], present[b]);
        }
    }
    return 2.0 * sum / static_cast<double>(v * (v - 1));
}

double rao_stirling(const ScCountVector& counts, const DisparityMatrix& d)
{
    require_non_empty(counts);
    require_in_range(counts, d);
    auto p = proportions_of(counts);
    return pair_sums(counts, p, d).rao_stirling;
}

double integrated_diversity(const ScCountVector& counts, const DisparityMatrix& d)
{
    require_non_empty(counts);
    require_in_range(counts, d);
    if (counts.size() == 1) {
        return 1.0;
    }
    auto p = proportions_of(counts);
    return inverse_similarity(pair_sums(counts, p, d).similarity);
}

DiversityScore score_counts(const ScCountVector& counts, const DisparityMatrix& d)
{
    require_non_empty(counts);
    require_in_range(counts, d);

    DiversityScore score;
    score.variety = counts.size();
    score.balance = balance(counts);

    std::vector<ScId> present;
    present.reserve(counts.size());
    for (const auto& [sc, x] : counts.entries()) {
        present.push_back(sc);
    }
    score.avg_disparity = average_disparity(present, d);

    auto p = proportions_of(counts);
    if (counts.size() == 1) {
        score.rao_stirling = 0.0;
        score.integrated_diversity = 1.0;
    } else {
        auto sums = pair_sums(counts, p, d);
        score.rao_stirling = sums.rao_stirling;
        score.integrated_diversity = inverse_similarity(sums.similarity);
    }

    score.proportions.reserve(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        score.proportions.emplace_back(present[k], p[k]);
    }
    return score;
}

DiversityScore score_publication(const Publication& pub, const DisparityMatrix& d)
{
    return score_counts(reference_sc_counts(pub), d);
}

std::vector<ScoredPublication> score_corpus(std::span<const Publication> pubs, const DisparityMatrix& d, std::size_t threads)
{
    std::vector<std::size_t> order(pubs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pubs[a].pub_id < pubs[b].pub_id; });

    std::vector<ScoredPublication> out(pubs.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto& pub = pubs[order[k]];
            out[k] = {pub.pub_id, score_publication(pub, d)};
        }
    };

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, std::max<std::size_t>(1, pubs.size()));
    if (threads <= 1) {
        work(0, pubs.size());
        return out;
    }

    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        const auto chunk = (pubs.size() + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const auto begin = std::min(pubs.size(), t * chunk);
            const auto end = std::min(pubs.size(), begin + chunk);
            workers.emplace_back([&, t, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

std::string score_json_line(const std::string& pub_id, const DiversityScore& score)
{
    std::string line = "{\"pub_id\":";
    line += nlohmann::json(pub_id).dump();
    line += ",\"variety\":" + std::to_string(score.variety);
    line += ",\"balance\":" + format_real(score.balance);
    line += ",\"avg_disparity\":" + format_real(score.avg_disparity);
    line += ",\"rao_stirling\":" + format_real(score.rao_stirling);
    line += ",\"integrated_diversity\":" + format_real(score.integrated_diversity);
    line += '}';
    return line;
}

} // namespace idr
