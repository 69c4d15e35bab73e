#include "idr/oracle.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace idr::oracle {

NaiveScore naive_score(
    const std::vector<std::vector<std::size_t>>& references, const std::vector<double>& matrix, std::size_t dim)
{
    if (matrix.size() != dim * dim) {
        throw std::invalid_argument("matrix size does not match dim");
    }
    std::map<std::size_t, double> counts;
    for (const auto& ref : references) {
        std::set<std::size_t> journal(ref.begin(), ref.end());
        for (auto sc : journal) {
            if (sc >= dim) {
                throw std::out_of_range("category index out of range");
            }
            counts[sc] += 1.0;
        }
    }
    if (counts.empty()) {
        throw std::invalid_argument("no categories");
    }

    std::vector<std::size_t> cats;
    std::vector<double> x;
    for (const auto& [sc, c] : counts) {
        cats.push_back(sc);
        x.push_back(c);
    }
    const std::size_t v = cats.size();
    double total = 0.0;
    for (double c : x) {
        total += c;
    }

    NaiveScore s;
    s.variety = v;

    double abs_diff = 0.0;
    for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = 0; j < v; ++j) {
            abs_diff += std::abs(x[i] - x[j]);
        }
    }
    const double mean = total / static_cast<double>(v);
    s.balance = 1.0 - abs_diff / (2.0 * static_cast<double>(v * v) * mean);

    if (v > 1) {
        double sum = 0.0;
        for (std::size_t i = 0; i < v; ++i) {
            for (std::size_t j = 0; j < v; ++j) {
                if (i != j) {
                    sum += matrix[cats[i] * dim + cats[j]];
                }
            }
        }
        s.avg_disparity = sum / static_cast<double>(v * (v - 1));
    }

    double rs = 0.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = 0; j < v; ++j) {
            const double pi = x[i] / total;
            const double pj = x[j] / total;
            const double d = matrix[cats[i] * dim + cats[j]];
            if (i != j) {
                rs += pi * pj * d;
            }
            denominator += pi * pj * (1.0 - d);
        }
    }
    s.rao_stirling = rs;
    s.integrated_diversity = 1.0 / denominator;
    return s;
}

std::string naive_score_line(const std::string& pub_id, const NaiveScore& score)
{
    return fmt::format(
        "{{\"pub_id\":{},\"variety\":{},\"balance\":{:.17g},\"avg_disparity\":{:.17g},\"rao_stirling\":{:.17g},"
        "\"integrated_diversity\":{:.17g}}}",
        nlohmann::json(pub_id).dump(), score.variety, score.balance, score.avg_disparity, score.rao_stirling,
        score.integrated_diversity);
}

} // namespace idr::oracle
