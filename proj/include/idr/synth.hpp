#pragma once

#include "idr/corpus.hpp"
#include "idr/disparity.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace idr {

/// Seedable generator with platform-independent output: the engine is std::mt19937_64,
/// whose sequence the standard fixes, and the distributions below are our own (the
/// standard library's distributions differ between implementations).
class SynthRng
{
public:
    explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n). n must be positive.
    std::size_t index(std::size_t n);
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    bool chance(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

/// Block-structured disparity: categories are split evenly into `n_disciplines`
/// contiguous blocks; off-diagonal entries are `within` inside a block and `across`
/// between blocks, plus uniform jitter in [-jitter, jitter], clamped to [0,1].
/// Requires 0 <= within < across <= 1 and 0 <= jitter <= 0.05.
DisparityMatrix generate_disparity(
    std::size_t n_scs, std::size_t n_disciplines, double within, double across, double jitter, std::uint64_t seed);

/// Block of category `sc` under the partition generate_disparity uses.
std::size_t sc_block(std::size_t sc, std::size_t n_scs, std::size_t n_disciplines);

struct SynthParams
{
    std::uint64_t seed = 1;

    std::size_t n_single_author = 1000;
    std::size_t n_multi_author_single_field = 1000;
    std::size_t n_multi_field = 1000;

    std::size_t n_scs = 252;
    std::size_t n_fields = 70;
    std::size_t n_disciplines = 14;

    std::size_t max_authors = 8;     ///< author counts decay geometrically (ratio 1/2) up to this
    std::size_t max_fields = 4;      ///< field counts of multi-field papers, same decay
    double mean_references = 30.0;   ///< uniform on [0.5, 1.5] x mean, at least 1
    std::size_t refs_per_extra_author = 3;
    std::size_t field_pool_size = 12; ///< categories a field's papers cite from
    std::size_t author_slice = 5;     ///< categories of the pool each author brings
    double multi_sc_share = 0.3;      ///< references whose journal has two categories
    double focused_share = 0.1;       ///< papers citing one category only

    double within = 0.35;
    double across = 0.9;
    double jitter = 0.05;

    /// Throws InputError when a count is zero or a share falls outside [0,1].
    void validate() const;
};

struct SynthOutput
{
    FieldScheme scheme;
    std::vector<Publication> publications;
    DisparityMatrix disparity;
    /// Brute-force scores, one score JSON line per publication in pub_id order.
    std::vector<std::string> golden_lines;

    std::string corpus_jsonl() const;
    std::string golden_jsonl() const;
};

/// Deterministic function of `params`. Single-author papers cite from one author's slice
/// of their field pool; more authors widen the union of slices; multi-field papers
/// draw on several fields' pools, usually from different disciplines.
SynthOutput generate_corpus(const SynthParams& params);

} // namespace idr
