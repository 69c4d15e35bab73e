#include "idr/synth.hpp"

#include "idr/classify.hpp"
#include "idr/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace idr {

std::size_t SynthRng::index(std::size_t n)
{
    if (n == 0) {
        throw InvariantViolation("SynthRng::index on empty range");
    }
    // rejection sampling keeps the draw unbiased
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = 0;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

double SynthRng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t sc_block(std::size_t sc, std::size_t n_scs, std::size_t n_disciplines)
{
    return sc * n_disciplines / n_scs;
}

DisparityMatrix generate_disparity(
    std::size_t n_scs, std::size_t n_disciplines, double within, double across, double jitter, std::uint64_t seed)
{
    if (n_scs == 0 || n_disciplines == 0 || n_disciplines > n_scs) {
        throw InputError("need 1 <= n_disciplines <= n_scs");
    }
    if (!(within >= 0.0 && within < across && across <= 1.0)) {
        throw InputError("need 0 <= within < across <= 1");
    }
    if (!(jitter >= 0.0 && jitter <= 0.05)) {
        throw InputError("jitter must lie in [0, 0.05]");
    }

    SynthRng rng(seed);
    SquareMatrix<double> d(n_scs, 0.0);
    for (std::size_t i = 0; i < n_scs; ++i) {
        for (std::size_t j = i + 1; j < n_scs; ++j) {
            const bool same = sc_block(i, n_scs, n_disciplines) == sc_block(j, n_scs, n_disciplines);
            double v = same ? within : across;
            if (jitter > 0.0) {
                v += (2.0 * rng.uniform() - 1.0) * jitter;
            }
            v = std::clamp(v, 0.0, 1.0);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return DisparityMatrix(std::move(d));
}

void SynthParams::validate() const
{
    auto positive = [](std::size_t v, const char* name) {
        if (v == 0) {
            throw InputError(std::string(name) + " must be positive");
        }
    };
    auto share = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputError(std::string(name) + " must lie in [0,1]");
        }
    };
    positive(n_scs, "n_scs");
    positive(n_fields, "n_fields");
    positive(n_disciplines, "n_disciplines");
    positive(field_pool_size, "field_pool_size");
    positive(author_slice, "author_slice");
    if (n_disciplines > n_scs || n_disciplines > n_fields) {
        throw InputError("n_disciplines may not exceed n_scs or n_fields");
    }
    if (max_authors < 2) {
        throw InputError("max_authors must be at least 2");
    }
    if (max_fields < 2 || max_fields > max_authors) {
        throw InputError("max_fields must lie in [2, max_authors]");
    }
    if (n_multi_field > 0 && n_fields < 2) {
        throw InputError("multi-field papers need at least 2 fields");
    }
    if (!(mean_references >= 1.0)) {
        throw InputError("mean_references must be at least 1");
    }
    share(multi_sc_share, "multi_sc_share");
    share(focused_share, "focused_share");
}

std::string SynthOutput::corpus_jsonl() const
{
    std::string out;
    for (const auto& pub : publications) {
        out += to_json_line(pub, scheme);
        out += '\n';
    }
    return out;
}

std::string SynthOutput::golden_jsonl() const
{
    std::string out;
    for (const auto& line : golden_lines) {
        out += line;
        out += '\n';
    }
    return out;
}

namespace {

/// `lo` plus a count whose probabilities halve with every step, capped at `hi`.
std::size_t decaying_count(SynthRng& rng, std::size_t lo, std::size_t hi)
{
    std::size_t n = lo;
    while (n < hi && rng.chance(0.5)) {
        ++n;
    }
    return n;
}

std::vector<std::size_t> sample_distinct(SynthRng& rng, std::vector<std::size_t> from, std::size_t k)
{
    k = std::min(k, from.size());
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(from[i], from[i + rng.index(from.size() - i)]);
    }
    from.resize(k);
    return from;
}

class CorpusBuilder
{
public:
    explicit CorpusBuilder(const SynthParams& p)
        : p_(p)
        , rng_(p.seed)
    {
        build_scheme();
        build_pools();
    }

    Publication make(Subpopulation kind, std::size_t serial)
    {
        std::size_t n_authors = 1;
        std::vector<std::size_t> fields;
        switch (kind) {
        case Subpopulation::SingleAuthor:
            fields.push_back(rng_.index(p_.n_fields));
            break;
        case Subpopulation::MultiAuthorSingleField:
            n_authors = decaying_count(rng_, 2, p_.max_authors);
            fields.push_back(rng_.index(p_.n_fields));
            break;
        case Subpopulation::MultiField: {
            std::vector<std::size_t> all(p_.n_fields);
            std::iota(all.begin(), all.end(), std::size_t{0});
            fields = sample_distinct(rng_, std::move(all), decaying_count(rng_, 2, std::min(p_.max_fields, p_.n_fields)));
            n_authors = decaying_count(rng_, fields.size(), p_.max_authors);
            break;
        }
        }

        Publication pub;
        pub.pub_id = fmt::format("P{:07d}", serial);
        pub.year = 2006 + static_cast<std::int64_t>(rng_.index(11));
        double t = rng_.uniform();
        pub.doc_type.kind = t < 0.8 ? DocKind::Article : t < 0.95 ? DocKind::ProceedingsPaper : DocKind::BookChapter;

        std::vector<std::size_t> candidates;
        for (std::size_t a = 0; a < n_authors; ++a) {
            // the first authors cover every field once; the rest join a random one
            std::size_t f = a < fields.size() ? fields[a] : fields[rng_.index(fields.size())];
            pub.authors.push_back({fmt::format("{}-A{}", pub.pub_id, a + 1), FieldId(f)});
            for (auto sc : sample_distinct(rng_, pools_[f], p_.author_slice)) {
                if (std::find(candidates.begin(), candidates.end(), sc) == candidates.end()) {
                    candidates.push_back(sc);
                }
            }
        }
        if (rng_.chance(p_.focused_share)) {
            candidates.resize(1);
        }

        const auto base = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(p_.mean_references * (0.5 + rng_.uniform()))));
        const auto n_refs = base + p_.refs_per_extra_author * (n_authors - 1);
        for (std::size_t r = 0; r < n_refs; ++r) {
            Reference ref;
            auto first = pick(candidates);
            ref.scs.push_back(ScId(first));
            if (candidates.size() > 1 && rng_.chance(p_.multi_sc_share)) {
                std::size_t second = first;
                while (second == first) {
                    second = pick(candidates);
                }
                ref.scs.push_back(ScId(second));
            }
            std::sort(ref.scs.begin(), ref.scs.end());
            pub.references.push_back(std::move(ref));
        }
        return pub;
    }

    FieldScheme scheme() const { return scheme_; }

private:
    void build_scheme()
    {
        std::vector<Category> scs;
        for (std::size_t i = 0; i < p_.n_scs; ++i) {
            scs.push_back({fmt::format("SC{:03d}", i + 1), fmt::format("Subject category {}", i + 1)});
        }
        std::vector<Category> disciplines;
        for (std::size_t d = 0; d < p_.n_disciplines; ++d) {
            disciplines.push_back({fmt::format("D{:02d}", d + 1), fmt::format("Discipline {}", d + 1)});
        }
        std::vector<Field> fields;
        for (std::size_t f = 0; f < p_.n_fields; ++f) {
            auto d = f * p_.n_disciplines / p_.n_fields;
            fields.push_back(
                {fmt::format("D{:02d}/F{:03d}", d + 1, f + 1), fmt::format("Field {}", f + 1), DisciplineId(d)});
        }
        scheme_ = FieldScheme(std::move(scs), std::move(fields), std::move(disciplines));
    }

    void build_pools()
    {
        std::vector<std::vector<std::size_t>> blocks(p_.n_disciplines);
        for (std::size_t sc = 0; sc < p_.n_scs; ++sc) {
            blocks[sc_block(sc, p_.n_scs, p_.n_disciplines)].push_back(sc);
        }
        for (std::size_t f = 0; f < p_.n_fields; ++f) {
            auto d = scheme_.discipline_of(FieldId(f)).get();
            auto pool = sample_distinct(rng_, blocks[d], p_.field_pool_size);
            if (p_.n_disciplines > 1) {
                auto other = (d + 1 + rng_.index(p_.n_disciplines - 1)) % p_.n_disciplines;
                pool.push_back(blocks[other][rng_.index(blocks[other].size())]);
            }
            pools_.push_back(std::move(pool));
        }
    }

    /// Earlier candidates are cited more often (weight 1 / (rank + 1)).
    std::size_t pick(const std::vector<std::size_t>& candidates)
    {
        double total = 0.0;
        for (std::size_t r = 0; r < candidates.size(); ++r) {
            total += 1.0 / static_cast<double>(r + 1);
        }
        double u = rng_.uniform() * total;
        for (std::size_t r = 0; r < candidates.size(); ++r) {
            u -= 1.0 / static_cast<double>(r + 1);
            if (u < 0.0) {
                return candidates[r];
            }
        }
        return candidates.back();
    }

    const SynthParams& p_;
    SynthRng rng_;
    FieldScheme scheme_;
    std::vector<std::vector<std::size_t>> pools_;
};

} // namespace

SynthOutput generate_corpus(const SynthParams& params)
{
    params.validate();

    SynthOutput out;
    CorpusBuilder builder(params);
    out.scheme = builder.scheme();
    out.disparity = generate_disparity(
        params.n_scs, params.n_disciplines, params.within, params.across, params.jitter, params.seed ^ 0x9e3779b97f4a7c15ULL);

    std::size_t serial = 0;
    const std::pair<Subpopulation, std::size_t> plan[] = {
        {Subpopulation::SingleAuthor, params.n_single_author},
        {Subpopulation::MultiAuthorSingleField, params.n_multi_author_single_field},
        {Subpopulation::MultiField, params.n_multi_field},
    };
    for (const auto& [kind, n] : plan) {
        for (std::size_t k = 0; k < n; ++k) {
            out.publications.push_back(builder.make(kind, ++serial));
        }
    }

    const auto values = out.disparity.values().values();
    const std::vector<double> matrix(values.begin(), values.end());
    for (const auto& pub : out.publications) {
        std::vector<std::vector<std::size_t>> refs;
        for (const auto& ref : pub.references) {
            auto& r = refs.emplace_back();
            for (auto sc : ref.scs) {
                r.push_back(sc.get());
            }
        }
        out.golden_lines.push_back(
            oracle::naive_score_line(pub.pub_id, oracle::naive_score(refs, matrix, params.n_scs)));
    }
    return out;
}

} // namespace idr
