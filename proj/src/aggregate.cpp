#include "idr/aggregate.hpp"

#include "idr/io.hpp"
#include "text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <unordered_map>

namespace idr {

using nlohmann::json;
using nlohmann::ordered_json;

// =================================================================================================
//      Input rows
// =================================================================================================

namespace {

template <typename Row, typename Parse>
std::vector<Row> read_json_lines(std::istream& source, Parse parse)
{
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::trim(line).empty()) {
            continue;
        }
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object()) {
            throw ParseError(line_no, "invalid JSON object");
        }
        try {
            rows.push_back(parse(rec));
        } catch (const json::exception& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return rows;
}

} // namespace

std::vector<PaperRecord> read_score_lines(std::istream& source)
{
    return read_json_lines<PaperRecord>(source, [](const json& rec) {
        PaperRecord p;
        p.pub_id = rec.at("pub_id").get<std::string>();
        p.variety = rec.at("variety").get<std::size_t>();
        p.balance = rec.at("balance").get<double>();
        p.avg_disparity = rec.at("avg_disparity").get<double>();
        p.rao_stirling = rec.at("rao_stirling").get<double>();
        p.integrated_diversity = rec.at("integrated_diversity").get<double>();
        return p;
    });
}

std::vector<LabelRow> read_label_lines(std::istream& source)
{
    return read_json_lines<LabelRow>(source, [](const json& rec) {
        LabelRow row;
        row.pub_id = rec.at("pub_id").get<std::string>();
        row.label = parse_subpopulation(rec.at("label").get<std::string>());
        row.n_authors = rec.at("n_authors").get<std::size_t>();
        row.n_fields = rec.at("n_fields").get<std::size_t>();
        row.n_disciplines = rec.at("n_disciplines").get<std::size_t>();
        if (auto it = rec.find("discipline"); it != rec.end() && !it->is_null()) {
            row.discipline = it->get<std::string>();
        }
        return row;
    });
}

std::vector<PaperRecord> join_labels(
    std::vector<PaperRecord> scores, std::span<const LabelRow> labels, const FieldScheme* scheme)
{
    std::unordered_map<std::string_view, const LabelRow*> by_id;
    for (const auto& row : labels) {
        by_id.emplace(row.pub_id, &row);
    }
    for (auto& p : scores) {
        auto it = by_id.find(p.pub_id);
        if (it == by_id.end()) {
            throw InputError("no label for publication '" + p.pub_id + "'");
        }
        const auto& row = *it->second;
        p.label = row.label;
        p.n_authors = row.n_authors;
        p.n_fields = row.n_fields;
        p.n_disciplines = row.n_disciplines;
        p.discipline = row.discipline;
        if (p.discipline && scheme) {
            auto id = scheme->find_discipline(*p.discipline);
            if (!id) {
                throw InputError("unknown discipline code '" + *p.discipline + "'");
            }
            p.discipline = scheme->discipline(*id).name;
        }
    }
    return scores;
}

std::vector<PaperRecord> make_paper_records(
    std::span<const ScoredPublication> scores, std::span<const Publication> pubs, const FieldScheme& scheme,
    bool discipline_names)
{
    std::unordered_map<std::string_view, const Publication*> by_id;
    for (const auto& pub : pubs) {
        by_id.emplace(pub.pub_id, &pub);
    }
    std::vector<PaperRecord> out;
    out.reserve(scores.size());
    for (const auto& s : scores) {
        auto it = by_id.find(s.pub_id);
        if (it == by_id.end()) {
            throw InputError("no publication for score '" + s.pub_id + "'");
        }
        auto profile = byline_profile(*it->second, scheme);
        PaperRecord p;
        p.pub_id = s.pub_id;
        p.variety = s.score.variety;
        p.balance = s.score.balance;
        p.avg_disparity = s.score.avg_disparity;
        p.rao_stirling = s.score.rao_stirling;
        p.integrated_diversity = s.score.integrated_diversity;
        p.label = classify(profile);
        p.n_authors = profile.n_authors;
        p.n_fields = profile.n_fields;
        p.n_disciplines = profile.n_disciplines;
        if (auto d = profile.single_discipline()) {
            p.discipline = discipline_names ? scheme.discipline(*d).name : scheme.discipline(*d).code;
        }
        out.push_back(std::move(p));
    }
    return out;
}

// =================================================================================================
//      Grouped averages
// =================================================================================================

namespace {

struct GroupKeyValue
{
    bool is_text = false;
    std::string text;
    bool capped = false;
    std::size_t number = 0;

    friend bool operator<(const GroupKeyValue& a, const GroupKeyValue& b)
    {
        if (a.is_text || b.is_text) {
            return a.text < b.text;
        }
        return std::tie(a.capped, a.number) < std::tie(b.capped, b.number);
    }

    std::string label() const
    {
        if (is_text) {
            return text;
        }
        return capped ? std::to_string(number) + " or more" : std::to_string(number);
    }
};

std::size_t require_count(const std::optional<std::size_t>& value, const char* attribute, const PaperRecord& p)
{
    if (!value) {
        throw InputError("publication '" + p.pub_id + "' lacks attribute '" + attribute + "'");
    }
    return *value;
}

GroupKeyValue numeric_key(std::size_t n, const std::optional<std::size_t>& cap)
{
    GroupKeyValue key;
    if (cap && n >= *cap) {
        key.capped = true;
        key.number = *cap;
    } else {
        key.number = n;
    }
    return key;
}

bool by_pub_id(const PaperRecord* a, const PaperRecord* b)
{
    return a->pub_id < b->pub_id;
}

SummaryRow summarize_group(std::vector<const PaperRecord*>& members)
{
    std::sort(members.begin(), members.end(), by_pub_id);
    SummaryRow row;
    row.n_papers = members.size();
    for (const auto* p : members) {
        row.avg_variety += static_cast<double>(p->variety);
        row.avg_balance += p->balance;
        row.avg_disparity += p->avg_disparity;
        row.avg_id += p->integrated_diversity;
    }
    const auto n = static_cast<double>(members.size());
    row.avg_variety /= n;
    row.avg_balance /= n;
    row.avg_disparity /= n;
    row.avg_id /= n;
    return row;
}

} // namespace

std::vector<SummaryRow> summarize_by(std::span<const PaperRecord> papers, const GroupSpec& spec)
{
    if (spec.bucket_cap && *spec.bucket_cap < 2) {
        throw InputError("bucket cap must be at least 2");
    }

    // block key is the field count for the nested spec, 0 otherwise
    std::map<std::size_t, std::map<GroupKeyValue, std::vector<const PaperRecord*>>> blocks;
    for (const auto& p : papers) {
        std::size_t block = 0;
        GroupKeyValue key;
        switch (spec.key) {
        case GroupKey::ByDiscipline:
            if (!p.discipline) {
                throw InputError("publication '" + p.pub_id + "' lacks attribute 'discipline'");
            }
            key.is_text = true;
            key.text = *p.discipline;
            break;
        case GroupKey::ByAuthorCount:
            key = numeric_key(require_count(p.n_authors, "n_authors", p), spec.bucket_cap);
            break;
        case GroupKey::ByFieldCount:
            key = numeric_key(require_count(p.n_fields, "n_fields", p), spec.bucket_cap);
            break;
        case GroupKey::ByDisciplineCount:
            key = numeric_key(require_count(p.n_disciplines, "n_disciplines", p), spec.bucket_cap);
            break;
        case GroupKey::ByFieldCountThenAuthorCount:
            block = require_count(p.n_fields, "n_fields", p);
            key = numeric_key(require_count(p.n_authors, "n_authors", p), spec.bucket_cap);
            break;
        }
        blocks[block][key].push_back(&p);
    }

    const bool blocked = spec.key == GroupKey::ByFieldCountThenAuthorCount;
    std::vector<SummaryRow> rows;
    for (auto& [block, groups] : blocks) {
        std::size_t block_total = 0;
        for (const auto& [key, members] : groups) {
            block_total += members.size();
        }
        for (auto& [key, members] : groups) {
            auto row = summarize_group(members);
            row.block = blocked ? "n_fields=" + std::to_string(block) : std::string();
            row.group_label = key.label();
            row.share = static_cast<double>(row.n_papers) / static_cast<double>(block_total);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string_view to_string(Direction dir)
{
    switch (dir) {
    case Direction::Up:
        return "up";
    case Direction::Down:
        return "down";
    case Direction::Equal:
        return "equal";
    }
    throw InvariantViolation("unknown direction");
}

TableComparison compare_tables(std::span<const SummaryRow> base, std::span<const SummaryRow> other)
{
    constexpr double tolerance = 1e-12;
    auto key_of = [](const SummaryRow& r) { return r.block.empty() ? r.group_label : r.block + "/" + r.group_label; };

    std::map<std::string, const SummaryRow*> other_by_key;
    for (const auto& r : other) {
        other_by_key.emplace(key_of(r), &r);
    }

    TableComparison cmp;
    std::map<std::string, bool> matched;
    for (const auto& b : base) {
        auto it = other_by_key.find(key_of(b));
        if (it == other_by_key.end()) {
            cmp.unmatched.push_back(key_of(b));
            continue;
        }
        matched[it->first] = true;
        const auto& o = *it->second;
        const std::pair<const char*, std::pair<double, double>> indicators[] = {
            {"variety", {b.avg_variety, o.avg_variety}},
            {"balance", {b.avg_balance, o.avg_balance}},
            {"disparity", {b.avg_disparity, o.avg_disparity}},
            {"id", {b.avg_id, o.avg_id}},
        };
        for (const auto& [name, values] : indicators) {
            double diff = values.second - values.first;
            Direction dir = Direction::Equal;
            if (diff > tolerance) {
                dir = Direction::Up;
            } else if (diff < -tolerance) {
                dir = Direction::Down;
            }
            cmp.arrows.push_back({b.block, b.group_label, name, dir});
        }
    }
    for (const auto& r : other) {
        if (!matched.count(key_of(r))) {
            cmp.unmatched.push_back(key_of(r));
        }
    }
    return cmp;
}

// =================================================================================================
//      Distributions
// =================================================================================================

IndicatorStats indicator_stats(std::span<const double> values)
{
    if (values.empty()) {
        throw InputError("statistics of an empty population");
    }
    const auto n = values.size();
    IndicatorStats s;
    for (double v : values) {
        s.average += v;
    }
    s.average /= static_cast<double>(n);

    double sq = 0.0;
    for (double v : values) {
        sq += (v - s.average) * (v - s.average);
    }
    s.st_dev = std::sqrt(sq / static_cast<double>(n));

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    return s;
}

namespace {

constexpr Subpopulation all_subpopulations[] = {
    Subpopulation::SingleAuthor, Subpopulation::MultiAuthorSingleField, Subpopulation::MultiField};

Subpopulation require_label(const PaperRecord& p)
{
    if (!p.label) {
        throw InputError("publication '" + p.pub_id + "' lacks attribute 'label'");
    }
    return *p.label;
}

/// Papers of one subpopulation, in pub_id order.
std::vector<const PaperRecord*> members_of(std::span<const PaperRecord> papers, Subpopulation label)
{
    std::vector<const PaperRecord*> out;
    for (const auto& p : papers) {
        if (require_label(p) == label) {
            out.push_back(&p);
        }
    }
    std::sort(out.begin(), out.end(), by_pub_id);
    return out;
}

std::vector<Histogram> shared_histograms(const std::vector<std::vector<double>>& groups, double bin_width)
{
    double upper = 1.0;
    for (const auto& g : groups) {
        for (double v : g) {
            upper = std::max(upper, v);
        }
    }
    std::vector<Histogram> out;
    for (const auto& g : groups) {
        out.push_back(id_histogram(g, bin_width, upper));
    }
    return out;
}

} // namespace

DescriptiveStats descriptive_stats(std::span<const PaperRecord> papers)
{
    DescriptiveStats out;
    for (auto label : all_subpopulations) {
        auto members = members_of(papers, label);
        if (members.empty()) {
            out.omitted.push_back(label);
            continue;
        }
        std::vector<double> v, b, d, id;
        for (const auto* p : members) {
            v.push_back(static_cast<double>(p->variety));
            b.push_back(p->balance);
            d.push_back(p->avg_disparity);
            id.push_back(p->integrated_diversity);
        }
        out.rows.push_back(
            {label, members.size(), indicator_stats(v), indicator_stats(b), indicator_stats(d), indicator_stats(id)});
    }
    return out;
}

Histogram id_histogram(std::span<const double> ids, double bin_width, double upper)
{
    if (!(bin_width > 0.0)) {
        throw InputError("bin width must be positive");
    }
    Histogram h;
    const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((upper - 1.0) / bin_width)));
    h.bin_edges.reserve(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k) {
        h.bin_edges.push_back(1.0 + static_cast<double>(k) * bin_width);
    }
    h.counts.assign(bins, 0);
    h.population = ids.size();
    for (double v : ids) {
        if (v == 1.0) {
            ++h.unity_count;
            continue;
        }
        auto k = static_cast<std::size_t>(std::max(0.0, std::floor((v - 1.0) / bin_width)));
        ++h.counts[std::min(k, bins - 1)];
    }
    if (h.population > 0) {
        const auto n = static_cast<double>(h.population);
        h.share_at_unity = static_cast<double>(h.unity_count) / n;
        for (auto c : h.counts) {
            h.shares.push_back(static_cast<double>(c) / n);
        }
    } else {
        h.shares.assign(bins, 0.0);
    }
    return h;
}

std::vector<std::pair<Subpopulation, Histogram>> id_distribution(std::span<const PaperRecord> papers, double bin_width)
{
    std::vector<Subpopulation> labels;
    std::vector<std::vector<double>> groups;
    for (auto label : all_subpopulations) {
        auto members = members_of(papers, label);
        if (members.empty()) {
            continue;
        }
        labels.push_back(label);
        auto& ids = groups.emplace_back();
        for (const auto* p : members) {
            ids.push_back(p->integrated_diversity);
        }
    }
    auto hists = shared_histograms(groups, bin_width);
    std::vector<std::pair<Subpopulation, Histogram>> out;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        out.emplace_back(labels[k], std::move(hists[k]));
    }
    return out;
}

std::vector<RankedPaper> top_k_by_id(std::span<const PaperRecord> papers, std::size_t k)
{
    if (k == 0) {
        throw InputError("top-k needs k >= 1");
    }
    std::vector<RankedPaper> ranked;
    ranked.reserve(papers.size());
    for (const auto& p : papers) {
        ranked.push_back({p.pub_id, p.integrated_diversity, p.variety});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedPaper& a, const RankedPaper& b) {
        if (a.integrated_diversity != b.integrated_diversity) {
            return a.integrated_diversity > b.integrated_diversity;
        }
        if (a.variety != b.variety) {
            return a.variety > b.variety;
        }
        return a.pub_id < b.pub_id;
    });
    if (ranked.size() > k) {
        ranked.resize(k);
    }
    return ranked;
}

// =================================================================================================
//      Report
// =================================================================================================

namespace {

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(text);
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

class ReportWriter
{
public:
    explicit ReportWriter(const Provenance& prov)
        : header_(
              "# corpus_digest=" + prov.corpus_digest + " matrix_digest=" + prov.matrix_digest +
              " version=" + prov.version + " st_dev=population\n")
        , provenance_{
              {"corpus_digest", prov.corpus_digest},
              {"matrix_digest", prov.matrix_digest},
              {"version", prov.version},
              {"st_dev", "population"}}
    {
    }

    void add(const std::string& name, const std::string& csv_body, ordered_json body)
    {
        files_[name + ".csv"] = header_ + csv_body;
        ordered_json doc;
        doc["provenance"] = provenance_;
        for (auto& [k, v] : body.items()) {
            doc[k] = std::move(v);
        }
        files_[name + ".json"] = doc.dump(2) + "\n";
    }

    std::map<std::string, std::string> take() && { return std::move(files_); }

private:
    std::string header_;
    ordered_json provenance_;
    std::map<std::string, std::string> files_;
};

void add_summary(ReportWriter& w, const std::string& name, std::span<const SummaryRow> rows)
{
    const bool blocked = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.block.empty(); });
    std::string csv = blocked ? "block," : "";
    csv += "group,no_papers,share_of_papers,av_variety,av_balance,av_disparity,av_id\n";
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        if (blocked) {
            csv += csv_field(r.block) + ",";
        }
        csv += csv_field(r.group_label) + "," + std::to_string(r.n_papers) + "," + format_real(r.share) + "," +
               format_real(r.avg_variety) + "," + format_real(r.avg_balance) + "," + format_real(r.avg_disparity) +
               "," + format_real(r.avg_id) + "\n";
        ordered_json j;
        if (blocked) {
            j["block"] = r.block;
        }
        j["group"] = r.group_label;
        j["no_papers"] = r.n_papers;
        j["share_of_papers"] = r.share;
        j["av_variety"] = r.avg_variety;
        j["av_balance"] = r.avg_balance;
        j["av_disparity"] = r.avg_disparity;
        j["av_id"] = r.avg_id;
        arr.push_back(std::move(j));
    }
    w.add(name, csv, ordered_json{{"rows", std::move(arr)}});
}

void add_comparison(ReportWriter& w, const std::string& name, const TableComparison& cmp)
{
    std::string csv = "block,group,indicator,direction\n";
    ordered_json arrows = ordered_json::array();
    for (const auto& a : cmp.arrows) {
        csv += csv_field(a.block) + "," + csv_field(a.group_label) + "," + a.indicator + "," +
               std::string(to_string(a.direction)) + "\n";
        arrows.push_back(
            {{"block", a.block}, {"group", a.group_label}, {"indicator", a.indicator},
             {"direction", to_string(a.direction)}});
    }
    for (const auto& u : cmp.unmatched) {
        csv += "," + csv_field(u) + ",,unmatched\n";
    }
    w.add(name, csv, ordered_json{{"arrows", std::move(arrows)}, {"unmatched", cmp.unmatched}});
}

void add_stats(ReportWriter& w, const std::string& name, const DescriptiveStats& stats)
{
    std::string csv = "subpopulation,indicator,no_papers,average,median,st_dev,min,max\n";
    ordered_json arr = ordered_json::array();
    for (const auto& row : stats.rows) {
        const std::pair<const char*, const IndicatorStats*> indicators[] = {
            {"variety", &row.variety}, {"balance", &row.balance}, {"disparity", &row.disparity}, {"id", &row.id}};
        for (const auto& [indicator, s] : indicators) {
            csv += std::string(to_string(row.label)) + "," + indicator + "," + std::to_string(row.n_papers) + "," +
                   format_real(s->average) + "," + format_real(s->median) + "," + format_real(s->st_dev) + "," +
                   format_real(s->min) + "," + format_real(s->max) + "\n";
            arr.push_back(
                {{"subpopulation", to_string(row.label)},
                 {"indicator", indicator},
                 {"no_papers", row.n_papers},
                 {"average", s->average},
                 {"median", s->median},
                 {"st_dev", s->st_dev},
                 {"min", s->min},
                 {"max", s->max}});
        }
    }
    ordered_json omitted = ordered_json::array();
    for (auto label : stats.omitted) {
        omitted.push_back(to_string(label));
    }
    w.add(name, csv, ordered_json{{"rows", std::move(arr)}, {"omitted", std::move(omitted)}});
}

void add_histograms(
    ReportWriter& w, const std::string& name, const std::vector<std::pair<std::string, Histogram>>& hists)
{
    std::string csv = "group,bin,lower,upper,count,share\n";
    ordered_json arr = ordered_json::array();
    for (const auto& [group, h] : hists) {
        csv += csv_field(group) + ",unity,1,1," + std::to_string(h.unity_count) + "," + format_real(h.share_at_unity) +
               "\n";
        for (std::size_t k = 0; k < h.counts.size(); ++k) {
            csv += csv_field(group) + "," + std::to_string(k) + "," + format_real(h.bin_edges[k]) + "," +
                   format_real(h.bin_edges[k + 1]) + "," + std::to_string(h.counts[k]) + "," +
                   format_real(h.shares[k]) + "\n";
        }
        arr.push_back(
            {{"group", group},
             {"population", h.population},
             {"unity_count", h.unity_count},
             {"share_at_unity", h.share_at_unity},
             {"bin_edges", h.bin_edges},
             {"counts", h.counts},
             {"shares", h.shares}});
    }
    w.add(name, csv, ordered_json{{"histograms", std::move(arr)}});
}

void add_ranking(ReportWriter& w, const std::string& name, std::span<const RankedPaper> ranked)
{
    std::string csv = "rank,pub_id,id,variety\n";
    ordered_json arr = ordered_json::array();
    for (std::size_t k = 0; k < ranked.size(); ++k) {
        const auto& r = ranked[k];
        csv += std::to_string(k + 1) + "," + csv_field(r.pub_id) + "," + format_real(r.integrated_diversity) + "," +
               std::to_string(r.variety) + "\n";
        arr.push_back({{"rank", k + 1}, {"pub_id", r.pub_id}, {"id", r.integrated_diversity}, {"variety", r.variety}});
    }
    w.add(name, csv, ordered_json{{"rows", std::move(arr)}});
}

std::vector<PaperRecord> subset(std::span<const PaperRecord> papers, std::initializer_list<Subpopulation> labels)
{
    std::vector<PaperRecord> out;
    for (const auto& p : papers) {
        auto label = require_label(p);
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
            out.push_back(p);
        }
    }
    return out;
}

} // namespace

std::map<std::string, std::string> render_report(
    std::span<const PaperRecord> papers, const ReportOptions& options, const Provenance& provenance)
{
    if (papers.empty()) {
        throw InputError("empty input");
    }

    const auto single = subset(papers, {Subpopulation::SingleAuthor});
    const auto multi_single = subset(papers, {Subpopulation::MultiAuthorSingleField});
    const auto single_field = subset(papers, {Subpopulation::SingleAuthor, Subpopulation::MultiAuthorSingleField});
    const auto multi_field = subset(papers, {Subpopulation::MultiField});

    ReportWriter w(provenance);

    auto single_by_discipline = summarize_by(single, {GroupKey::ByDiscipline, std::nullopt});
    auto multi_single_by_discipline = summarize_by(multi_single, {GroupKey::ByDiscipline, std::nullopt});
    add_summary(w, "single_author_by_discipline", single_by_discipline);
    add_summary(w, "multi_author_single_field_by_discipline", multi_single_by_discipline);
    add_comparison(
        w, "multi_author_single_field_vs_single_author",
        compare_tables(single_by_discipline, multi_single_by_discipline));

    add_summary(
        w, "single_field_by_author_count", summarize_by(single_field, {GroupKey::ByAuthorCount, options.author_cap}));
    add_summary(
        w, "multi_field_by_field_count", summarize_by(multi_field, {GroupKey::ByFieldCount, options.field_cap}));
    add_summary(
        w, "multi_field_by_field_then_author_count",
        summarize_by(multi_field, {GroupKey::ByFieldCountThenAuthorCount, std::nullopt}));
    add_summary(
        w, "multi_field_by_discipline_count",
        summarize_by(multi_field, {GroupKey::ByDisciplineCount, options.discipline_cap}));

    add_stats(w, "descriptive_stats", descriptive_stats(papers));
    add_ranking(w, "top_single_author_by_id", top_k_by_id(single, options.top_k));

    std::vector<std::pair<std::string, Histogram>> by_label;
    for (auto& [label, h] : id_distribution(papers, options.bin_width)) {
        by_label.emplace_back(std::string(to_string(label)), std::move(h));
    }
    add_histograms(w, "id_distribution_by_subpopulation", by_label);

    // multi-field papers by number of fields, sharing one set of bin edges
    std::map<GroupKeyValue, std::vector<double>> by_fields;
    for (const auto& p : multi_field) {
        by_fields[numeric_key(require_count(p.n_fields, "n_fields", p), options.field_cap)].push_back(
            p.integrated_diversity);
    }
    std::vector<std::string> names;
    std::vector<std::vector<double>> groups;
    for (auto& [key, ids] : by_fields) {
        names.push_back("n_fields=" + key.label());
        groups.push_back(std::move(ids));
    }
    auto hists = shared_histograms(groups, options.bin_width);
    std::vector<std::pair<std::string, Histogram>> by_field_count;
    for (std::size_t k = 0; k < names.size(); ++k) {
        by_field_count.emplace_back(names[k], std::move(hists[k]));
    }
    add_histograms(w, "id_distribution_by_field_count", by_field_count);

    return std::move(w).take();
}

std::map<std::string, std::string> render_summary(
    const std::string& name, std::span<const SummaryRow> rows, const Provenance& provenance)
{
    ReportWriter w(provenance);
    add_summary(w, name, rows);
    return std::move(w).take();
}

} // namespace idr
