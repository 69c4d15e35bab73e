#include "idr/corpus.hpp"

#include "text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_set>

namespace idr {

using nlohmann::json;

// =================================================================================================
//      Field scheme
// =================================================================================================

namespace {

template <typename Item>
std::unordered_map<std::string, std::uint32_t> index_codes(const std::vector<Item>& items, std::string_view what)
{
    std::unordered_map<std::string, std::uint32_t> index;
    index.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].code.empty()) {
            throw InputError("empty " + std::string(what) + " code");
        }
        if (!index.emplace(items[i].code, static_cast<std::uint32_t>(i)).second) {
            throw InputError("duplicate " + std::string(what) + " code '" + items[i].code + "'");
        }
    }
    return index;
}

template <typename Id>
std::optional<Id> lookup(const std::unordered_map<std::string, std::uint32_t>& index, std::string_view code)
{
    auto it = index.find(std::string(code));
    if (it == index.end()) {
        return std::nullopt;
    }
    return Id(it->second);
}

} // namespace

FieldScheme::FieldScheme(std::vector<Category> scs, std::vector<Field> fields, std::vector<Category> disciplines)
    : scs_(std::move(scs))
    , fields_(std::move(fields))
    , disciplines_(std::move(disciplines))
{
    sc_index_ = index_codes(scs_, "subject category");
    field_index_ = index_codes(fields_, "field");
    discipline_index_ = index_codes(disciplines_, "discipline");
    for (const auto& f : fields_) {
        if (f.discipline.get() >= disciplines_.size()) {
            throw InputError("field '" + f.code + "' refers to a missing discipline");
        }
    }
}

std::optional<ScId> FieldScheme::find_sc(std::string_view code) const
{
    return lookup<ScId>(sc_index_, code);
}

std::optional<FieldId> FieldScheme::find_field(std::string_view code) const
{
    return lookup<FieldId>(field_index_, code);
}

std::optional<DisciplineId> FieldScheme::find_discipline(std::string_view code) const
{
    return lookup<DisciplineId>(discipline_index_, code);
}

FieldScheme FieldScheme::with_scs(std::vector<Category> scs) const
{
    return FieldScheme(std::move(scs), fields_, disciplines_);
}

FieldScheme load_field_scheme(std::istream& source)
{
    enum class Section { None, Disciplines, Fields, Scs };

    struct PendingField
    {
        Field field;
        std::string discipline_code;
        std::size_t line;
    };

    std::vector<Category> disciplines;
    std::vector<Category> scs;
    std::vector<PendingField> pending;

    Section section = Section::None;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        detail::strip_cr(line);
        auto trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        if (trimmed.front() == '[') {
            if (trimmed == "[disciplines]") {
                section = Section::Disciplines;
            } else if (trimmed == "[fields]") {
                section = Section::Fields;
            } else if (trimmed == "[scs]") {
                section = Section::Scs;
            } else {
                throw ParseError(line_no, "unknown section " + std::string(trimmed));
            }
            continue;
        }

        auto cols = detail::split(line, '\t');
        switch (section) {
        case Section::None:
            throw ParseError(line_no, "row outside of a section");
        case Section::Disciplines:
        case Section::Scs:
            if (cols.size() != 2 || cols[0].empty()) {
                throw ParseError(line_no, "expected code<TAB>name");
            }
            (section == Section::Scs ? scs : disciplines).push_back({std::string(cols[0]), std::string(cols[1])});
            break;
        case Section::Fields:
            if (cols.size() != 3 || cols[0].empty() || cols[2].empty()) {
                throw ParseError(line_no, "expected code<TAB>name<TAB>discipline_code");
            }
            pending.push_back({{std::string(cols[0]), std::string(cols[1]), DisciplineId{}}, std::string(cols[2]), line_no});
            break;
        }
    }

    std::unordered_map<std::string, std::uint32_t> discipline_index;
    for (std::size_t i = 0; i < disciplines.size(); ++i) {
        discipline_index.emplace(disciplines[i].code, static_cast<std::uint32_t>(i));
    }

    std::vector<Field> fields;
    fields.reserve(pending.size());
    for (auto& p : pending) {
        auto it = discipline_index.find(p.discipline_code);
        if (it == discipline_index.end()) {
            throw InputError(
                "line " + std::to_string(p.line) + ": field '" + p.field.code + "' names unknown discipline '" +
                p.discipline_code + "'");
        }
        p.field.discipline = DisciplineId(it->second);
        fields.push_back(std::move(p.field));
    }

    return FieldScheme(std::move(scs), std::move(fields), std::move(disciplines));
}

std::vector<Category> load_sc_registry(std::istream& source)
{
    std::vector<Category> scs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        detail::strip_cr(line);
        auto trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        auto cols = detail::split(line, '\t');
        if (cols.size() != 2 || cols[0].empty()) {
            throw ParseError(line_no, "expected code<TAB>name");
        }
        scs.push_back({std::string(cols[0]), std::string(cols[1])});
    }
    return scs;
}

void write_field_scheme(std::ostream& sink, const FieldScheme& scheme)
{
    sink << "[disciplines]\n";
    for (const auto& d : scheme.disciplines()) {
        sink << d.code << '\t' << d.name << '\n';
    }
    sink << "[fields]\n";
    for (const auto& f : scheme.fields()) {
        sink << f.code << '\t' << f.name << '\t' << scheme.discipline(f.discipline).code << '\n';
    }
}

void write_sc_registry(std::ostream& sink, const FieldScheme& scheme)
{
    for (const auto& sc : scheme.scs()) {
        sink << sc.code << '\t' << sc.name << '\n';
    }
}

// =================================================================================================
//      Publications
// =================================================================================================

DocType DocType::parse(std::string_view text)
{
    if (text == "article") {
        return {DocKind::Article, {}};
    }
    if (text == "proceedings") {
        return {DocKind::ProceedingsPaper, {}};
    }
    if (text == "chapter") {
        return {DocKind::BookChapter, {}};
    }
    return {DocKind::Other, std::string(text)};
}

std::string DocType::str() const
{
    switch (kind) {
    case DocKind::Article:
        return "article";
    case DocKind::ProceedingsPaper:
        return "proceedings";
    case DocKind::BookChapter:
        return "chapter";
    case DocKind::Other:
        break;
    }
    return label;
}

JournalMap load_journal_map(std::istream& source, const FieldScheme& scheme)
{
    JournalMap map;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::trim(line).empty()) {
            continue;
        }
        auto cols = detail::split(line, '\t');
        if (cols.size() != 2 || cols[0].empty()) {
            throw ParseError(line_no, "expected journal<TAB>sc_codes");
        }
        std::vector<ScId> ids;
        for (auto code : detail::split(cols[1], ';')) {
            if (code.empty()) {
                continue;
            }
            auto id = scheme.find_sc(code);
            if (!id) {
                throw ParseError(line_no, "unknown SC code '" + std::string(code) + "'");
            }
            ids.push_back(*id);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (!map.emplace(std::string(cols[0]), std::move(ids)).second) {
            throw ParseError(line_no, "duplicate journal '" + std::string(cols[0]) + "'");
        }
    }
    return map;
}

namespace {

struct RecordReject
{
    std::string reason;
};

const json& require(const json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw RecordReject{std::string("missing key '") + key + "'"};
    }
    return *it;
}

/// Returns std::nullopt for a reference without any indexed category.
std::optional<Reference> parse_reference(const json& ref, const FieldScheme& scheme, const JournalMap* journals)
{
    Reference out;
    if (ref.is_string()) {
        if (!journals) {
            throw RecordReject{"journal reference '" + ref.get<std::string>() + "' but no journal map loaded"};
        }
        auto it = journals->find(ref.get<std::string>());
        if (it == journals->end() || it->second.empty()) {
            return std::nullopt;
        }
        out.scs = it->second;
        return out;
    }
    if (!ref.is_array()) {
        throw RecordReject{"reference must be an array of SC codes"};
    }
    for (const auto& code : ref) {
        if (!code.is_string()) {
            throw RecordReject{"SC code must be a string"};
        }
        auto id = scheme.find_sc(code.get_ref<const std::string&>());
        if (!id) {
            throw RecordReject{"unknown SC code '" + code.get<std::string>() + "'"};
        }
        out.scs.push_back(*id);
    }
    if (out.scs.empty()) {
        return std::nullopt;
    }
    std::sort(out.scs.begin(), out.scs.end());
    out.scs.erase(std::unique(out.scs.begin(), out.scs.end()), out.scs.end());
    return out;
}

Publication parse_record(const json& rec, const FieldScheme& scheme, const JournalMap* journals, std::size_t& dropped)
{
    if (!rec.is_object()) {
        throw RecordReject{"record is not a JSON object"};
    }
    Publication pub;

    const auto& id = require(rec, "pub_id");
    if (!id.is_string() || id.get_ref<const std::string&>().empty()) {
        throw RecordReject{"pub_id must be a non-empty string"};
    }
    pub.pub_id = id.get<std::string>();

    const auto& year = require(rec, "year");
    if (!year.is_number_integer()) {
        throw RecordReject{"year must be an integer"};
    }
    pub.year = year.get<std::int64_t>();

    const auto& doc_type = require(rec, "doc_type");
    if (!doc_type.is_string()) {
        throw RecordReject{"doc_type must be a string"};
    }
    pub.doc_type = DocType::parse(doc_type.get_ref<const std::string&>());

    const auto& authors = require(rec, "authors");
    if (!authors.is_array() || authors.empty()) {
        throw RecordReject{"authors must be a non-empty array"};
    }
    for (const auto& a : authors) {
        if (!a.is_object()) {
            throw RecordReject{"author must be an object"};
        }
        const auto& aid = require(a, "id");
        if (!aid.is_string()) {
            throw RecordReject{"author id must be a string"};
        }
        AuthorRecord author{aid.get<std::string>(), std::nullopt};
        const auto& field = require(a, "field");
        if (field.is_string()) {
            author.field = scheme.find_field(field.get_ref<const std::string&>());
            if (!author.field) {
                throw RecordReject{"unknown field code '" + field.get<std::string>() + "'"};
            }
        } else if (!field.is_null()) {
            throw RecordReject{"author field must be a string or null"};
        }
        pub.authors.push_back(std::move(author));
    }

    const auto& refs = require(rec, "references");
    if (!refs.is_array()) {
        throw RecordReject{"references must be an array"};
    }
    for (const auto& r : refs) {
        if (auto ref = parse_reference(r, scheme, journals)) {
            pub.references.push_back(std::move(*ref));
        } else {
            ++dropped;
        }
    }
    return pub;
}

} // namespace

ParseResult parse_corpus(std::istream& source, const FieldScheme& scheme, const JournalMap* journals)
{
    ParseResult result;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::trim(line).empty()) {
            continue;
        }
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded()) {
            result.errors.push_back({line_no, "invalid JSON"});
            continue;
        }
        try {
            std::size_t dropped = 0;
            auto pub = parse_record(rec, scheme, journals, dropped);
            if (!seen.insert(pub.pub_id).second) {
                throw RecordReject{"duplicate pub_id '" + pub.pub_id + "'"};
            }
            if (dropped > 0) {
                result.notes.push_back({line_no, "dropped " + std::to_string(dropped) + " unindexed reference(s)"});
                result.dropped_references += dropped;
            }
            result.publications.push_back(std::move(pub));
        } catch (const RecordReject& e) {
            result.errors.push_back({line_no, e.reason});
        }
    }
    return result;
}

std::string to_json_line(const Publication& pub, const FieldScheme& scheme)
{
    json authors = json::array();
    for (const auto& a : pub.authors) {
        json field = a.field ? json(scheme.field(*a.field).code) : json(nullptr);
        authors.push_back({{"id", a.author_id}, {"field", std::move(field)}});
    }
    json refs = json::array();
    for (const auto& r : pub.references) {
        json codes = json::array();
        for (auto sc : r.scs) {
            codes.push_back(scheme.sc(sc).code);
        }
        refs.push_back(std::move(codes));
    }
    json rec = json::object();
    rec["pub_id"] = pub.pub_id;
    rec["year"] = pub.year;
    rec["doc_type"] = pub.doc_type.str();
    rec["authors"] = std::move(authors);
    rec["references"] = std::move(refs);
    return rec.dump();
}

void write_corpus(std::ostream& sink, std::span<const Publication> pubs, const FieldScheme& scheme)
{
    for (const auto& pub : pubs) {
        sink << to_json_line(pub, scheme) << '\n';
    }
}

// =================================================================================================
//      Filters
// =================================================================================================

FilterConfig FilterConfig::parse(std::string_view text)
{
    auto parse_flag = [](std::string_view key, std::string_view value) {
        if (value == "on" || value == "true" || value == "1") {
            return true;
        }
        if (value == "off" || value == "false" || value == "0") {
            return false;
        }
        throw InputError("filter '" + std::string(key) + "' expects on/off, got '" + std::string(value) + "'");
    };

    FilterConfig cfg;
    for (auto item : detail::split(text, ',')) {
        item = detail::trim(item);
        if (item.empty()) {
            continue;
        }
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("filter entry '" + std::string(item) + "' is not key=value");
        }
        auto key = item.substr(0, eq);
        auto value = item.substr(eq + 1);
        if (key == "doc_types") {
            cfg.allowed_doc_types.clear();
            for (auto t : detail::split(value, '|')) {
                if (!t.empty()) {
                    cfg.allowed_doc_types.push_back(DocType::parse(t));
                }
            }
            if (cfg.allowed_doc_types.empty()) {
                throw InputError("filter doc_types must name at least one type");
            }
        } else if (key == "references") {
            cfg.require_references = parse_flag(key, value);
        } else if (key == "classified") {
            cfg.require_all_authors_classified = parse_flag(key, value);
        } else {
            throw InputError("unknown filter '" + std::string(key) + "'");
        }
    }
    return cfg;
}

FilterResult apply_filters(std::span<const Publication> pubs, const FilterConfig& cfg)
{
    FilterResult result;
    auto drop = [&](std::string_view reason) { ++result.exclusions[std::string(reason)]; };

    for (const auto& pub : pubs) {
        auto allowed = std::find(cfg.allowed_doc_types.begin(), cfg.allowed_doc_types.end(), pub.doc_type);
        if (allowed == cfg.allowed_doc_types.end()) {
            drop(exclusion::doc_type);
            continue;
        }
        if (cfg.require_all_authors_classified &&
            std::any_of(pub.authors.begin(), pub.authors.end(), [](const auto& a) { return !a.field; })) {
            drop(exclusion::unclassified_author);
            continue;
        }
        if (cfg.require_references && pub.references.empty()) {
            drop(exclusion::no_references);
            continue;
        }
        result.kept.push_back(pub);
    }
    return result;
}

// =================================================================================================
//      Reference counts
// =================================================================================================

ScCountVector::ScCountVector(std::vector<Entry> entries)
    : entries_(std::move(entries))
{
    std::sort(entries_.begin(), entries_.end());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].second == 0) {
            throw InputError("zero count for SC index " + std::to_string(entries_[i].first.get()));
        }
        if (i > 0 && entries_[i].first == entries_[i - 1].first) {
            throw InputError("duplicate SC index " + std::to_string(entries_[i].first.get()));
        }
        total_ += entries_[i].second;
    }
}

ScCountVector reference_sc_counts(const Publication& pub)
{
    if (pub.references.empty()) {
        throw InputError("publication '" + pub.pub_id + "' has no references");
    }
    std::map<ScId, std::uint64_t> counts;
    for (const auto& ref : pub.references) {
        for (auto sc : ref.scs) {
            ++counts[sc];
        }
    }
    return ScCountVector(std::vector<ScCountVector::Entry>(counts.begin(), counts.end()));
}

} // namespace idr
