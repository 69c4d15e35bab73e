#include "idr/classify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <unordered_map>

namespace idr {

std::string_view to_string(Subpopulation label)
{
    switch (label) {
    case Subpopulation::SingleAuthor:
        return "single_author";
    case Subpopulation::MultiAuthorSingleField:
        return "multi_author_single_field";
    case Subpopulation::MultiField:
        return "multi_field";
    }
    throw InvariantViolation("unknown subpopulation");
}

Subpopulation parse_subpopulation(std::string_view text)
{
    for (auto label : {Subpopulation::SingleAuthor, Subpopulation::MultiAuthorSingleField, Subpopulation::MultiField}) {
        if (to_string(label) == text) {
            return label;
        }
    }
    throw InputError("unknown subpopulation label '" + std::string(text) + "'");
}

BylineProfile byline_profile(const Publication& pub, const FieldScheme& scheme)
{
    if (pub.authors.empty()) {
        throw InputError("publication '" + pub.pub_id + "' has no authors");
    }

    std::unordered_map<std::string_view, FieldId> people;
    BylineProfile profile;
    for (const auto& author : pub.authors) {
        if (!author.field) {
            throw InputError("publication '" + pub.pub_id + "': author '" + author.author_id + "' is unclassified");
        }
        // a repeated author_id keeps the field of its first listing
        if (people.emplace(author.author_id, *author.field).second) {
            profile.field_ids.push_back(*author.field);
        }
    }

    std::sort(profile.field_ids.begin(), profile.field_ids.end());
    profile.field_ids.erase(std::unique(profile.field_ids.begin(), profile.field_ids.end()), profile.field_ids.end());
    for (auto f : profile.field_ids) {
        profile.discipline_ids.push_back(scheme.discipline_of(f));
    }
    std::sort(profile.discipline_ids.begin(), profile.discipline_ids.end());
    profile.discipline_ids.erase(
        std::unique(profile.discipline_ids.begin(), profile.discipline_ids.end()), profile.discipline_ids.end());

    profile.n_authors = people.size();
    profile.n_fields = profile.field_ids.size();
    profile.n_disciplines = profile.discipline_ids.size();
    return profile;
}

Subpopulation classify(const BylineProfile& profile)
{
    if (profile.n_fields >= 2) {
        return Subpopulation::MultiField;
    }
    if (profile.n_authors <= 1) {
        return Subpopulation::SingleAuthor;
    }
    return Subpopulation::MultiAuthorSingleField;
}

std::string classification_json_line(const std::string& pub_id, const BylineProfile& profile, const FieldScheme& scheme)
{
    nlohmann::ordered_json rec;
    rec["pub_id"] = pub_id;
    rec["label"] = to_string(classify(profile));
    rec["n_authors"] = profile.n_authors;
    rec["n_fields"] = profile.n_fields;
    rec["n_disciplines"] = profile.n_disciplines;
    if (auto d = profile.single_discipline()) {
        rec["discipline"] = scheme.discipline(*d).code;
    } else {
        rec["discipline"] = nullptr;
    }
    return rec.dump();
}

} // namespace idr
