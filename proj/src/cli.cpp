#include "idr/cli.hpp"

#include "idr/aggregate.hpp"
#include "idr/classify.hpp"
#include "idr/corpus.hpp"
#include "idr/disparity.hpp"
#include "idr/diversity.hpp"
#include "idr/io.hpp"
#include "idr/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef IDR_VERSION
#define IDR_VERSION "0.0.0"
#endif

namespace idr::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig
{
    std::string corpus;
    std::string scheme;
    std::string sc_registry;
    std::string journal_map;
    std::string matrix;
    std::string citations;
    std::string scores;
    std::string labels;
    std::string out;
    std::string filters;
    std::string group_by;
    double bin_width = 0.25;
    std::size_t top_k = 5;
    std::size_t threads = 0;
    SynthParams synth;
};

// -------------------------------------------------------------------------
//     Loading helpers
// -------------------------------------------------------------------------

FieldScheme load_scheme(const RunConfig& cfg)
{
    std::istringstream scheme_text(read_file(cfg.scheme));
    auto scheme = load_field_scheme(scheme_text);
    if (!cfg.sc_registry.empty()) {
        std::istringstream registry(read_file(cfg.sc_registry));
        scheme = scheme.with_scs(load_sc_registry(registry));
    }
    if (scheme.scs().empty()) {
        throw InputError("no subject category registry: pass --sc-registry or add an [scs] section");
    }
    return scheme;
}

FieldScheme load_sc_only_scheme(const RunConfig& cfg)
{
    if (!cfg.scheme.empty()) {
        return load_scheme(cfg);
    }
    if (cfg.sc_registry.empty()) {
        throw InputError("--sc-registry is required");
    }
    std::istringstream registry(read_file(cfg.sc_registry));
    return FieldScheme(load_sc_registry(registry), {}, {});
}

void report_record_errors(const ParseResult& parsed, std::ostream& err)
{
    for (const auto& e : parsed.errors) {
        err << e.line << '\t' << e.reason << '\n';
    }
    for (const auto& n : parsed.notes) {
        err << n.line << '\t' << n.reason << '\n';
    }
}

ParseResult parse_corpus_file(const RunConfig& cfg, const FieldScheme& scheme)
{
    std::optional<JournalMap> journals;
    if (!cfg.journal_map.empty()) {
        std::istringstream text(read_file(cfg.journal_map));
        journals = load_journal_map(text, scheme);
    }
    std::istringstream corpus(read_file(cfg.corpus));
    return parse_corpus(corpus, scheme, journals ? &*journals : nullptr);
}

/// Corpus for the downstream stages, which refuse records that failed to parse.
std::vector<Publication> load_clean_corpus(const RunConfig& cfg, const FieldScheme& scheme, std::ostream& err)
{
    auto parsed = parse_corpus_file(cfg, scheme);
    report_record_errors(parsed, err);
    if (!parsed.errors.empty()) {
        throw InputError(std::to_string(parsed.errors.size()) + " invalid record(s) in corpus; run validate");
    }
    return std::move(parsed.publications);
}

DisparityMatrix load_matrix_file(const std::string& path)
{
    std::istringstream text(read_file(path));
    return load_matrix(text);
}

std::string digest_or_none(const std::string& path)
{
    return path.empty() ? std::string("none") : sha256_hex(read_file(path));
}

GroupSpec parse_group_by(const std::string& text)
{
    auto colon = text.find(':');
    auto key = text.substr(0, colon);
    GroupSpec spec;
    if (key == "discipline") {
        spec.key = GroupKey::ByDiscipline;
    } else if (key == "authors") {
        spec.key = GroupKey::ByAuthorCount;
    } else if (key == "fields") {
        spec.key = GroupKey::ByFieldCount;
    } else if (key == "disciplines") {
        spec.key = GroupKey::ByDisciplineCount;
    } else if (key == "fields-then-authors") {
        spec.key = GroupKey::ByFieldCountThenAuthorCount;
    } else {
        throw InputError("unknown --group-by key '" + key + "'");
    }
    if (colon != std::string::npos) {
        try {
            spec.bucket_cap = std::stoul(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw InputError("invalid --group-by cap in '" + text + "'");
        }
    }
    return spec;
}

// -------------------------------------------------------------------------
//     Subcommands
// -------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto scheme = load_scheme(cfg);
    auto parsed = parse_corpus_file(cfg, scheme);
    report_record_errors(parsed, err);

    nlohmann::ordered_json summary;
    summary["records"] = parsed.publications.size();
    summary["errors"] = parsed.errors.size();
    summary["dropped_references"] = parsed.dropped_references;
    if (cfg.out.empty()) {
        out << summary.dump() << '\n';
    } else {
        write_file_atomic(cfg.out, summary.dump() + "\n");
    }
    return parsed.errors.empty() ? exit_ok : exit_input_error;
}

int cmd_filter(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto scheme = load_scheme(cfg);
    auto pubs = load_clean_corpus(cfg, scheme, err);
    auto filter = FilterConfig::parse(cfg.filters);
    auto result = apply_filters(pubs, filter);

    std::ostringstream kept;
    write_corpus(kept, result.kept, scheme);
    nlohmann::ordered_json report;
    report["input"] = pubs.size();
    report["kept"] = result.kept.size();
    report["exclusions"] = result.exclusions;

    write_file_atomic(cfg.out + ".exclusions.json", report.dump(2) + "\n");
    write_file_atomic(cfg.out, kept.str());
    out << "kept " << result.kept.size() << " of " << pubs.size() << '\n';
    return exit_ok;
}

int cmd_build_disparity(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    auto scheme = load_sc_only_scheme(cfg);
    std::istringstream text(read_file(cfg.citations));
    auto records = read_citation_records(text, scheme);
    auto counts = build_cross_citation_matrix(records, scheme.scs().size());
    auto disparity = to_disparity(cosine_similarity(counts));

    std::ostringstream matrix;
    save_matrix(matrix, disparity);
    write_file_atomic(cfg.out, matrix.str());
    out << "built " << disparity.dim() << "x" << disparity.dim() << " disparity matrix from " << records.size()
        << " citation records\n";
    return exit_ok;
}

int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto scheme = load_scheme(cfg);
    auto pubs = load_clean_corpus(cfg, scheme, err);
    auto matrix = load_matrix_file(cfg.matrix);
    if (matrix.dim() != scheme.scs().size()) {
        throw InputError(
            "dimension mismatch: matrix is " + std::to_string(matrix.dim()) + "x" + std::to_string(matrix.dim()) +
            " but the SC registry has " + std::to_string(scheme.scs().size()) + " categories");
    }
    for (const auto& pub : pubs) {
        if (pub.references.empty()) {
            throw InputError("publication '" + pub.pub_id + "' has no references; run filter first");
        }
    }

    auto scores = score_corpus(pubs, matrix, cfg.threads);
    std::string text;
    for (const auto& s : scores) {
        text += score_json_line(s.pub_id, s.score);
        text += '\n';
    }
    write_file_atomic(cfg.out, text);
    out << "scored " << scores.size() << " publications\n";
    return exit_ok;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto scheme = load_scheme(cfg);
    auto pubs = load_clean_corpus(cfg, scheme, err);
    std::sort(pubs.begin(), pubs.end(), [](const auto& a, const auto& b) { return a.pub_id < b.pub_id; });

    std::string text;
    for (const auto& pub : pubs) {
        text += classification_json_line(pub.pub_id, byline_profile(pub, scheme), scheme);
        text += '\n';
    }
    write_file_atomic(cfg.out, text);
    out << "classified " << pubs.size() << " publications\n";
    return exit_ok;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::istringstream scores_text(read_file(cfg.scores));
    auto scores = read_score_lines(scores_text);
    if (scores.empty()) {
        throw InputError("empty input");
    }
    std::istringstream labels_text(read_file(cfg.labels));
    auto labels = read_label_lines(labels_text);

    std::optional<FieldScheme> scheme;
    if (!cfg.scheme.empty()) {
        std::istringstream scheme_text(read_file(cfg.scheme));
        scheme = load_field_scheme(scheme_text);
    }
    auto papers = join_labels(std::move(scores), labels, scheme ? &*scheme : nullptr);

    ReportOptions options;
    options.bin_width = cfg.bin_width;
    options.top_k = cfg.top_k;
    Provenance provenance{digest_or_none(cfg.corpus), digest_or_none(cfg.matrix), IDR_VERSION};

    auto files = render_report(papers, options, provenance);
    if (!cfg.group_by.empty()) {
        auto rows = summarize_by(papers, parse_group_by(cfg.group_by));
        files.merge(render_summary("custom_summary", rows, provenance));
    }

    for (const auto& d : descriptive_stats(papers).omitted) {
        err << "warning: subpopulation " << to_string(d) << " is empty\n";
    }

    fs::create_directories(cfg.out);
    for (const auto& [name, content] : files) {
        write_file_atomic(fs::path(cfg.out) / name, content);
    }
    out << "wrote " << files.size() << " report files\n";
    return exit_ok;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    auto params = cfg.synth;
    auto result = generate_corpus(params);

    std::ostringstream scheme_text;
    write_field_scheme(scheme_text, result.scheme);
    std::ostringstream registry_text;
    write_sc_registry(registry_text, result.scheme);
    std::ostringstream matrix_text;
    save_matrix(matrix_text, result.disparity);

    fs::create_directories(cfg.out);
    const fs::path dir(cfg.out);
    write_file_atomic(dir / "scheme.tsv", scheme_text.str());
    write_file_atomic(dir / "scs.tsv", registry_text.str());
    write_file_atomic(dir / "disparity.txt", matrix_text.str());
    write_file_atomic(dir / "corpus.jsonl", result.corpus_jsonl());
    write_file_atomic(dir / "golden_scores.jsonl", result.golden_jsonl());
    out << "generated " << result.publications.size() << " publications\n";
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Interdisciplinarity indicators for publication corpora", "idr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", IDR_VERSION);

    RunConfig cfg;
    auto existing = [](CLI::Option* opt) { return opt->check(CLI::ExistingFile); };

    auto* validate = app.add_subcommand("validate", "Parse a corpus and report invalid records");
    existing(validate->add_option("--corpus", cfg.corpus, "Corpus JSONL")->required());
    existing(validate->add_option("--scheme", cfg.scheme, "Field scheme registry")->required());
    existing(validate->add_option("--sc-registry", cfg.sc_registry, "Subject category registry"));
    existing(validate->add_option("--journal-map", cfg.journal_map, "Journal to SC map"));
    validate->add_option("--out", cfg.out, "Summary JSON (default: standard output)");

    auto* filter = app.add_subcommand("filter", "Apply inclusion filters");
    existing(filter->add_option("--corpus", cfg.corpus)->required());
    existing(filter->add_option("--scheme", cfg.scheme)->required());
    existing(filter->add_option("--sc-registry", cfg.sc_registry));
    existing(filter->add_option("--journal-map", cfg.journal_map));
    filter->add_option("--filters", cfg.filters, "e.g. doc_types=article|proceedings,references=on,classified=on");
    filter->add_option("--out", cfg.out, "Kept corpus JSONL; exclusions go to <out>.exclusions.json")->required();

    auto* build = app.add_subcommand("build-disparity", "Citation records to disparity matrix");
    existing(build->add_option("--citations", cfg.citations, "JSONL of {citing, cited} SC code lists")->required());
    existing(build->add_option("--sc-registry", cfg.sc_registry));
    existing(build->add_option("--scheme", cfg.scheme));
    build->add_option("--out", cfg.out)->required();

    auto* score = app.add_subcommand("score", "Reference-list diversity per publication");
    existing(score->add_option("--corpus", cfg.corpus)->required());
    existing(score->add_option("--scheme", cfg.scheme)->required());
    existing(score->add_option("--sc-registry", cfg.sc_registry));
    existing(score->add_option("--journal-map", cfg.journal_map));
    existing(score->add_option("--matrix", cfg.matrix)->required());
    score->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
    score->add_option("--out", cfg.out)->required();

    auto* classify_cmd = app.add_subcommand("classify", "Byline profile and subpopulation per publication");
    existing(classify_cmd->add_option("--corpus", cfg.corpus)->required());
    existing(classify_cmd->add_option("--scheme", cfg.scheme)->required());
    existing(classify_cmd->add_option("--sc-registry", cfg.sc_registry));
    existing(classify_cmd->add_option("--journal-map", cfg.journal_map));
    classify_cmd->add_option("--out", cfg.out)->required();

    auto* report = app.add_subcommand("report", "Summary tables, statistics and distributions");
    existing(report->add_option("--scores", cfg.scores, "Score JSONL")->required());
    existing(report->add_option("--labels", cfg.labels, "Classification JSONL")->required());
    existing(report->add_option("--scheme", cfg.scheme, "Registry for discipline names"));
    existing(report->add_option("--corpus", cfg.corpus, "Corpus, for the provenance digest"));
    existing(report->add_option("--matrix", cfg.matrix, "Matrix, for the provenance digest"));
    report->add_option("--bin-width", cfg.bin_width)->check(CLI::PositiveNumber);
    report->add_option("--top-k", cfg.top_k)->check(CLI::PositiveNumber);
    report->add_option("--group-by", cfg.group_by, "Extra table: discipline|authors|fields|disciplines|fields-then-authors[:cap]");
    report->add_option("--out", cfg.out, "Output directory")->required();

    auto* synth = app.add_subcommand("synth", "Synthetic corpus, matrix and golden scores");
    auto& sp = cfg.synth;
    synth->add_option("--seed", sp.seed);
    synth->add_option("--n-single", sp.n_single_author);
    synth->add_option("--n-multi-single", sp.n_multi_author_single_field);
    synth->add_option("--n-multi-field", sp.n_multi_field);
    synth->add_option("--n-scs", sp.n_scs);
    synth->add_option("--n-fields", sp.n_fields);
    synth->add_option("--n-disciplines", sp.n_disciplines);
    synth->add_option("--mean-refs", sp.mean_references);
    synth->add_option("--within", sp.within);
    synth->add_option("--across", sp.across);
    synth->add_option("--jitter", sp.jitter);
    synth->add_option("--out", cfg.out, "Output directory")->required();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("idr");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForVersion&) {
        out << IDR_VERSION << '\n';
        return exit_ok;
    } catch (const CLI::Success&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(cfg, out, err);
        }
        if (filter->parsed()) {
            return cmd_filter(cfg, out, err);
        }
        if (build->parsed()) {
            return cmd_build_disparity(cfg, out, err);
        }
        if (score->parsed()) {
            return cmd_score(cfg, out, err);
        }
        if (classify_cmd->parsed()) {
            return cmd_classify(cfg, out, err);
        }
        if (report->parsed()) {
            return cmd_report(cfg, out, err);
        }
        if (synth->parsed()) {
            return cmd_synth(cfg, out, err);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal_error;
    }
    err << "error: no subcommand\n";
    return exit_input_error;
}

} // namespace idr::cli
