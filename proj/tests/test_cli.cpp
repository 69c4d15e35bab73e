#include "cli_support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace idr::test;
namespace fs = std::filesystem;

namespace {

void synth_into(const TempDir& dir, const std::string& seed = "5")
{
    auto r = run_cli(
        {"synth", "--seed", seed, "--n-single", "30", "--n-multi-single", "30", "--n-multi-field", "30", "--out",
         dir / "synth"});
    REQUIRE(r.code == 0);
}

} // namespace

TEST_CASE("cli: usage errors exit 1")
{
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({"score", "--corpus", "/nonexistent/corpus.jsonl"}).code == 1);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"--version"}).code == 0);
}

TEST_CASE("cli: synth writes its outputs deterministically")
{
    TempDir a, b;
    synth_into(a);
    synth_into(b);
    for (const char* name : {"scheme.tsv", "scs.tsv", "disparity.txt", "corpus.jsonl", "golden_scores.jsonl"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(a.path() / "synth" / name));
        CHECK(slurp(a.path() / "synth" / name) == slurp(b.path() / "synth" / name));
    }
}

TEST_CASE("cli: full pipeline")
{
    TempDir dir;
    synth_into(dir);
    const auto s = dir / "synth";
    const auto scheme = s + "/scheme.tsv";
    const auto corpus = s + "/corpus.jsonl";
    const auto matrix = s + "/disparity.txt";
    const auto scs = s + "/scs.tsv";

    auto v = run_cli({"validate", "--corpus", corpus, "--scheme", scheme, "--sc-registry", scs});
    CHECK(v.code == 0);
    CHECK(v.out.find("\"records\"") != std::string::npos);

    auto f = run_cli({"filter", "--corpus", corpus, "--scheme", scheme, "--sc-registry", scs, "--out", dir / "kept.jsonl"});
    CHECK(f.code == 0);
    CHECK(slurp(dir / "kept.jsonl") == slurp(corpus));
    CHECK(fs::exists(dir / "kept.jsonl.exclusions.json"));

    REQUIRE(run_cli({"score", "--corpus", corpus, "--scheme", scheme, "--sc-registry", scs, "--matrix", matrix, "--threads", "1", "--out",
                     dir / "s1.jsonl"})
                .code == 0);
    REQUIRE(run_cli({"score", "--corpus", corpus, "--scheme", scheme, "--sc-registry", scs, "--matrix", matrix, "--threads", "3", "--out",
                     dir / "s3.jsonl"})
                .code == 0);
    CHECK(slurp(dir / "s1.jsonl") == slurp(dir / "s3.jsonl"));

    REQUIRE(run_cli({"classify", "--corpus", corpus, "--scheme", scheme, "--sc-registry", scs, "--out", dir / "labels.jsonl"}).code == 0);

    auto rep = run_cli(
        {"report", "--scores", dir / "s1.jsonl", "--labels", dir / "labels.jsonl", "--scheme", scheme, "--corpus",
         corpus, "--matrix", matrix, "--group-by", "authors:4", "--out", dir / "report"});
    CHECK(rep.code == 0);
    CHECK(fs::exists(dir.path() / "report" / "descriptive_stats.csv"));
    CHECK(fs::exists(dir.path() / "report" / "custom_summary.json"));
    const auto header = slurp(dir.path() / "report" / "descriptive_stats.csv");
    CHECK(header.find("corpus_digest=none") == std::string::npos);

    SUBCASE("matrix dimension mismatch")
    {
        spit(dir / "tiny.txt", "dim=2 kind=disparity\n0 0.5\n0.5 0\n");
        auto r = run_cli(
            {"score", "--corpus", corpus, "--scheme", scheme, "--sc-registry", scs, "--matrix", dir / "tiny.txt", "--out", dir / "x.jsonl"});
        CHECK(r.code == 1);
        CHECK(r.err.find("dimension mismatch") != std::string::npos);
    }
    SUBCASE("corrupt corpus line")
    {
        spit(dir / "bad.jsonl", slurp(corpus) + "{oops\n");
        auto r = run_cli({"validate", "--corpus", dir / "bad.jsonl", "--scheme", scheme, "--sc-registry", scs});
        CHECK(r.code == 1);
        auto sc = run_cli({"score", "--corpus", dir / "bad.jsonl", "--scheme", scheme, "--sc-registry", scs, "--matrix", matrix, "--out",
                           dir / "x.jsonl"});
        CHECK(sc.code == 1);
    }
    SUBCASE("empty report input")
    {
        spit(dir / "empty.jsonl", "");
        auto r = run_cli(
            {"report", "--scores", dir / "empty.jsonl", "--labels", dir / "empty.jsonl", "--out", dir / "r2"});
        CHECK(r.code == 1);
        CHECK(r.err.find("empty input") != std::string::npos);
    }
}

TEST_CASE("cli: build-disparity")
{
    TempDir dir;
    spit(dir / "scs.tsv", "A\tAlpha\nB\tBeta\nC\tGamma\n");
    spit(dir / "cites.jsonl",
         "{\"citing\":[\"A\"],\"cited\":[\"A\",\"B\"]}\n{\"citing\":[\"B\"],\"cited\":[\"A\"]}\n");
    auto r = run_cli({"build-disparity", "--citations", dir / "cites.jsonl", "--sc-registry", dir / "scs.tsv", "--out",
                      dir / "d.txt"});
    REQUIRE(r.code == 0);
    // rows (1,1,0), (1,0,0), (0,0,0): s(A,B) = 1/sqrt2
    const auto text = slurp(dir / "d.txt");
    CHECK(text.rfind("dim=3 kind=disparity\n", 0) == 0);
    CHECK(text.find("0.29289321881345") != std::string::npos);
}
