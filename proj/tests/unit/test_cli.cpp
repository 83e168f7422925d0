#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cli.hpp"
#include "neurocap/data/captions.hpp"
#include "neurocap/data/dataset.hpp"
#include "neurocap/data/vector_file.hpp"
#include "oracles.hpp"

using namespace neurocap;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run_cli(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"neurocap"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());
    std::ostringstream out, err;
    const int code = cli::cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class SmallPipeline : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = new support::TempDir("cli");
        const auto ds = (*dir_ / "ds").string();
        ASSERT_EQ(run_cli({"synth-gen", "--concepts", "3", "--per-concept", "10", "--dim", "8", "--fdim", "12",
                       "--noise", "0.1", "--seed", "7", "--out", ds})
                      .code,
                  0);
    }
    static void TearDownTestSuite() { delete dir_; }
    static std::string path(const std::string& name) { return (*dir_ / name).string(); }
    static std::string manifest() { return path("ds/manifest.json"); }
    static support::TempDir* dir_;
};
support::TempDir* SmallPipeline::dir_ = nullptr;

}  // namespace

TEST(CliExit, MissingSubcommandIsUsageError) { EXPECT_EQ(run_cli({}).code, cli::kUsage); }

TEST(CliExit, UnknownSubcommandOrFlagIsUsageError) {
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"synth-gen", "--bogus", "1", "--out", "x"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"synth-gen"}).code, cli::kUsage);  // --out required
    EXPECT_EQ(run_cli({"synth-gen", "--concepts", "many", "--out", "x"}).code, cli::kUsage);
}

TEST(CliExit, HelpAndVersionSucceed) {
    const auto help = run_cli({"--help"});
    EXPECT_EQ(help.code, cli::kSuccess);
    for (const char* sub : {"synth-gen", "embed-import", "vocab-build", "train-rse", "train-decoder", "caption",
                            "eval", "ablate", "viz"})
        EXPECT_NE(help.out.find(sub), std::string::npos) << sub;
    EXPECT_EQ(run_cli({"--version"}).code, cli::kSuccess);
}

TEST(CliExit, InvalidSpecIsUsageError) {
    support::TempDir dir("cli-spec");
    EXPECT_EQ(run_cli({"synth-gen", "--concepts", "1", "--out", (dir / "d").string()}).code, cli::kUsage);
}

TEST(CliExit, MissingDataIsDataError) {
    support::TempDir dir("cli-missing");
    const auto r = run_cli({"train-rse", "--manifest", (dir / "nope.json").string(), "--out", (dir / "r.ckpt").string()});
    EXPECT_EQ(r.code, cli::kDataError);
    EXPECT_NE(r.err.find("nope.json"), std::string::npos);
}

TEST(CliExit, ProcessExitCodesMatch) {
    const std::string bin = NEUROCAP_CLI_PATH;
    auto status = [](const std::string& cmd) {
        const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status(bin + " --version"), 0);
    EXPECT_EQ(status(bin), 1);
    EXPECT_EQ(status(bin + " eval --manifest /nonexistent/m.json --rse " + bin + " --decoder " + bin +
                     " --out /tmp/x.tsv"),
              2);
}

TEST_F(SmallPipeline, SynthGenWritesManifestAndThreeFiles) {
    for (const char* f : {"manifest.json", "responses.bin", "embeddings.bin", "captions.tsv"})
        EXPECT_TRUE(std::filesystem::exists(*dir_ / "ds" / f)) << f;
}

TEST_F(SmallPipeline, HeaderLogsSeedConfigHashAndFormats) {
    const auto r = run_cli({"train-rse", "--manifest", manifest(), "--hidden", "8", "--epochs", "2", "--seed", "5",
                        "--out", path("hdr.ckpt")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("seed=5"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("config_hash="), std::string::npos);
    EXPECT_NE(r.err.find("# formats:"), std::string::npos);
}

TEST_F(SmallPipeline, EndToEndProducesOneCaptionPerResponse) {
    ASSERT_EQ(run_cli({"vocab-build", "--manifest", manifest(), "--out", path("vocab.txt")}).code, 0);
    ASSERT_EQ(run_cli({"train-rse", "--manifest", manifest(), "--hidden", "16", "--epochs", "20", "--seed", "1",
                   "--out", path("rse.ckpt")})
                  .code,
              0);
    ASSERT_EQ(run_cli({"train-decoder", "--manifest", manifest(), "--vocab", path("vocab.txt"), "--embed-dim", "8",
                   "--hidden-dim", "16", "--epochs", "5", "--seed", "1", "--out", path("dec.ckpt")})
                  .code,
              0);

    const auto ds = data::load_dataset(manifest());
    std::vector<data::VectorRecord> test;
    for (const auto& id : ds.ids(data::Split::test)) test.push_back({id, ds.response(id).values});
    data::write_vector_file(*dir_ / "test.bin", data::VectorFileKind::responses, ds.response_dim, test);

    const auto cap = run_cli({"caption", "--rse", path("rse.ckpt"), "--decoder", path("dec.ckpt"), "--vocab",
                          path("vocab.txt"), "--responses", path("test.bin"), "--out", path("pred.tsv")});
    ASSERT_EQ(cap.code, 0) << cap.err;
    const auto rows = data::read_captions(*dir_ / "pred.tsv");
    ASSERT_EQ(rows.size(), test.size());
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].stimulus_id, test[i].id);

    const auto ev = run_cli({"eval", "--manifest", manifest(), "--rse", path("rse.ckpt"), "--decoder", path("dec.ckpt"),
                         "--out", path("eval.tsv")});
    ASSERT_EQ(ev.code, 0) << ev.err;
    const auto report = slurp(*dir_ / "eval.tsv");
    EXPECT_NE(report.find("# perplexity="), std::string::npos);
    const auto again = run_cli({"eval", "--manifest", manifest(), "--rse", path("rse.ckpt"), "--decoder",
                            path("dec.ckpt"), "--out", path("eval2.tsv")});
    ASSERT_EQ(again.code, 0);
    EXPECT_EQ(slurp(*dir_ / "eval2.tsv"), report);

    const auto viz = run_cli({"viz", "--manifest", manifest(), "--rse", path("rse.ckpt"), "--method", "pca", "--out",
                          path("pca.tsv"), "--svg", path("pca.svg")});
    ASSERT_EQ(viz.code, 0) << viz.err;
    EXPECT_NE(viz.out.find("silhouette"), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(*dir_ / "pca.svg"));

    // A vocabulary that differs from the decoder's is refused.
    std::ofstream(*dir_ / "other.txt") << "<pad>\n<start>\n<end>\n<unk>\nzzz\n";
    EXPECT_EQ(run_cli({"caption", "--rse", path("rse.ckpt"), "--decoder", path("dec.ckpt"), "--vocab",
                   path("other.txt"), "--responses", path("test.bin"), "--out", path("bad.tsv")})
                  .code,
              cli::kDataError);
}

TEST_F(SmallPipeline, EmbedImportConvertsTsv) {
    std::ofstream(*dir_ / "e.tsv") << "#dim=2\na cat\tcat\t1,0\nthe dog\tdog\t0,1\n";
    ASSERT_EQ(run_cli({"embed-import", "--tsv", path("e.tsv"), "--out", path("e.bin")}).code, 0);
    const auto f = data::read_vector_file(*dir_ / "e.bin", data::VectorFileKind::embeddings);
    EXPECT_EQ(f.records.size(), 2u);
    std::ofstream(*dir_ / "bad.tsv") << "#dim=3\na cat\tcat\t1,0\n";
    EXPECT_EQ(run_cli({"embed-import", "--tsv", path("bad.tsv"), "--out", path("bad.bin")}).code, cli::kDataError);
}

TEST_F(SmallPipeline, AblateWritesThreeRowTable) {
    const auto r = run_cli({"ablate", "--manifest", manifest(), "--seeds", "1,2,3", "--rse-hidden", "8", "--rse-epochs",
                        "2", "--embed-dim", "4", "--hidden-dim", "8", "--decoder-epochs", "2", "--min-freq", "1",
                        "--out", path("table.tsv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto table = slurp(*dir_ / "table.tsv");
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 4);
    EXPECT_NE(table.find("\nnone\t0\t0\t"), std::string::npos);
    EXPECT_NE(table.find("\nencoder_only\t1\t0\t"), std::string::npos);
    EXPECT_NE(table.find("\nfull\t1\t1\t"), std::string::npos);
    EXPECT_EQ(run_cli({"ablate", "--manifest", manifest(), "--seeds", "1,2", "--out", path("t2.tsv")}).code,
              cli::kUsage);
}
