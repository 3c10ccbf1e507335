#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "typovec/error.hpp"
#include "typovec/io.hpp"
#include "typovec/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::vector<std::string> concat;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config, "pipeline config (JSON)")->required();
  cmd->add_option("--jobs", common.jobs, "worker threads, 0 = all cores")->default_val(1);
  cmd->add_option("--seed", common.seed, "override the config seed");
  cmd->add_option("--out", common.out, "override the output directory");
}

typovec::PipelineConfig load(const Common& common) {
  typovec::ConfigOverrides overrides;
  overrides.seed = common.seed;
  if (common.out) overrides.output_dir = fs::path(*common.out);
  for (const auto& c : common.concat) overrides.concat.emplace_back(c);
  return typovec::load_config(common.config, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"typovec: language vectors from cross-entropy and typology trees"};
  app.set_version_flag("--version", std::string(typovec::kVersion));
  app.require_subcommand(1);

  Common common;
  std::optional<std::string> gold;
  std::optional<std::string> candidate;

  auto* ingest = app.add_subcommand("ingest", "split corpora into train/val/test");
  auto* train = app.add_subcommand("train", "fit per-language tokenizers and n-gram models");
  auto* entropy = app.add_subcommand("entropy", "evaluate every model on every test split");
  auto* vectors = app.add_subcommand("vectors", "build language vectors");
  auto* tree = app.add_subcommand("tree", "induce a typology tree");
  auto* compare = app.add_subcommand("compare", "score a tree against the gold tree");
  auto* synth = app.add_subcommand("synth", "planted-tree recovery experiment");
  auto* run = app.add_subcommand("run", "every applicable stage in order");
  for (auto* cmd : {ingest, train, entropy, vectors, tree, compare, synth, run}) add_common(cmd, common);
  vectors->add_option("--concat", common.concat, "append min-max normalized external vectors");
  run->add_option("--concat", common.concat, "append min-max normalized external vectors");
  compare->add_option("--gold", gold, "gold Newick tree");
  compare->add_option("--candidate", candidate, "candidate Newick tree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error[usage]: %s\n", e.what());
    return 2;
  }

  try {
    const typovec::PipelineConfig config = load(common);
    const typovec::RunOptions options{common.jobs};
    if (ingest->parsed()) {
      typovec::cmd_ingest(config, options);
    } else if (train->parsed()) {
      typovec::cmd_train(config, options);
    } else if (entropy->parsed()) {
      typovec::cmd_entropy(config, options);
    } else if (vectors->parsed()) {
      typovec::cmd_vectors(config, options);
    } else if (tree->parsed()) {
      typovec::cmd_tree(config, options);
    } else if (compare->parsed()) {
      typovec::CompareInputs inputs;
      if (gold) inputs.gold = fs::path(*gold);
      if (candidate) inputs.candidate = fs::path(*candidate);
      const auto report = typovec::cmd_compare(config, inputs, options);
      std::cout << "rf=" << report.rf << " lca_mae=" << typovec::io::format_g9(report.lca_mae)
                << " n_leaves=" << report.n_leaves << "\n";
    } else if (synth->parsed()) {
      const auto runs = typovec::cmd_synth(config, options);
      std::size_t exact = 0;
      for (const auto& r : runs) {
        std::cout << "seed=" << r.seed << " rf=" << r.rf << " lca_mae=" << typovec::io::format_g9(r.lca_mae)
                  << " diagonal_dominant=" << (r.diagonal_dominant ? "yes" : "no") << "\n";
        exact += r.rf == 0;
      }
      std::cout << "rf=0 in " << exact << "/" << runs.size() << " seeds\n";
    } else if (run->parsed()) {
      typovec::cmd_run(config, options);
    }
  } catch (const typovec::Error& e) {
    std::fprintf(stderr, "error[%s]: %s\n", std::string(typovec::to_string(e.code())).c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error[internal]: %s\n", e.what());
    return 1;
  }
  return 0;
}
