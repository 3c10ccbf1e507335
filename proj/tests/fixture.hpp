// On-disk pipeline fixtures built from a planted synthetic world.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "typovec/io.hpp"
#include "typovec/synth.hpp"
#include "typovec/tree.hpp"

namespace fixture {

namespace fs = std::filesystem;

inline constexpr const char* kPlanted =
    "((aaa:0.35,aab:0.35,aac:0.35,aad:0.35):4,(baa:0.35,bab:0.35,bac:0.35,bad:0.35):4);";

inline fs::path fresh_dir(const fs::path& p) {
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Corpora (one sentence of up to 80 chars per line), gold tree, URIEL-style
// external vectors and a config, all under `dir`.
inline nlohmann::json write_fixture(const fs::path& dir, std::size_t chars_per_language = 40000,
                                    std::uint64_t seed = 5) {
  fresh_dir(dir);
  const auto world = typovec::generate_world(typovec::parse_newick(kPlanted), 64, 0.3, seed);
  nlohmann::json langs = nlohmann::json::array();
  std::string uriel = "# external features\nlang,fam_a,fam_b,syn\n";
  for (const auto& lang : world.tree.leaf_labels()) {
    const auto corpus = typovec::sample_corpus(world, lang, chars_per_language, seed + 1, 80);
    std::string text;
    for (const auto& s : corpus.instances) text += s + "\n";
    typovec::io::write_file_atomic(dir / (lang + ".txt"), text);
    langs.push_back({{"lang", lang}, {"corpus", lang + ".txt"}});
    const bool a = lang[0] == 'a';
    uriel += lang + "," + (a ? "1" : "0") + "," + (a ? "0" : "1") + "," +
             std::to_string((a ? 0 : 100) + (lang[2] - 'a')) + "\n";
  }
  typovec::io::write_file_atomic(dir / "gold.nwk", "((aaa,aab,aac,aad)Fam_A,(baa,bab,bac,bad)Fam_B)Root;\n");
  typovec::io::write_file_atomic(dir / "uriel.csv", uriel);
  nlohmann::json config = {
      {"seed", 17},
      {"output_dir", "out"},
      {"languages", langs},
      {"corpus", {{"max_chars", 256}, {"split_floor", 5}}},
      {"gold_tree", "gold.nwk"},
  };
  typovec::io::write_file_atomic(dir / "config.json", config.dump(2) + "\n");
  return config;
}

inline int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc;
}

}  // namespace fixture
