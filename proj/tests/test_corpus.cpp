#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "typovec/corpus.hpp"
#include "typovec/error.hpp"
#include "typovec/utf8.hpp"

using namespace typovec;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
  const auto dir = fs::temp_directory_path() / "typovec_test_corpus";
  fs::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("split sizes reproduce the manifest rows") {
  CHECK(split_counts(9055) == SplitCounts{6055, 1500, 1500});
  CHECK(split_counts(7028) == SplitCounts{4028, 1500, 1500});
  const auto c = split_counts(29495);
  CHECK(c.train + c.val + c.test == 29495);
  CHECK(std::abs(double(c.train) - 20646.5) / 20646.5 < 0.005);
  CHECK(std::abs(double(c.val) - 5899.0) / 5899.0 < 0.005);
  CHECK(std::abs(double(c.test) - 2949.5) / 2949.5 < 0.005);
}

TEST_CASE("floor clamps both evaluation splits together") {
  // 10% of 20000 is 2000 >= floor, but 20% val is fine too; no clamp.
  CHECK(split_counts(20000) == SplitCounts{14000, 4000, 2000});
  // test share 1499 < 1500 clamps val as well.
  CHECK(split_counts(14990) == SplitCounts{11990, 1500, 1500});
  CHECK(split_counts(3001) == SplitCounts{1, 1500, 1500});
  try {
    split_counts(3000);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("corpus too small to split") != std::string::npos);
  }
}

TEST_CASE("split partitions the instances and is deterministic") {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t floor = 1 + rng.below(20);
    const std::size_t n = 2 * floor + 1 + rng.below(400);
    const auto items = numbered(n);
    const std::uint64_t seed = rng.next();
    const auto s = split(items, {}, floor, seed);
    CHECK(s.train.size() + s.val.size() + s.test.size() == n);
    CHECK(s.val.size() >= floor);
    CHECK(s.test.size() >= floor);
    std::vector<std::size_t> all;
    all.insert(all.end(), s.train_index.begin(), s.train_index.end());
    all.insert(all.end(), s.val_index.begin(), s.val_index.end());
    all.insert(all.end(), s.test_index.begin(), s.test_index.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < n; ++i) REQUIRE(all[i] == i);
    for (std::size_t i = 0; i < s.test.size(); ++i) CHECK(s.test[i] == items[s.test_index[i]]);
    const auto again = split(items, {}, floor, seed);
    CHECK(again.train == s.train);
    CHECK(again.test == s.test);
  }
  const auto items = numbered(500);
  CHECK(split(items, {}, 10, 1).test != split(items, {}, 10, 2).test);
}

TEST_CASE("collation packs greedily") {
  const std::string s600(600, 'x');
  CHECK(collate(std::vector<std::string>{s600, s600, s600}, 1024).size() == 3);
  const std::string s500(500, 'y');
  const auto two = collate(std::vector<std::string>{s500, s500}, 1024);
  REQUIRE(two.size() == 1);
  CHECK(two[0].size() == 1001);
  const auto long_one = collate(std::vector<std::string>{std::string(2500, 'z')}, 1024);
  REQUIRE(long_one.size() == 3);
  CHECK(long_one[0].size() == 1024);
  CHECK(long_one[1].size() == 1024);
  CHECK(long_one[2].size() == 452);
}

TEST_CASE("collation counts scalar values, not bytes") {
  std::string greek;
  for (int i = 0; i < 10; ++i) greek += "\xce\xb1";  // alpha
  const auto out = collate(std::vector<std::string>{greek}, 4);
  REQUIRE(out.size() == 3);
  CHECK(utf8::length(out[0]) == 4);
  CHECK(utf8::length(out[2]) == 2);
}

TEST_CASE("collation preserves the sentence stream") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t max_chars = 1 + rng.below(40);
    std::vector<std::string> sentences;
    const std::size_t n = 1 + rng.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      std::string s = oracle::random_utf8(rng, 60);
      std::erase(s, '\n');
      if (s.empty()) s = "q";
      sentences.push_back(s);
    }
    const auto inst = collate(sentences, max_chars);
    std::u32string joined_in, joined_out;
    for (const auto& s : sentences)
      for (char32_t c : utf8::decode(s)) joined_in.push_back(c);
    for (const auto& s : inst) {
      const auto len = utf8::length(s);
      CHECK(len >= 1);
      CHECK(len <= max_chars);
      for (char32_t c : utf8::decode(s))
        if (c != U'\n') joined_out.push_back(c);
    }
    CHECK(joined_in == joined_out);
  }
}

TEST_CASE("load_corpus drops blank lines and applies the cap") {
  const auto p = temp_file("a.txt", "one\n   \ntwo\r\nthree\n");
  const Corpus c = load_corpus(p, "abc");
  CHECK(c.instances == std::vector<std::string>{"one", "two", "three"});
  CHECK(load_corpus(p, "abc", 2).instances.size() == 2);
  const auto blank = temp_file("b.txt", "x\n\ny\n");
  CHECK(load_corpus(blank, "abc").instances.size() == 2);
}

TEST_CASE("load_corpus errors") {
  const auto empty = temp_file("empty.txt", "\n \n");
  try {
    load_corpus(empty, "abc");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_input);
    CHECK(std::string(e.what()).find("zero usable sentences") != std::string::npos);
  }
  const auto bad = temp_file("bad.txt", "fine\nbro\xffken\n");
  try {
    load_corpus(bad, "abc");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_utf8);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_corpus(temp_file("c.txt", "x\n"), "ABC"), Error);
  CHECK_THROWS_AS(load_corpus(temp_file("c.txt", "x\n"), "ab"), Error);
  CHECK_THROWS_AS(load_corpus(fs::temp_directory_path() / "nope_typovec.txt", "abc"), Error);
}

TEST_CASE("split files round-trip arbitrary instances") {
  const std::vector<std::string> items{"plain", "with\nnewline", "back\\slash", "#hash first",
                                       "cr\rhere", "\\#", "tab\tinside"};
  const std::string text = format_split_file(items, "typovec config=abc");
  CHECK(text.rfind("# typovec config=abc\n", 0) == 0);
  CHECK(parse_split_file(text) == items);
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const std::string s = oracle::random_utf8(rng, 30);
    if (s.empty()) continue;
    CHECK(unescape_instance(escape_instance(s)) == s);
  }
}
