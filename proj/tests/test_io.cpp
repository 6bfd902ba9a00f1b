#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qws/io.hpp"
#include "support.hpp"

using namespace qws;
namespace t = qws::test;
namespace fs = std::filesystem;

namespace {

bool same_step(const QuantumStep& a, const QuantumStep& b) {
  return a.gamma == b.gamma && a.delta == b.delta && a.p == b.p && approx_equal(a.s, b.s, 0.0) &&
         approx_equal(a.c, b.c, 0.0);
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "qws_test_io";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("state JSON") {
  SUBCASE("exact round trip for fixtures and random states") {
    for (const auto& n : fixture_names()) {
      const auto u = builtin_fixture(n);
      CHECK(state_from_json(json::parse(to_json(u).dump())).distance(u) == 0.0);
    }
    for (int i = 0; i < 20; ++i) {
      const auto u = t::random_composite(4, -9, 9);
      CHECK(state_from_json(json::parse(to_json(u).dump())).distance(u) == 0.0);
    }
  }
  SUBCASE("raw spinors are canonicalized") {
    const auto j = json::parse(R"({"raw":[{"m":0,"re0":-0.7071067811865476,"im0":0,"re1":0,"im1":0},
                                          {"m":3,"re0":0,"im0":0,"re1":0,"im1":0.7071067811865476}]})");
    const auto u = state_from_json(j);
    CHECK(u.amp_at(0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(approx_equal(u.components().at(0).coin, coins::l() * -1.0));
    CHECK(approx_equal(u.components().at(3).coin, coins::r() * kI));
  }
  SUBCASE("malformed") {
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"components":[]})")), FormatError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"nope":1})")), FormatError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"components":[{"m":0,"amp":"x","coin":"l"}]})")), FormatError);
    CHECK_THROWS(state_from_json(json::parse(
        R"({"components":[{"m":0,"amp":0.5,"coin":"l"},{"m":1,"amp":0.5,"coin":"r"}]})")));
  }
  SUBCASE("named coins") {
    CHECK(approx_equal(coin_from_json("h"), coins::h()));
    CHECK_THROWS_AS(coin_from_json("q"), FormatError);
  }
}

TEST_CASE("walk and synthesis JSON") {
  for (int i = 0; i < 20; ++i) {
    const Walk w = t::random_walk(6, true, 3);
    const Walk back = walk_from_json(json::parse(to_json(w).dump()));
    REQUIRE(back.steps.size() == w.steps.size());
    for (std::size_t k = 0; k < w.steps.size(); ++k) CHECK(same_step(back.steps[k], w.steps[k]));
  }
  const auto syn = synthesize(builtin_fixture("H"));
  const auto back = synthesis_from_json(json::parse(to_json(syn).dump()));
  CHECK(back.step_count == 5);
  CHECK(approx_equal(back.home, syn.home, 0.0));
  CHECK(apply_walk(back.walk, CompositeState::product(back.home)).distance(builtin_fixture("H")) < 1e-9);
}

TEST_CASE("plate sequence JSON") {
  const auto cw = compile_walk(builtin_fixture("G"));
  const auto back = plates_from_json(json::parse(to_json(cw.plates).dump()));
  CHECK(back.elements.size() == cw.plates.elements.size());
  CHECK(back.global_phase == cw.plates.global_phase);
  const auto in = CompositeState::product(cw.input);
  CHECK(apply_plates(back, in).distance(apply_plates(cw.plates, in)) == 0.0);
  CHECK_THROWS_AS(plates_from_json(json::parse(R"({"global_phase":{"re":1,"im":0},"elements":[{"kind":"mirror"}]})")),
                  FormatError);
}

TEST_CASE("profile CSV") {
  const auto prof = sample_profile(builtin_fixture("D"), 64);
  const auto text = profile_csv(prof);
  CHECK(text.rfind("phi,re_l,im_l,re_r,im_r\n", 0) == 0);
  const auto back = profile_from_csv(text);
  REQUIRE(back.samples.size() == 64);
  for (std::size_t k = 0; k < 64; ++k) {
    CHECK(back.samples[k].phi == prof.samples[k].phi);
    CHECK(back.samples[k].jones == prof.samples[k].jones);
  }
  CHECK(oam_decompose(back).distance(builtin_fixture("D")) < 1e-9);
  CHECK_THROWS_AS(profile_from_csv("phi,re_l\n0,1\n"), FormatError);
  CHECK_THROWS_AS(profile_from_csv(""), FormatError);
}

TEST_CASE("files") {
  const fs::path dir = scratch_dir();
  const fs::path p = dir / "state.json";
  write_text_atomic(p, to_json(builtin_fixture("C")).dump(2));
  CHECK(fs::exists(p));
  CHECK_FALSE(fs::exists(dir / "state.json.tmp"));
  CHECK(read_state_file(p).distance(builtin_fixture("C")) == 0.0);
  {
    std::ofstream(dir / "bad.json") << "{ not json";
  }
  CHECK_THROWS_AS(read_json_file(dir / "bad.json"), FormatError);
  CHECK_THROWS_AS(read_text_file(dir / "missing.json"), std::runtime_error);
  fs::remove_all(dir);
}
