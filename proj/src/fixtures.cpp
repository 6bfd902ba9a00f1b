#include "qws/fixtures.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include "qws/io.hpp"

namespace qws {

namespace {

struct Term {
  cplx weight;
  CoinState coin;
  Position m;
};

CompositeState build(double scale, std::initializer_list<Term> terms) {
  RawState raw;
  for (const Term& t : terms) {
    const cplx k = scale * t.weight;
    raw[t.m] = {k * t.coin.w0(), k * t.coin.w1()};
  }
  return canonicalize(raw);
}

}  // namespace

std::vector<std::string> fixture_names() { return {"A", "B", "C", "D", "E", "F", "G", "H"}; }

CompositeState builtin_fixture(std::string_view name) {
  using namespace coins;
  const double r2 = std::sqrt(2.0);
  const cplx i = kI;
  if (name == "A") return build(1.0 / r2, {{1.0, a(), -1}, {1.0, d(), 2}});
  if (name == "B") return build(1.0 / std::sqrt(3.0), {{1.0, h(), 0}, {-1.0, a(), 1}, {1.0, v(), 2}});
  if (name == "C") return build(0.5, {{1.0, h(), -2}, {-r2, a(), 0}, {1.0, v(), 2}});
  if (name == "D") {
    return build(1.0 / std::sqrt(5.0),
                 {{1.0, d(), -2}, {1.0, l(), -1}, {-1.0, r(), 0}, {i, l(), 1}, {i, a(), 2}});
  }
  if (name == "E") return build(0.5, {{1.0, c(), -2}, {-r2, h(), -1}, {1.0, e(), 1}});
  if (name == "F") {
    return build(1.0 / std::sqrt(5.0),
                 {{i, c(), -2}, {1.0, l(), -1}, {1.0, e(), 0}, {1.0, r(), 1}, {1.0, c(), 2}});
  }
  if (name == "G") {
    return build(1.0 / std::sqrt(10.0), {{i, d(), -5}, {-i, r(), -4}, {1.0, l(), -3},
                                         {1.0, r(), -2}, {1.0, a(), -1}, {1.0, d(), 1},
                                         {1.0, l(), 2}, {-1.0, r(), 3}, {i, l(), 4}, {i, a(), 5}});
  }
  if (name == "H") {
    return build(1.0 / std::sqrt(10.0), {{1.0, d(), -4}, {i, d(), -3}, {1.0, l(), -2},
                                         {-i, r(), -1}, {-1.0, r(), 0}, {1.0, l(), 1},
                                         {i, l(), 2}, {1.0, r(), 3}, {i, a(), 4}, {1.0, a(), 5}});
  }
  throw std::out_of_range("unknown fixture '" + std::string(name) + "' (expected A..H)");
}

CompositeState load_fixture(std::string_view name) {
  if (const char* dir = std::getenv("QWS_FIXTURE_DIR"); dir != nullptr && *dir != '\0') {
    const auto path = std::filesystem::path(dir) / (std::string(name) + ".json");
    if (std::filesystem::exists(path)) return read_state_file(path);
  }
  return builtin_fixture(name);
}

}  // namespace qws
