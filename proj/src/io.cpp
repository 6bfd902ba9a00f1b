#include "qws/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace qws {

namespace {

double num(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw FormatError(std::string("missing or non-numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
  return a;
}

Position position(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
  return v.get<Position>();
}

}  // namespace

json to_json(const CoinState& c) {
  return {{"re0", c.w0().real()}, {"im0", c.w0().imag()}, {"re1", c.w1().real()}, {"im1", c.w1().imag()}};
}

json to_json(const CompositeState& u) {
  json comps = json::array();
  for (const auto& [m, comp] : u.components()) {
    comps.push_back({{"m", m}, {"amp", comp.amp}, {"coin", to_json(comp.coin)}});
  }
  return {{"components", comps}};
}

json to_json(const QuantumStep& t) {
  return {{"gamma", t.gamma}, {"delta", t.delta}, {"p", t.p}, {"s", to_json(t.s)}, {"c", to_json(t.c)}};
}

json to_json(const Walk& w) {
  json steps = json::array();
  for (const auto& t : w.steps) steps.push_back(to_json(t));
  return {{"steps", steps}};
}

json to_json(const SynthesisResult& r) {
  return {{"home", to_json(r.home)}, {"walk", to_json(r.walk)}, {"step_count", r.step_count}};
}

json to_json(const PlateSequence& seq) {
  json elems = json::array();
  for (const auto& e : seq.elements) {
    if (const auto* w = std::get_if<Waveplate>(&e)) {
      elems.push_back({{"kind", "waveplate"}, {"gamma", w->gamma}, {"alpha", w->alpha}});
    } else {
      const auto& q = std::get<QPlate>(e);
      elems.push_back({{"kind", "qplate"}, {"gamma", q.gamma}, {"q", q.q}, {"alpha0", q.alpha0}});
    }
  }
  return {{"global_phase", {{"re", seq.global_phase.real()}, {"im", seq.global_phase.imag()}}},
          {"elements", elems}};
}

json to_json(const ClassifierReport& rep) {
  json v = json::array();
  for (const auto& [d, value] : rep.violations) v.push_back({{"d", d}, {"value", value}});
  return {{"walk_state", rep.walk_state}, {"max_violation", rep.max_violation}, {"violations", v}};
}

CoinState coin_from_json(const json& j) {
  if (j.is_string()) {
    if (auto named = CoinState::named(j.get<std::string>())) return *named;
    throw FormatError("unknown coin name '" + j.get<std::string>() + "'");
  }
  try {
    return CoinState({num(j, "re0"), num(j, "im0")}, {num(j, "re1"), num(j, "im1")});
  } catch (const InvalidStateError& e) {
    throw FormatError(std::string("coin: ") + e.what());
  }
}

CompositeState state_from_json(const json& j) {
  try {
    if (j.is_object() && j.contains("raw")) {
      RawState raw;
      for (const auto& x : array_field(j, "raw")) {
        raw[position(x, "m")] = {cplx{num(x, "re0"), num(x, "im0")}, cplx{num(x, "re1"), num(x, "im1")}};
      }
      return canonicalize(raw);
    }
    CompositeState::ComponentMap comps;
    for (const auto& x : array_field(j, "components")) {
      const Position m = position(x, "m");
      if (!comps.emplace(m, Component{num(x, "amp"), coin_from_json(field(x, "coin"))}).second) {
        throw FormatError("duplicate position " + std::to_string(m));
      }
    }
    return CompositeState(std::move(comps));
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("state: ") + e.what());
  }
}

QuantumStep step_from_json(const json& j) {
  const double gamma = num(j, "gamma");
  const CoinState s = coin_from_json(field(j, "s"));
  const CoinState c = coin_from_json(field(j, "c"));
  try {
    if (gamma == 0.0) return QuantumStep::improper(s, c);
    return QuantumStep::proper(gamma, num(j, "delta"), position(j, "p"), s, c);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("step: ") + e.what());
  }
}

Walk walk_from_json(const json& j) {
  Walk w;
  for (const auto& t : array_field(j, "steps")) w.steps.push_back(step_from_json(t));
  return w;
}

SynthesisResult synthesis_from_json(const json& j) {
  SynthesisResult r;
  r.home = coin_from_json(field(j, "home"));
  r.walk = walk_from_json(field(j, "walk"));
  r.step_count = field(j, "step_count").get<std::size_t>();
  return r;
}

PlateSequence plates_from_json(const json& j) {
  PlateSequence seq;
  const json& g = field(j, "global_phase");
  seq.global_phase = {num(g, "re"), num(g, "im")};
  for (const auto& e : array_field(j, "elements")) {
    const std::string kind = field(e, "kind").get<std::string>();
    try {
      if (kind == "waveplate") {
        seq.elements.emplace_back(make_waveplate(num(e, "gamma"), num(e, "alpha")));
      } else if (kind == "qplate") {
        seq.elements.emplace_back(make_qplate(num(e, "gamma"), num(e, "q"), num(e, "alpha0")));
      } else {
        throw FormatError("unknown plate kind '" + kind + "'");
      }
    } catch (const std::invalid_argument& ex) {
      throw FormatError(std::string("plate: ") + ex.what());
    }
  }
  return seq;
}

std::string profile_csv(const AzimuthalProfile& profile) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "phi,re_l,im_l,re_r,im_r\n";
  for (const auto& s : profile.samples) {
    os << s.phi << ',' << s.jones[0].real() << ',' << s.jones[0].imag() << ',' << s.jones[1].real()
       << ',' << s.jones[1].imag() << '\n';
  }
  return os.str();
}

AzimuthalProfile profile_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("phi", 0) != 0) throw FormatError("profile CSV: missing header");
  AzimuthalProfile prof;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double v[5];
    char sep = 0;
    row >> v[0];
    for (int i = 1; i < 5; ++i) row >> sep >> v[i];
    if (!row || sep != ',') throw FormatError("profile CSV: bad row '" + line + "'");
    prof.samples.push_back({v[0], Spinor{cplx{v[1], v[2]}, cplx{v[3], v[4]}}});
  }
  return prof;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into '" + path.string() + "'");
  }
}

CompositeState read_state_file(const std::filesystem::path& path) {
  return state_from_json(read_json_file(path));
}

}  // namespace qws
