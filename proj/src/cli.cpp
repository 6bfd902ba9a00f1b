#include "qws/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "qws/errors.hpp"
#include "qws/fixtures.hpp"
#include "qws/io.hpp"
#include "qws/render.hpp"

namespace qws::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_atomic(path, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void report_rejection(const ClassifierReport& rep, std::ostream& err) {
  err << "not a walk-state: max violation " << rep.max_violation << "\n";
  for (const auto& [d, v] : rep.violations) err << "  d=" << d << "  |<U|U_d>|=" << v << "\n";
}

CoinState coin_arg(const std::string& arg) {
  if (auto named = CoinState::named(arg)) return *named;
  return coin_from_json(read_json_file(arg));
}

struct Options {
  double tol = kClassifierTol;
  std::string output;
  std::string input;
  std::string input2;
  std::string style = "circles";
  std::string home = "l";
  std::string compile_input;
  std::size_t samples = 0;
  double scale = 1.0;
  bool list = false;
  std::string write_dir;
  std::string show;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qws: steered quantum walks and their optical compilation", "qws"};
  app.require_subcommand(1, 1);
  Options o;

  auto tol_opt = [&o](CLI::App* sc) {
    sc->add_option("--tol", o.tol, "tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  };
  auto out_opt = [&o](CLI::App* sc) { sc->add_option("-o,--output", o.output, "output file (default stdout)"); };

  auto* classify = app.add_subcommand("classify", "walk-state test with per-shift violations");
  classify->add_option("state", o.input, "state JSON")->required();
  tol_opt(classify);

  auto* synth = app.add_subcommand("synthesize", "minimal walk building a walk-state from a home-state");
  synth->add_option("state", o.input, "state JSON")->required();
  tol_opt(synth);
  out_opt(synth);

  auto* simplify = app.add_subcommand("simplify", "equivalent walk of unit proper steps");
  simplify->add_option("walk", o.input, "walk JSON")->required();
  tol_opt(simplify);
  out_opt(simplify);

  auto* connect = app.add_subcommand("connect", "minimal walk taking P to Q");
  connect->add_option("P", o.input, "state JSON")->required();
  connect->add_option("Q", o.input2, "state JSON")->required();
  tol_opt(connect);
  out_opt(connect);

  auto* same = app.add_subcommand("same-walk", "can P and Q come from one walk?");
  same->add_option("P", o.input, "state JSON")->required();
  same->add_option("Q", o.input2, "state JSON")->required();
  tol_opt(same);

  auto* compile = app.add_subcommand("compile", "waveplate / q-plate sequence for a walk-state");
  compile->add_option("state", o.input, "state JSON")->required();
  compile->add_option("--input", o.compile_input, "input polarization (name or coin JSON)");
  tol_opt(compile);
  out_opt(compile);

  auto* profile = app.add_subcommand("profile", "azimuthal Jones profile as CSV");
  profile->add_option("state", o.input, "state JSON")->required();
  profile->add_option("--samples", o.samples, "azimuths K (0 = max(64, 4N+4))");
  out_opt(profile);

  auto* render = app.add_subcommand("render", "SVG figure of a state");
  render->add_option("state", o.input, "state JSON")->required();
  render->add_option("--style", o.style, "circles|ellipses|polar")
      ->capture_default_str()
      ->check(CLI::IsMember({"circles", "ellipses", "polar"}));
  render->add_option("--scale", o.scale, "size factor")->capture_default_str()->check(CLI::PositiveNumber);
  render->add_option("--samples", o.samples, "azimuths for ellipses/polar");
  out_opt(render);

  auto* render_walk = app.add_subcommand("render-walk", "SVG panel of a walk's progression");
  render_walk->add_option("walk", o.input, "walk JSON")->required();
  render_walk->add_option("--home", o.home, "home coin (name or coin JSON)")->capture_default_str();
  render_walk->add_option("--scale", o.scale, "size factor")->capture_default_str()->check(CLI::PositiveNumber);
  out_opt(render_walk);

  auto* fixtures = app.add_subcommand("fixtures", "the named example states A..H");
  auto* list_flag = fixtures->add_flag("--list", o.list, "print the names");
  auto* write_opt = fixtures->add_option("--write", o.write_dir, "write <name>.json files into DIR");
  auto* show_opt = fixtures->add_option("--show", o.show, "print one fixture as JSON");
  list_flag->excludes(write_opt)->excludes(show_opt);
  write_opt->excludes(show_opt);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) {
      const auto u = read_state_file(o.input);
      const auto rep = is_walk_state(u, o.tol);
      out << dump(to_json(rep));
      if (!rep.walk_state) {
        report_rejection(rep, err);
        return kExitRejected;
      }
    } else if (*synth) {
      SynthesisOptions so;
      so.tol = o.tol;
      emit(dump(to_json(synthesize(read_state_file(o.input), so))), o.output, out);
    } else if (*simplify) {
      SynthesisOptions so;
      so.tol = o.tol;
      emit(dump(to_json(simplify_walk(walk_from_json(read_json_file(o.input)), so))), o.output, out);
    } else if (*connect) {
      SynthesisOptions so;
      so.tol = o.tol;
      emit(dump(to_json(qws::connect(read_state_file(o.input), read_state_file(o.input2), so))), o.output,
           out);
    } else if (*same) {
      const auto rep = same_walk_test(read_state_file(o.input), read_state_file(o.input2), o.tol);
      out << dump({{"char_match", rep.char_match},
                   {"cross_orthogonality_ok", rep.cross_orthogonality_ok},
                   {"sufficiency_value", rep.sufficiency_value},
                   {"verdict", rep.verdict}});
    } else if (*compile) {
      CompileOptions co;
      co.tol = o.tol;
      if (!o.compile_input.empty()) co.input = coin_arg(o.compile_input);
      const auto cw = compile_walk(read_state_file(o.input), co);
      json j = to_json(cw.plates);
      j["input"] = to_json(cw.input);
      emit(dump(j), o.output, out);
    } else if (*profile) {
      emit(profile_csv(sample_profile(read_state_file(o.input), o.samples)), o.output, out);
    } else if (*render) {
      RenderSpec spec{parse_style(o.style), o.scale, o.samples};
      emit(render_state(read_state_file(o.input), spec), o.output, out);
    } else if (*render_walk) {
      RenderSpec spec{RenderStyle::walk_panel, o.scale, 0};
      emit(render_walk_panel(walk_from_json(read_json_file(o.input)), coin_arg(o.home), spec), o.output, out);
    } else if (*fixtures) {
      if (!o.show.empty()) {
        out << dump(to_json(load_fixture(o.show)));
      } else if (!o.write_dir.empty()) {
        std::filesystem::create_directories(o.write_dir);
        for (const auto& name : fixture_names()) {
          write_text_atomic(std::filesystem::path(o.write_dir) / (name + ".json"),
                            dump(to_json(builtin_fixture(name))));
        }
      } else {
        for (const auto& name : fixture_names()) out << name << "\n";
      }
    }
  } catch (const NotShrinkableError& e) {
    err << "qws: " << e.what() << "\n";
    if (const auto* sf = dynamic_cast<const ShrinkFailure*>(&e)) report_rejection(is_walk_state(sf->failing_state, o.tol), err);
    return kExitRejected;
  } catch (const std::out_of_range& e) {
    // unknown fixture names land here; span limits are runtime data errors
    if (dynamic_cast<const SpanLimitError*>(&e) != nullptr) {
      err << "qws: " << e.what() << "\n";
      return kExitIo;
    }
    err << "qws: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qws: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace qws::cli
