// Batch front-end. Every command prints a JSON envelope
// {"command", "inputs", "report"} where inputs is self-contained, so a
// saved report can be re-run bit-for-bit with --replay.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kleislilab/algebra.hpp"
#include "kleislilab/expo.hpp"
#include "kleislilab/kleisli.hpp"
#include "kleislilab/laws.hpp"
#include "kleislilab/monad.hpp"
#include "kleislilab/surface.hpp"

using namespace klab;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::MalformedSurface, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    raise(Errc::MalformedSurface, path + ": " + e.what());
  }
  return j;
}

Caps caps_from_env() {
  Caps caps;
  const char* env = std::getenv("KLEISLILAB_CAPS");
  if (!env) return caps;
  std::stringstream ss(env);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      raise(Errc::MalformedSurface, "KLEISLILAB_CAPS: expected key=value, got '" + part + "'");
    std::string key = part.substr(0, eq);
    long long val = 0;
    try {
      val = std::stoll(part.substr(eq + 1));
    } catch (const std::exception&) {
      raise(Errc::MalformedSurface, "KLEISLILAB_CAPS: bad number in '" + part + "'");
    }
    if (key == "tx")
      caps.tx = val;
    else if (key == "ttx")
      caps.ttx = val;
    else if (key == "homs")
      caps.homs = val;
    else
      raise(Errc::MalformedSurface, "KLEISLILAB_CAPS: unknown key '" + key + "'");
  }
  return caps;
}

json caps_to_json(const Caps& c) {
  return json{{"tx", c.tx}, {"ttx", c.ttx}, {"homs", c.homs}};
}

Caps caps_of(const json& in) {
  Caps c;
  const json& j = in.at("caps");
  c.tx = j.at("tx").get<long long>();
  c.ttx = j.at("ttx").get<long long>();
  c.homs = j.at("homs").get<long long>();
  return c;
}

LawsConfig laws_config_of(const json& in) {
  LawsConfig cfg;
  cfg.mode = mode_from_string(in.at("mode").get<std::string>());
  cfg.seed = in.at("seed").get<std::uint64_t>();
  cfg.budget = in.at("budget").get<long long>();
  return cfg;
}

json values_object(const FinSet& carrier, const FinSet& vals, const std::vector<int>& tbl) {
  json o = json::object();
  for (int i = 0; i < carrier.size(); ++i) o[carrier.id(i)] = vals.id(tbl[static_cast<std::size_t>(i)]);
  return o;
}

// ---- runners: pure input-json -> report-json functions ----

json run_check_laws(const json& in) {
  Caps caps = caps_of(in);
  MonadInstance m = monad_from_json(in.at("monad"), caps);
  int size = in.at("size").get<int>();
  LawsConfig cfg;
  cfg.mode = mode_from_string(in.at("mode").get<std::string>());
  cfg.seed = in.at("seed").get<std::uint64_t>();
  cfg.budget = in.at("budget").get<long long>();
  FinSet x = FinSet::letters(size);

  CheckReport r = CheckReport::pass();
  r.absorb("monad-laws", check_monad_laws(m, x, cfg));
  r.absorb("extension-monotone", check_enrichment(m, x, x, cfg));
  r.absorb("pairing-laws", check_lax_monoidal(m, x, x, x, cfg));
  return r.to_json();
}

json run_check_monoid(const json& in) {
  KleisliMonoid s = instance_from_json(in.at("instance"), caps_of(in));
  return check_monoid(s).to_json();
}

json run_hom(const json& in) {
  Caps caps = caps_of(in);
  KleisliMonoid a = instance_from_json(in.at("a"), caps);
  KleisliMonoid b = instance_from_json(in.at("b"), caps);
  std::vector<std::vector<int>> homs = hom_set(a, b, caps.homs);
  json list = json::array();
  for (const auto& f : homs) list.push_back(values_object(a.carrier, b.carrier, f));
  json out;
  out["verdict"] = "pass";
  out["count"] = homs.size();
  out["homs"] = std::move(list);
  return out;
}

json run_box(const json& in) {
  Caps caps = caps_of(in);
  KleisliMonoid a = instance_from_json(in.at("a"), caps);
  KleisliMonoid b = instance_from_json(in.at("b"), caps);
  json out;
  out["verdict"] = "pass";
  out["instance"] = instance_to_json(box_product(a, b));
  return out;
}

json run_conv(const json& in) {
  Caps caps = caps_of(in);
  KleisliMonoid s = instance_from_json(in.at("instance"), caps);
  std::string route = in.at("route").get<std::string>();
  if (route != "generic" && route != "closed" && route != "both")
    raise(Errc::UnknownName, "conv route must be generic, closed, or both");

  FunctionSpace fs = function_space(s, test_algebra(s.m));
  TSpace th = t_obj(s.m, fs.carrier);

  json out;
  out["verdict"] = "pass";
  out["homs"] = fs.hom_count();
  out["elements"] = json::array();
  for (int k = 0; k < th.size(); ++k) {
    json row;
    row["element"] = elem_label(s.m, fs.carrier, th.at(k));
    ConvOutcome g, c;
    if (route != "closed") {
      g = conv_eval(fs, th.at(k));
      row["generic"] = {{"values", values_object(s.carrier, fs.dual.carrier, g.values)},
                        {"hom", g.hom_index < 0 ? json() : json(fs.carrier.id(g.hom_index))}};
    }
    if (route != "generic") {
      c = conv_closed_eval(fs, th.at(k));
      row["closed"] = {{"values", values_object(s.carrier, fs.dual.carrier, c.values)},
                       {"hom", c.hom_index < 0 ? json() : json(fs.carrier.id(c.hom_index))}};
    }
    if (route == "both" && out["verdict"] == json("pass") && !(g.values == c.values)) {
      out["verdict"] = "fail";
      out["witness"] = {{"check", "closed-form-agrees"}, {"element", row["element"]}};
    }
    out["elements"].push_back(std::move(row));
  }
  return out;
}

json expo_body(Verdict v, const std::string& route, json witness, json counts) {
  json out;
  out["exponentiable"] = v == Verdict::Pass ? json(true) : v == Verdict::Fail ? json(false) : json(verdict_name(v));
  out["route"] = route;
  out["witness"] = std::move(witness);
  out["counts"] = std::move(counts);
  return out;
}

std::vector<KleisliMonoid> default_test_monoids(const MonadInstance& m) {
  std::vector<KleisliMonoid> tests = enumerate_monoids(m, FinSet::letters(1));
  std::vector<KleisliMonoid> two = enumerate_monoids(m, FinSet::letters(2));
  tests.insert(tests.end(), two.begin(), two.end());
  return tests;
}

json run_expo(const json& in) {
  Caps caps = caps_of(in);
  KleisliMonoid s = instance_from_json(in.at("instance"), caps);
  std::string route = in.at("route").get<std::string>();
  LawsConfig cfg = laws_config_of(in);
  AlgebraMode amode = algebra_mode_from_string(in.at("algebra_mode").get<std::string>());

  CheckReport pre = check_monoid(s);
  if (pre.verdict != Verdict::Pass)
    raise(Errc::MalformedSurface, "expo: instance fails the monoid laws: " + pre.to_json().dump());

  auto criterion = [&]() {
    ExpoVerdict v = exponentiability_criterion(s);
    return expo_body(v.verdict, v.route, v.witness, {{"carrier", s.size()}});
  };
  auto conv_laws = [&]() {
    FunctionSpace fs = function_space(s, test_algebra(s.m));
    CheckReport r = conv_is_algebra(fs, amode, cfg);
    json counts = {{"carrier", s.size()}, {"homs", fs.hom_count()}};
    for (auto& [k, val] : r.stats.items()) counts[k] = val;
    return expo_body(r.verdict, "conv-laws", r.witness, counts);
  };
  auto couniversal = [&]() {
    std::vector<KleisliMonoid> tests;
    std::size_t skipped = 0;
    if (in.contains("tests") && !in.at("tests").is_null()) {
      // A test directory may mix instances over several theories; only those
      // over the same theory as the input can serve as test objects.
      for (const json& t : in.at("tests")) {
        KleisliMonoid k = instance_from_json(t, caps);
        if (k.m.same_theory(s.m))
          tests.push_back(std::move(k));
        else
          ++skipped;
      }
      if (tests.empty())
        raise(Errc::MonadMismatch, "expo: no test instance shares the input's theory");
    } else {
      tests = default_test_monoids(s.m);
    }
    CheckReport r = check_couniversal(s, test_algebra(s.m), tests);
    json counts = {{"carrier", s.size()}, {"tests", tests.size()}};
    if (skipped > 0) counts["tests_skipped"] = skipped;
    for (auto& [k, val] : r.stats.items()) counts[k] = val;
    return expo_body(r.verdict, "couniversal", r.witness, counts);
  };

  if (route == "criterion") return criterion();
  if (route == "conv-laws") return conv_laws();
  if (route == "couniversal") return couniversal();
  if (route != "all") raise(Errc::UnknownName, "expo route must be criterion, conv-laws, couniversal, or all");

  json parts = json::object();
  parts["criterion"] = criterion();
  try {
    parts["conv-laws"] = conv_laws();
  } catch (const Error& e) {
    parts["conv-laws"] = expo_body(Verdict::Fail, "conv-laws", {{"reason", e.what()}}, json::object());
  }
  try {
    parts["couniversal"] = couniversal();
  } catch (const Error& e) {
    if (e.code() == Errc::CapExceeded) throw;
    parts["couniversal"] = expo_body(Verdict::Fail, "couniversal", {{"reason", e.what()}}, json::object());
  }

  bool agree = true;
  json first = parts["criterion"]["exponentiable"];
  for (const char* key : {"conv-laws", "couniversal"})
    if (parts[key]["exponentiable"] != first) agree = false;
  json out;
  if (!agree) {
    out = expo_body(Verdict::Fail, "all", {{"check", "route-agreement"}}, json::object());
    out["exponentiable"] = json("route-disagreement");
  } else {
    out["exponentiable"] = first;
    out["route"] = "all";
    out["witness"] = parts["criterion"]["exponentiable"] == json(true) ? json(nullptr)
                                                                       : parts["criterion"]["witness"];
    out["counts"] = json::object();
  }
  out["routes"] = std::move(parts);
  return out;
}

json run_enumerate(const json& in) {
  Caps caps = caps_of(in);
  MonadInstance m = monad_from_json(in.at("monad"), caps);
  int size = in.at("size").get<int>();
  FinSet x = FinSet::letters(size);
  std::vector<KleisliMonoid> ms = enumerate_monoids(m, x);

  json out;
  out["verdict"] = "pass";
  out["monad"] = kind_name(m.kind);
  out["size"] = size;
  out["count"] = ms.size();

  // For the filter monad, cross-link each structure to its subset twin via
  // the generator bijection.
  std::vector<int> p_iso;
  if (m.kind == MonadKind::F) {
    MonadInstance pm = MonadInstance::make_p(caps);
    std::vector<KleisliMonoid> pms = enumerate_monoids(pm, x);
    std::map<std::vector<std::uint64_t>, int> pos;
    for (std::size_t i = 0; i < pms.size(); ++i) {
      std::vector<std::uint64_t> key;
      for (const TElem& e : pms[i].alpha) key.push_back(e.set.mask());
      pos.emplace(std::move(key), static_cast<int>(i));
    }
    for (const KleisliMonoid& fm : ms) {
      std::vector<std::uint64_t> key;
      for (const TElem& e : fm.alpha) key.push_back(e.set.mask());
      auto it = pos.find(key);
      p_iso.push_back(it == pos.end() ? -1 : it->second);
      if (it == pos.end()) out["verdict"] = "fail";
    }
  }

  std::string dir = in.contains("out") && !in.at("out").is_null() ? in.at("out").get<std::string>() : "";
  if (!dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) raise(Errc::MalformedSurface, "enumerate: cannot create " + dir + ": " + ec.message());
  }
  json items = json::array();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    json item;
    item["index"] = i;
    if (!dir.empty()) {
      char name[64];
      std::snprintf(name, sizeof name, "%s%d_%04zu.json", kind_name(m.kind), size, i);
      std::string lower(name);
      for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      std::ofstream f(dir + "/" + lower);
      if (!f) raise(Errc::MalformedSurface, "enumerate: cannot write to " + dir);
      f << instance_to_json(ms[i]).dump(2) << "\n";
      item["file"] = lower;
    }
    if (m.kind == MonadKind::F) item["p_iso"] = p_iso[i];
    items.push_back(std::move(item));
  }
  out["instances"] = std::move(items);
  return out;
}

json run_adjunction(const json& in) {
  Caps caps = caps_of(in);
  KleisliMonoid z = instance_from_json(in.at("z"), caps);
  KleisliMonoid x = instance_from_json(in.at("x"), caps);
  KleisliMonoid y = instance_from_json(in.at("y"), caps);
  AdjunctionCount c = adjunction_count(z, x, y, test_algebra(z.m));
  json out = c.to_json();
  out["verdict"] = (c.bijective && c.boxed == c.curried) ? "pass" : "fail";
  return out;
}

json dispatch(const std::string& command, const json& in) {
  if (command == "check-laws") return run_check_laws(in);
  if (command == "check-monoid") return run_check_monoid(in);
  if (command == "hom") return run_hom(in);
  if (command == "box") return run_box(in);
  if (command == "conv") return run_conv(in);
  if (command == "expo") return run_expo(in);
  if (command == "enumerate") return run_enumerate(in);
  if (command == "adjunction") return run_adjunction(in);
  raise(Errc::UnknownName, "unknown command " + command);
}

int exit_code_for(const json& body) {
  if (body.contains("exponentiable")) {
    const json& e = body.at("exponentiable");
    return e == json(true) ? 0 : 1;
  }
  std::string v = body.value("verdict", "pass");
  if (v == "pass") return 0;
  if (v == "cap-exceeded") return 3;
  return 1;
}

int emit_and_exit(const std::string& command, const json& inputs, const json& body,
                  const std::string& out_path) {
  json envelope;
  envelope["command"] = command;
  envelope["inputs"] = inputs;
  envelope["report"] = body;
  std::string text = envelope.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    f << text;
  }
  std::cout << text;
  return exit_code_for(body);
}

// Run one parsed command, mapping library errors onto the documented exit
// codes: malformed input 2, cap overruns 3, mathematical failures 1.
int run_command(const std::string& command, const json& inputs, const std::string& out_path) {
  json body;
  try {
    body = dispatch(command, inputs);
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::CapExceeded:
        body = {{"verdict", "cap-exceeded"}, {"witness", {{"reason", e.what()}}}, {"stats", json::object()}};
        return emit_and_exit(command, inputs, body, out_path);
      case Errc::MalformedSurface:
      case Errc::UnknownName:
      case Errc::ModeUnsupported:
      case Errc::NoClosedForm:
      case Errc::MonadMismatch:
        std::cerr << e.what() << "\n";
        return 2;
      case Errc::HypothesisUnmet:
        body = {{"verdict", "hypothesis-unmet"}, {"witness", {{"reason", e.what()}}}, {"stats", json::object()}};
        return emit_and_exit(command, inputs, body, out_path);
      default:
        body = {{"verdict", "fail"}, {"witness", {{"reason", e.what()}}}, {"stats", json::object()}};
        return emit_and_exit(command, inputs, body, out_path);
    }
  }
  return emit_and_exit(command, inputs, body, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite laboratory for powerset-style monads, their monoids, and exponentiability"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  long long cap_tx = -1, cap_ttx = -1, cap_homs = -1;
  std::string replay_path, out_path;
  app.add_option("--cap-tx", cap_tx, "max materialized |TX|");
  app.add_option("--cap-ttx", cap_ttx, "max materialized |TTX|");
  app.add_option("--cap-homs", cap_homs, "max candidate maps in hom enumerations");
  app.add_option("--replay", replay_path, "re-run a saved report and compare");

  std::string monad = "P", mode = "exhaustive", algebra_mode = "characterization";
  std::string quantale, kappa = "tensor", conv_route = "generic", expo_route = "criterion";
  std::uint64_t seed = 0;
  long long budget = 20000;
  int size = 2;
  std::vector<std::string> files;
  std::string tests_dir, out_dir;

  CLI::App* cl = app.add_subcommand("check-laws", "monad, extension, and pairing law suites on a letter carrier");
  cl->add_option("--monad", monad, "P, F, U, or PV")->required();
  cl->add_option("--size", size, "carrier size");
  cl->add_option("--mode", mode, "exhaustive or witness");
  cl->add_option("--quantale", quantale, "builtin name or JSON file (PV only)");
  cl->add_option("--kappa", kappa, "tensor or cartesian (PV only)");
  cl->add_option("--seed", seed, "witness sampling seed");
  cl->add_option("--budget", budget, "witness sample budget");
  cl->add_option("--out", out_path, "also write the report here");

  CLI::App* cm = app.add_subcommand("check-monoid", "monoid laws for an instance file");
  cm->add_option("file", files, "instance JSON")->expected(1)->required();
  cm->add_option("--out", out_path, "also write the report here");

  CLI::App* ch = app.add_subcommand("hom", "structure-preserving maps between two instances");
  ch->add_option("files", files, "domain and codomain instance JSON")->expected(2)->required();
  ch->add_option("--out", out_path, "also write the report here");

  CLI::App* cb = app.add_subcommand("box", "product instance with the paired structure");
  cb->add_option("files", files, "left and right instance JSON")->expected(2)->required();
  cb->add_option("--out", out_path, "also write the report here");

  CLI::App* cc = app.add_subcommand("conv", "structure map on the function space into the dualizer");
  cc->add_option("file", files, "instance JSON")->expected(1)->required();
  cc->add_option("--route", conv_route, "generic, closed, or both");
  cc->add_option("--out", out_path, "also write the report here");

  CLI::App* ce = app.add_subcommand("expo", "exponentiability verdict for an instance");
  ce->add_option("file", files, "instance JSON")->expected(1)->required();
  ce->add_option("--route", expo_route, "criterion, conv-laws, couniversal, or all");
  ce->add_option("--tests", tests_dir, "directory of test instances for the couniversal route");
  ce->add_option("--mode", mode, "exhaustive or witness law checking");
  ce->add_option("--algebra-mode", algebra_mode, "exhaustive, characterization, or witness");
  ce->add_option("--seed", seed, "witness sampling seed");
  ce->add_option("--budget", budget, "witness sample budget");
  ce->add_option("--out", out_path, "also write the report here");

  CLI::App* cn = app.add_subcommand("enumerate", "all monoids over a letter carrier");
  cn->add_option("--monad", monad, "P, F, U, or PV")->required();
  cn->add_option("--size", size, "carrier size");
  cn->add_option("--quantale", quantale, "builtin name or JSON file (PV only)");
  cn->add_option("--kappa", kappa, "tensor or cartesian (PV only)");
  cn->add_option("--out", out_dir, "directory for instance files");

  CLI::App* ca = app.add_subcommand("adjunction", "hom-set counts on both sides of currying");
  ca->add_option("files", files, "Z, X, and Y instance JSON")->expected(3)->required();
  ca->add_option("--out", out_path, "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Caps caps = caps_from_env();
    if (cap_tx > 0) caps.tx = cap_tx;
    if (cap_ttx > 0) caps.ttx = cap_ttx;
    if (cap_homs > 0) caps.homs = cap_homs;

    if (!replay_path.empty()) {
      json saved = load_json(replay_path);
      std::string command = saved.at("command").get<std::string>();
      json body = dispatch(command, saved.at("inputs"));
      bool match = body == saved.at("report");
      json envelope;
      envelope["command"] = "replay";
      envelope["source_command"] = command;
      envelope["match"] = match;
      if (!match) {
        envelope["stored"] = saved.at("report");
        envelope["recomputed"] = body;
      }
      std::cout << envelope.dump(2) << "\n";
      return match ? 0 : 1;
    }

    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    }
    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();

    json monad_json;
    if (name == "check-laws" || name == "enumerate") {
      monad_json["kind"] = monad;
      if (kind_from_string(monad) == MonadKind::PV) {
        if (quantale.empty()) quantale = "bool2";
        std::ifstream probe(quantale);
        monad_json["quantale"] = probe ? load_json(quantale) : json(quantale);
        monad_json["kappa"] = kappa;
      }
    }

    json inputs;
    inputs["caps"] = caps_to_json(caps);
    if (name == "check-laws") {
      inputs["monad"] = monad_json;
      inputs["size"] = size;
      inputs["mode"] = mode;
      inputs["seed"] = seed;
      inputs["budget"] = budget;
    } else if (name == "check-monoid") {
      inputs["instance"] = load_json(files[0]);
    } else if (name == "hom" || name == "box") {
      inputs["a"] = load_json(files[0]);
      inputs["b"] = load_json(files[1]);
    } else if (name == "conv") {
      inputs["instance"] = load_json(files[0]);
      inputs["route"] = conv_route;
    } else if (name == "expo") {
      inputs["instance"] = load_json(files[0]);
      inputs["route"] = expo_route;
      inputs["mode"] = mode;
      inputs["algebra_mode"] = algebra_mode;
      inputs["seed"] = seed;
      inputs["budget"] = budget;
      if (!tests_dir.empty()) {
        std::vector<std::string> names;
        for (const auto& entry : std::filesystem::directory_iterator(tests_dir))
          if (entry.path().extension() == ".json") names.push_back(entry.path().string());
        std::sort(names.begin(), names.end());
        json tests = json::array();
        for (const std::string& t : names) tests.push_back(load_json(t));
        inputs["tests"] = std::move(tests);
      } else {
        inputs["tests"] = nullptr;
      }
    } else if (name == "enumerate") {
      inputs["monad"] = monad_json;
      inputs["size"] = size;
      inputs["out"] = out_dir.empty() ? json(nullptr) : json(out_dir);
    } else if (name == "adjunction") {
      inputs["z"] = load_json(files[0]);
      inputs["x"] = load_json(files[1]);
      inputs["y"] = load_json(files[2]);
    }

    return run_command(name, inputs, out_path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case Errc::CapExceeded: return 3;
      case Errc::MalformedSurface:
      case Errc::UnknownName:
      case Errc::ModeUnsupported: return 2;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
