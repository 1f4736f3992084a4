#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "delpezzo/delpezzo_sets.hpp"
#include "delpezzo/io.hpp"
#include "delpezzo/linear_series.hpp"
#include "delpezzo/real_structures.hpp"
#include "delpezzo/root_classification.hpp"
#include "delpezzo/surface_builder.hpp"
#include "delpezzo/weyl_oracle.hpp"

using namespace delpezzo;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Output {
  Json payload;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string join(const std::vector<PicardVector>& vs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += sep;
    s += to_string(vs[i]);
  }
  return s;
}

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void print_csv(const Output& o, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
    out << "\n";
  };
  line(o.header);
  for (const auto& r : o.rows) line(r);
}

void print_table(const Output& o, std::ostream& out) {
  std::vector<std::size_t> w(o.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  };
  widen(o.header);
  for (const auto& r : o.rows) widen(r);
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += "  ";
      s += r[i];
      if (i + 1 < r.size()) s += std::string(w[i] - r[i].size(), ' ');
    }
    out << s << "\n";
  };
  line(o.header);
  for (const auto& r : o.rows) line(r);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

int thread_count() {
  const char* env = std::getenv("DELPEZZO_THREADS");
  if (!env) return 1;
  try {
    return std::max(1, std::stoi(env));
  } catch (const std::exception&) {
    return 1;
  }
}

Output classify_roots(int rank) {
  Output o;
  o.header = {"index", "rank", "label", "type"};
  o.payload = Json::array();
  for (const auto& e : rank ? classify(rank) : classify_all()) {
    o.payload.push_back({{"index", e.index}, {"rank", e.rank}, {"label", e.label.tokens()}, {"type", e.type}});
    o.rows.push_back({std::to_string(e.index), std::to_string(e.rank), "{" + e.label.tokens() + "}", e.type});
  }
  return o;
}

Output classify_real_rows(int rank) {
  Output o;
  o.header = {"index", "rank", "c1", "type", "f0", "f1", "f2", "images"};
  o.payload = Json::array();
  for (const auto& e : rank ? classify_real(rank) : classify_real_all()) {
    o.payload.push_back({{"index", e.index},
                         {"rank", e.rank},
                         {"c1", e.c1_index},
                         {"type", e.type},
                         {"f0", e.f0},
                         {"f1", e.f1},
                         {"f2", e.f2},
                         {"images", to_json(e.images())}});
    o.rows.push_back({std::to_string(e.index), std::to_string(e.rank), std::to_string(e.c1_index), e.type,
                      std::to_string(e.f0), std::to_string(e.f1), std::to_string(e.f2), join(e.images())});
  }
  return o;
}

Output sets(int rank, const std::string& label, const std::string& source) {
  Output o;
  o.header = {"set", "class"};
  std::vector<std::pair<std::string, std::vector<PicardVector>>> parts;
  if (!label.empty()) {
    auto X = make_surface_lattice(parse_label(label));
    parts = {{"F>=0", effective_zero_set(X)}, {"E>=0", indecomposable_one_set(X)}, {"G_irr", irreducible_two_set(X)}};
    o.payload["label"] = X.label.text();
  } else {
    if (!rank) throw Error(ErrorKind::Parse, "sets needs --rank or --label");
    auto S = source == "form" ? del_pezzo_sets_from_form(rank) : del_pezzo_sets(rank);
    parts = {{"F", S.F}, {"E", S.E}, {"G", S.G}};
    o.payload["rank"] = rank;
  }
  for (const auto& [name, vs] : parts) {
    o.payload[name] = {{"size", vs.size()}, {"classes", to_json(vs)}};
    for (const auto& v : vs) o.rows.push_back({name, to_string(v)});
  }
  return o;
}

Output oracle(int rank) {
  auto part = orbit_classify(rank);
  auto rows = classify(rank);
  auto ids = orbit_ids(part, rows);
  const auto& rs = root_system(rank);
  Output o;
  o.header = {"orbit", "type", "members", "class", "basis"};
  Json orbits = Json::array();
  for (const auto& orb : part.orbits) {
    int cls = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == orb.id) cls = rows[i].index;
    std::vector<PicardVector> basis;
    for (int b : orb.basis) basis.push_back(rs.root(b));
    orbits.push_back({{"orbit", orb.id}, {"type", orb.type}, {"members", orb.members.size()}, {"class", cls},
                      {"basis", to_json(basis)}});
    o.rows.push_back({std::to_string(orb.id), orb.type, std::to_string(orb.members.size()), std::to_string(cls),
                      join(basis)});
  }
  o.payload = {{"rank", rank},
               {"group_order", part.group_order},
               {"orbits", std::move(orbits)},
               {"agrees_with_classification", agrees_with_classification(part)}};
  return o;
}

void flatten(const BasePointForest& f, const std::string& path, Output& o) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& p = f[i];
    std::string here = path + (path.empty() ? "" : "/") + chart_name(p.chart) + std::to_string(i);
    o.rows.push_back({here, chart_name(p.chart), std::to_string(p.depth), rational_text(p.a), rational_text(p.b),
                      p.overlap() ? "overlap" : std::to_string(p.multiplicity)});
    flatten(p.t, here, o);
    flatten(p.s, here, o);
  }
}

Output analyze_series(const std::string& input) {
  auto series = series_from_json(read_json_file(input));
  auto trees = get_base_points(series);
  Output o;
  o.header = {"path", "chart", "depth", "a", "b", "multiplicity"};
  o.payload = trees_to_json(trees);
  flatten(trees.z, "", o);
  flatten(trees.y, "", o);
  flatten(trees.x, "", o);
  return o;
}

Json matrix_json(const RMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(rational_text(q));
    a.push_back(std::move(r));
  }
  return a;
}

Output construct_series(const std::string& input) {
  auto j = read_json_file(input);
  auto c = construct_linear_series(j.at("degree").get<int>(), trees_from_json(j.at("trees")));
  Output o;
  o.header = {"generator", "polynomial"};
  o.payload = series_to_json(c.series);
  o.payload["conditions"] = matrix_json(c.conditions);
  o.payload["kernel"] = matrix_json(c.kernel);
  for (std::size_t i = 0; i < c.series.generators.size(); ++i)
    o.rows.push_back({std::to_string(i + 1), c.series.generators[i].to_string(projective_names())});
  return o;
}

Output build(const std::string& label_text, std::uint64_t seed, const std::string& config) {
  auto label = parse_label(label_text);
  BuiltSurface s = config.empty() ? build_surface(label, seed) : make_surface(label, configuration_from_json(read_json_file(config)));
  auto rep = verify_c1_object(s);
  auto E = indecomposable_one_set(s.lattice);
  auto G = irreducible_two_set(s.lattice);
  Output o;
  o.payload = {{"label", label.text()},
               {"realized_label", s.lattice.label.text()},
               {"seed", seed},
               {"attempts", s.attempts},
               {"degree", s.lattice.degree()},
               {"configuration", configuration_to_json(s.configuration)},
               {"series", series_to_json(s.parametrization)},
               {"effective_roots", to_json(rep.effective)},
               {"E>=0", to_json(E)},
               {"G_irr", to_json(G)},
               {"conic_families", conic_family_count(s)},
               {"verification",
                {{"ok", rep.ok()}, {"equivalent", rep.equivalent}, {"missing", to_json(rep.missing)},
                 {"unexpected", to_json(rep.unexpected)}}}};
  o.header = {"field", "value"};
  o.rows = {{"label", label.text()},
            {"realized_label", s.lattice.label.text()},
            {"degree", std::to_string(s.lattice.degree())},
            {"attempts", std::to_string(s.attempts)},
            {"generators", std::to_string(s.parametrization.generators.size())},
            {"effective_roots", join(rep.effective)},
            {"E>=0", std::to_string(E.size())},
            {"G_irr", std::to_string(G.size())},
            {"verified", rep.ok() && rep.equivalent ? "yes" : "no"}};
  for (std::size_t i = 0; i < s.parametrization.generators.size(); ++i)
    o.rows.push_back({"g" + std::to_string(i + 1), s.parametrization.generators[i].to_string(projective_names())});
  return o;
}

Output conic_families(int degree, const std::string& mode) {
  if (degree != 4) throw Error(ErrorKind::RankOutOfRange, "conic family tables are available for degree 4 only");
  auto t = conic_families_degree4(mode == "span" ? Disjointness::Span : Disjointness::Roots, thread_count());
  Output o;
  o.header = {"class", "type"};
  for (int c : t.columns) o.header.push_back(std::to_string(c));
  Json cells = Json::array();
  auto classes = classify(5);
  for (int r : t.rows) {
    std::string type;
    for (const auto& e : classes)
      if (e.index == r) type = e.type;
    std::vector<std::string> row{std::to_string(r), type};
    for (int c : t.columns) {
      const auto& v = t.at(r, c);
      std::string s;
      for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
      row.push_back(s.empty() ? "-" : s);
      cells.push_back({{"class", r}, {"real", c}, {"families", v}});
    }
    o.rows.push_back(std::move(row));
  }
  o.payload = {{"degree", degree}, {"mode", mode}, {"rows", t.rows}, {"columns", t.columns}, {"cells", std::move(cells)}};
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Del Pezzo surfaces: root subsystems, real structures, linear series"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json", out_path;
  app.add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", out_path, "also write the JSON document to this file");
  app.set_version_flag("--version", kVersion);

  int rank = 0, degree = 4;
  std::string label, input, config, source = "table", mode = "roots";
  std::uint64_t seed = 1;
  Json inputs = Json::object();

  auto* c_roots = app.add_subcommand("classify-roots", "root subsystem classes up to Cremona equivalence");
  c_roots->add_option("--rank", rank)->check(CLI::Range(2, 8));
  auto* c_real = app.add_subcommand("classify-real", "real structures compatible with each class");
  c_real->add_option("--rank", rank)->check(CLI::Range(2, 8));
  auto* c_sets = app.add_subcommand("sets", "zero, one and two sets; with --label the surface's subsets");
  c_sets->add_option("--rank", rank)->check(CLI::Range(2, 8));
  c_sets->add_option("--label", label, "e.g. \"1123,45;5\"");
  c_sets->add_option("--source", source)->check(CLI::IsMember({"table", "form"}));
  auto* c_oracle = app.add_subcommand("oracle", "brute-force Weyl orbits of root subsystems");
  c_oracle->add_option("--rank", rank)->required()->check(CLI::Range(2, 8));
  auto* c_analyze = app.add_subcommand("analyze-series", "base points of a linear series given as JSON");
  c_analyze->add_option("--input", input)->required();
  auto* c_construct = app.add_subcommand("construct-series", "linear series with prescribed base points");
  c_construct->add_option("--input", input, "JSON with degree and trees")->required();
  auto* c_build = app.add_subcommand("build-surface", "point configuration and cubic series for a label");
  c_build->add_option("--label", label)->required();
  c_build->add_option("--seed", seed);
  c_build->add_option("--config", config, "explicit configuration JSON instead of sampling");
  auto* c_conic = app.add_subcommand("conic-families", "real conic family counts");
  c_conic->add_option("--degree", degree);
  c_conic->add_option("--mode", mode)->check(CLI::IsMember({"roots", "span"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto* sub = app.get_subcommands().front();
  std::string command = sub->get_name();
  for (const auto* opt : sub->get_options())
    if (opt->count() && !opt->get_lnames().empty()) inputs[opt->get_lnames().front()] = opt->as<std::string>();

  Output o;
  try {
    if (sub == c_roots) o = classify_roots(rank);
    else if (sub == c_real) o = classify_real_rows(rank);
    else if (sub == c_sets) o = sets(rank, label, source);
    else if (sub == c_oracle) o = oracle(rank);
    else if (sub == c_analyze) o = analyze_series(input);
    else if (sub == c_construct) o = construct_series(input);
    else if (sub == c_build) o = build(label, seed, config);
    else o = conic_families(degree, mode);
  } catch (const Error& e) {
    std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: Parse: " << e.what() << "\n";
    return 1;
  }

  Json doc = {{"command", command}, {"version", kVersion}, {"inputs", inputs}, {"payload", o.payload}};
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    f << doc.dump(2) << "\n";
  }
  if (format == "json") std::cout << doc.dump(2) << "\n";
  else if (format == "csv") print_csv(o, std::cout);
  else print_table(o, std::cout);
  return 0;
}
