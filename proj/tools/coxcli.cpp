// Command-line front end: classification, group enumeration, universal
// spaces, simplex sweeps, and the flat-model demos. JSON output has sorted
// keys throughout so identical inputs produce byte-identical bytes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cox/chamber.hpp"
#include "cox/classify.hpp"
#include "cox/flat.hpp"
#include "cox/matrix.hpp"
#include "cox/reflection_rep.hpp"
#include "cox/simplex_enum.hpp"
#include "cox/universal_space.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw cox::ValidationError(cox::ValidationError::Code::BadScene,
                               "cannot read input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw cox::ValidationError(cox::ValidationError::Code::BadScene,
                               what + " is not valid JSON");
  return j;
}

// --out is relative to COXCLI_OUT_DIR when that is set and the path is bare.
void emit(const std::string& payload, const std::string& out) {
  if (out.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::string path = out;
  const char* dir = std::getenv("COXCLI_OUT_DIR");
  if (dir && *dir && out.front() != '/' && out.find('/') == std::string::npos)
    path = std::string(dir) + "/" + out;
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw cox::ValidationError(cox::ValidationError::Code::BadScene,
                               "cannot open output file: " + path);
  f << payload;
}

void emit_json(const json& j, const std::string& out) { emit(j.dump(2), out); }

cox::CoxeterMatrix load_matrix(const std::string& inline_text,
                               const std::string& path) {
  if (!inline_text.empty() && !path.empty())
    throw cox::ValidationError(cox::ValidationError::Code::BadToken,
                               "give the matrix inline or as a file, not both");
  if (inline_text.empty() && path.empty())
    throw cox::ValidationError(cox::ValidationError::Code::Empty,
                               "no Coxeter matrix given (use --matrix or --input)");
  std::string text = inline_text.empty() ? slurp(path) : inline_text;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return cox::matrix_from_json(parse_json(text, "matrix input"));
  return cox::CoxeterMatrix::parse(text);
}

struct Scenario {
  std::vector<cox::Line2> mirrors;
  Eigen::Vector2d base_point{0, 0};
  int radius = 6;
  std::optional<cox::Lattice2> lattice;
};

// Scene file: {"mirrors": [{"point": [x, y], "direction": [x, y]}, ...],
//              "base_point": [x, y], "radius": r,
//              "lattice": [[b1x, b1y], [b2x, b2y]]}  (lattice optional)
Scenario load_scenario(const std::string& path) {
  json j = parse_json(slurp(path), "scene file");
  Scenario sc;
  try {
    for (const json& jm : j.at("mirrors")) {
      cox::Line2 line;
      line.point = {jm.at("point").at(0).get<double>(),
                    jm.at("point").at(1).get<double>()};
      line.direction = {jm.at("direction").at(0).get<double>(),
                        jm.at("direction").at(1).get<double>()};
      sc.mirrors.push_back(line);
    }
    if (j.contains("base_point"))
      sc.base_point = {j["base_point"].at(0).get<double>(),
                       j["base_point"].at(1).get<double>()};
    if (j.contains("radius")) sc.radius = j["radius"].get<int>();
    if (j.contains("lattice")) {
      cox::Lattice2 l;
      l.basis.col(0) = Eigen::Vector2d(j["lattice"].at(0).at(0).get<double>(),
                                       j["lattice"].at(0).at(1).get<double>());
      l.basis.col(1) = Eigen::Vector2d(j["lattice"].at(1).at(0).get<double>(),
                                       j["lattice"].at(1).at(1).get<double>());
      sc.lattice = l;
    }
  } catch (const json::exception& e) {
    throw cox::ValidationError(cox::ValidationError::Code::BadScene,
                               std::string("scene file: ") + e.what());
  }
  if (sc.mirrors.empty())
    throw cox::ValidationError(cox::ValidationError::Code::BadScene,
                               "scene file lists no mirrors");
  return sc;
}

json manifold_report_json(const cox::ManifoldReport& r) {
  auto check = [](const cox::ManifoldReport::Check& c) {
    return json{{"pass", c.pass}, {"witnesses", c.witnesses}};
  };
  return json{{"wall_cells", check(r.wall_cells)},
              {"action_free", check(r.action_free)},
              {"action_transitive", check(r.action_transitive)},
              {"connected", check(r.connected)},
              {"all_pass", r.all_pass()}};
}

json bourbaki_report_json(const cox::BourbakiReport& r) {
  auto prop = [](const cox::BourbakiReport::Property& p) {
    return json{{"pass", p.pass}, {"witnesses", p.witnesses}};
  };
  return json{{"intersection", prop(r.intersection)},
              {"partition", prop(r.partition)},
              {"exchange", prop(r.exchange)},
              {"all_pass", r.all_pass()}};
}

std::string classify_text(const cox::ClassificationReport& report) {
  std::ostringstream out;
  out << "verdict: " << cox::verdict_name(report.verdict) << "\n";
  out << "components:";
  for (const auto& c : report.components) out << " " << c.name();
  out << "\n";
  if (report.order) out << "order: " << cox::decimal_string(*report.order) << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter systems, universal chamber spaces, and flat models"};
  app.require_subcommand(1);

  std::string matrix_text, input_path, out_path, format = "json";
  int radius = -1;
  long long budget = -1;

  auto add_common = [&](CLI::App* sub, const std::string& formats) {
    sub->add_option("--format", format, "output format: " + formats)
        ->default_val("json");
    sub->add_option("--out", out_path,
                    "output file (bare names resolve inside $COXCLI_OUT_DIR)");
  };
  auto add_matrix = [&](CLI::App* sub) {
    sub->add_option("--matrix", matrix_text,
                    "Coxeter matrix, rows split by ';', 0 = infinite bond");
    sub->add_option("--input", input_path, "file with the matrix (text or JSON)");
  };
  auto want = [&](const std::string& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
      if (f == a) return;
    throw cox::ValidationError(cox::ValidationError::Code::BadToken,
                               "unsupported --format " + f + " for this subcommand");
  };

  // classify
  auto* classify = app.add_subcommand("classify", "classify a Coxeter system");
  add_common(classify, "json, text, dot");
  add_matrix(classify);
  classify->callback([&] {
    want(format, {"json", "text", "dot"});
    cox::CoxeterMatrix m = load_matrix(matrix_text, input_path);
    cox::ClassificationReport report = cox::classify_system(m);
    if (format == "dot")
      emit(cox::to_dot(cox::diagram_of(m)), out_path);
    else if (format == "text")
      emit(classify_text(report), out_path);
    else
      emit_json(cox::report_to_json(report), out_path);
  });

  // order
  auto* order = app.add_subcommand("order", "order of a finite Coxeter group");
  add_common(order, "json, text");
  add_matrix(order);
  order->callback([&] {
    want(format, {"json", "text"});
    cox::CoxeterMatrix m = load_matrix(matrix_text, input_path);
    std::string digits = cox::decimal_string(cox::finite_group_order(m));
    if (format == "text")
      emit(digits, out_path);
    else
      emit_json(json{{"order", digits}}, out_path);
  });

  // enumerate-group
  auto* enumerate = app.add_subcommand(
      "enumerate-group", "breadth-first element enumeration (shortlex words)");
  add_common(enumerate, "json, dot, text");
  add_matrix(enumerate);
  int max_len = -1;
  enumerate->add_option("--budget", budget, "element budget")->default_val(200000);
  enumerate->add_option("--max-len", max_len, "cap on word length (ball radius)");
  enumerate->callback([&] {
    want(format, {"json", "dot", "text"});
    cox::CoxeterMatrix m = load_matrix(matrix_text, input_path);
    std::optional<int> cap;
    if (max_len >= 0) cap = max_len;
    cox::ChamberGraph g =
        cox::enumerate_group(m, static_cast<std::size_t>(budget), cap);
    if (format == "dot") {
      emit(cox::graph_to_dot(g), out_path);
    } else if (format == "text") {
      std::ostringstream text;
      text << "elements: " << g.elements.size()
           << "\ncomplete: " << (g.complete ? "yes" : "no")
           << "\nmax word length: " << g.max_length << "\n";
      emit(text.str(), out_path);
    } else {
      emit_json(cox::graph_to_json(g), out_path);
    }
  });

  // check-bourbaki
  auto* bourbaki = app.add_subcommand(
      "check-bourbaki", "half-space partition properties on the full group");
  add_common(bourbaki, "json");
  add_matrix(bourbaki);
  bourbaki->add_option("--budget", budget, "element budget")->default_val(2000000);
  bourbaki->callback([&] {
    want(format, {"json"});
    cox::CoxeterMatrix m = load_matrix(matrix_text, input_path);
    cox::ChamberGraph g = cox::enumerate_group(m, static_cast<std::size_t>(budget));
    if (!g.complete)
      throw cox::ComputationError(
          "group did not close within the budget; raise --budget");
    json out = bourbaki_report_json(cox::check_bourbaki(g));
    out["elements"] = g.elements.size();
    emit_json(out, out_path);
  });

  // equip
  auto* equip = app.add_subcommand(
      "equip", "universal Coxeter equipment from a face poset with angle labels");
  add_common(equip, "json");
  std::string poset_path, labels_path, equipment_path;
  equip->add_option("--poset", poset_path, "face poset JSON")->required();
  equip->add_option("--labels", labels_path, "codimension-2 angle labels JSON")
      ->required();
  equip->callback([&] {
    want(format, {"json"});
    cox::FacePoset poset = cox::poset_from_json(parse_json(slurp(poset_path), "poset"));
    cox::AngleLabels labels =
        cox::labels_from_json(parse_json(slurp(labels_path), "labels"));
    cox::Equipment eq = cox::universal_equipment(poset, labels);
    cox::CheckReport adm = cox::is_admissible(poset, labels, eq);
    emit_json(json{{"equipment", cox::equipment_to_json(eq)},
                   {"admissible", adm.ok()},
                   {"admissibility_errors", adm.errors}},
              out_path);
  });

  // build-universal
  auto* universal = app.add_subcommand(
      "build-universal", "universal space of an equipped chamber, with checks");
  add_common(universal, "json, dot");
  std::string simplex_matrix;
  universal->add_option("--poset", poset_path, "face poset JSON");
  universal->add_option("--equipment", equipment_path, "equipment JSON");
  universal->add_option(
      "--simplex", simplex_matrix,
      "rank n+1 matrix: natural equipment of the n-simplex instead of files");
  universal->add_option("--radius", radius, "ball radius for infinite groups");
  universal->add_option("--budget", budget, "element budget")->default_val(2000000);
  universal->callback([&] {
    want(format, {"json", "dot"});
    cox::FacePoset poset;
    cox::Equipment eq{cox::CoxeterMatrix(1), {}};
    if (!simplex_matrix.empty()) {
      cox::CoxeterMatrix m = load_matrix(simplex_matrix, "");
      poset = cox::simplex_poset(m.rank() - 1);
      eq = cox::natural_simplex_equipment(m);
    } else {
      if (poset_path.empty() || equipment_path.empty())
        throw cox::ValidationError(
            cox::ValidationError::Code::BadEquipment,
            "need --poset and --equipment, or --simplex");
      poset = cox::poset_from_json(parse_json(slurp(poset_path), "poset"));
      eq = cox::equipment_from_json(parse_json(slurp(equipment_path), "equipment"));
    }
    std::optional<int> ball;
    if (radius >= 0) ball = radius;
    cox::CellComplex cx = cox::build_universal_space(
        poset, eq, ball, static_cast<std::size_t>(budget));
    if (format == "dot") {
      emit(cox::adjacency_to_dot(cx), out_path);
      return;
    }
    json out{{"complex", cox::complex_to_json(cx)},
             {"report", manifold_report_json(cox::check_manifold_and_action(cx))}};
    if (!cx.truncated) {
      out["euler"] = cox::euler_characteristic(cx);
      out["dissection_components"] = cox::generator_dissection_counts(cx);
    }
    emit_json(out, out_path);
  });

  // enumerate-simplex
  auto* simplex = app.add_subcommand(
      "enumerate-simplex", "Coxeter orbifold structures on the n-simplex");
  add_common(simplex, "json, csv");
  int dim = 2, m_max = 6;
  bool allow_inf = false;
  simplex->add_option("--n", dim, "simplex dimension")->default_val(2);
  simplex->add_option("--m-max", m_max, "largest finite bond order")->default_val(6);
  simplex->add_flag("--allow-infinity", allow_inf, "include infinite bonds");
  simplex->callback([&] {
    want(format, {"json", "csv"});
    auto records = cox::enumerate_simplex_equipments(dim, m_max, allow_inf);
    if (format == "csv")
      emit(cox::records_to_csv(records), out_path);
    else
      emit_json(cox::records_to_json(records), out_path);
  });

  // dirichlet
  auto* dirichlet = app.add_subcommand(
      "dirichlet", "Dirichlet domain of a plane reflection scene");
  add_common(dirichlet, "json, svg");
  std::string scene_path;
  dirichlet->add_option("--scene", scene_path, "scenario JSON")->required();
  dirichlet->add_option("--radius", radius, "override the scene ball radius");
  dirichlet->callback([&] {
    want(format, {"json", "svg"});
    Scenario sc = load_scenario(scene_path);
    if (radius >= 0) sc.radius = radius;
    std::vector<cox::Isometry2> gens;
    for (const cox::Line2& line : sc.mirrors)
      gens.push_back(cox::reflection_about_line(line.point, line.direction));
    cox::FlatGroupBall ball = cox::flat_group_ball(gens, sc.radius, sc.lattice);
    cox::DirichletPolygon poly = cox::dirichlet_domain(ball, sc.base_point);
    if (format == "svg") {
      emit(cox::dirichlet_svg(ball, sc.base_point, poly), out_path);
    } else {
      json out = cox::polygon_to_json(poly);
      out["ball_elements"] = ball.elements.size();
      out["radius"] = ball.radius;
      emit_json(out, out_path);
    }
  });

  // poincare
  auto* poincare = app.add_subcommand(
      "poincare", "regenerate the ball from Dirichlet-neighbor elements");
  add_common(poincare, "json");
  poincare->add_option("--scene", scene_path, "scenario JSON")->required();
  poincare->add_option("--radius", radius, "override the scene ball radius");
  poincare->callback([&] {
    want(format, {"json"});
    Scenario sc = load_scenario(scene_path);
    if (radius >= 0) sc.radius = radius;
    std::vector<cox::Isometry2> gens;
    for (const cox::Line2& line : sc.mirrors)
      gens.push_back(cox::reflection_about_line(line.point, line.direction));
    cox::FlatGroupBall ball = cox::flat_group_ball(gens, sc.radius, sc.lattice);
    cox::PoincareReport report = cox::poincare_neighbor_check(ball, sc.base_point);
    emit_json(json{{"neighbors", report.neighbors},
                   {"missing", report.missing},
                   {"pass", report.pass},
                   {"ball_elements", ball.elements.size()},
                   {"targets_word_length", ball.radius - 2}},
              out_path);
  });

  // torus-demo
  auto* torus = app.add_subcommand("torus-demo", "named torus reflection scenes");
  add_common(torus, "json, svg");
  std::string scene_name;
  torus->add_option("name", scene_name, "fig5-left | fig5-right | su3 | su2")
      ->required();
  torus->callback([&] {
    want(format, {"json", "svg"});
    cox::TorusScene scene = cox::named_scene(scene_name);
    if (format == "svg") {
      emit(cox::torus_svg(scene), out_path);
      return;
    }
    json out = cox::scene_report_json(scene);
    if (scene.generator_elements.size() >= 4) {
      std::vector<int> w13{0, 2, 0, 2}, w24{1, 3, 1, 3};
      out["relation_s1s3_squared_is_identity"] =
          cox::relation_check(scene, w13).identity;
      out["relation_s2s4_squared_is_identity"] =
          cox::relation_check(scene, w24).identity;
    }
    emit_json(out, out_path);
  });

  // su-lattices
  auto* lattices = app.add_subcommand(
      "su-lattices", "root and integral-form lattices of SU(n)");
  add_common(lattices, "json, text");
  int su_n = 3;
  lattices->add_option("--n", su_n, "rank parameter of SU(n)")->default_val(3);
  lattices->callback([&] {
    want(format, {"json", "text"});
    cox::WeightLatticeData data = cox::su_torus_data(su_n);
    if (format == "text") {
      std::ostringstream text;
      text << "SU(" << data.n << "): rank " << data.rank
           << ", [anal : root] = " << data.anal_index
           << ", [alg : root] = " << data.alg_index
           << ", |W| = " << cox::decimal_string(data.weyl_order) << "\n";
      emit(text.str(), out_path);
    } else {
      emit_json(cox::lattice_data_to_json(data), out_path);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", {{"kind", "validation"}, {"message", e.what()}}}}
                     .dump(2)
              << "\n";
    return 1;
  } catch (const cox::ValidationError& e) {
    std::cerr << json{{"error", {{"kind", "validation"}, {"message", e.what()}}}}
                     .dump(2)
              << "\n";
    return 1;
  } catch (const cox::ComputationError& e) {
    std::cerr << json{{"error", {{"kind", "computation"}, {"message", e.what()}}}}
                     .dump(2)
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}
                     .dump(2)
              << "\n";
    return 2;
  }
  return 0;
}
