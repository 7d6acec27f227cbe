#include "augcat/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "augcat/checks.hpp"
#include "augcat/constructions.hpp"
#include "augcat/errors.hpp"
#include "augcat/homotopy.hpp"
#include "augcat/serialize.hpp"

namespace augcat {

namespace {

// Raised for property violations that end the command with exit code 1.
struct Violated {
  json report;
};

struct Globals {
  int cap = -1;
  std::uint64_t seed = 0;
  std::uint64_t max_states = 10'000'000;
  bool timing = false;
  std::string output;
};

class Session {
 public:
  Session(std::ostream& out, std::vector<std::string> argv) : out_(out), argv_(std::move(argv)) {}

  Globals g;
  ShapeRegistry shapes;

  json read(const std::string& path) {
    std::string text;
    if (path == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw ArgumentError("cannot open " + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    for (unsigned char c : text) {
      digest_ ^= c;
      digest_ *= 1099511628211ull;
    }
    return json::parse(text);
  }

  HomSearchOptions search() const {
    HomSearchOptions o;
    o.max_states = g.max_states;
    return o;
  }

  json report(const std::string& verdict) const {
    json r;
    r["command"] = argv_;
    std::ostringstream d;
    d << std::hex << std::setw(16) << std::setfill('0') << digest_;
    r["inputs_digest"] = d.str();
    r["seed"] = g.seed;
    r["verdict"] = verdict;
    return r;
  }

  // Data goes to --output when given (and the report to stdout), else to stdout.
  void emit_data(const json& data, json rep) {
    if (g.output.empty()) {
      out_ << data.dump(2) << "\n";
      return;
    }
    std::ofstream f(g.output);
    if (!f) throw ArgumentError("cannot write " + g.output);
    f << data.dump(2) << "\n";
    rep["output"] = g.output;
    emit(rep);
  }
  void emit_text(const std::string& text) {
    if (g.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(g.output);
    if (!f) throw ArgumentError("cannot write " + g.output);
    f << text;
  }
  void emit(json rep) {
    if (g.timing) rep["timing_seconds"] = elapsed();
    out_ << rep.dump(2) << "\n";
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::ostream& out_;
  std::vector<std::string> argv_;
  std::uint64_t digest_ = 1469598103934665603ull;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json report_json(const CheckReport& r) {
  json j = {{"name", r.name}, {"ok", r.ok()}, {"violation_count", r.violation_count}};
  json v = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i)
    v.push_back({{"rule", r.violations[i].rule}, {"message", r.violations[i].message}});
  j["violations"] = std::move(v);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

json horns_json(const FiniteCategory& C, const KanReport& k) {
  json h = json::array();
  for (const auto& c : k.horns)
    h.push_back({{"object", C.object(c.object).id},
                 {"face", C.morphism(c.face).id},
                 {"horn_maps", c.horn_maps},
                 {"unfilled", c.unfilled},
                 {"max_fillers", c.max_fillers}});
  return h;
}

void finish(Session& s, json rep, bool ok) {
  rep["verdict"] = ok ? "pass" : "fail";
  if (!ok) throw Violated{std::move(rep)};
  s.emit(std::move(rep));
}

ObjId object_arg(const FiniteCategory& C, const std::string& id) { return C.object_by_id(id); }

int element_arg(const Presheaf& X, ObjId a, const std::string& label) {
  for (int x = 0; x < X.size(a); ++x)
    if (X.label(a, x) == label) return x;
  throw RangeError("no element " + label + " in level " + X.cat().object(a).id);
}

SmallCategory group_arg(Session& s, const std::string& arg) {
  auto number = [&](std::size_t pos) { return std::stoi(arg.substr(pos)); };
  if (arg.rfind("Z/", 0) == 0) return cyclic_group(number(2));
  if (arg.rfind("pair:", 0) == 0) return pair_groupoid(number(5));
  if (arg.rfind("monoid:", 0) == 0) return saturating_monoid(number(7));
  return small_category_from_json(s.read(arg));
}

json subobject_data(const Subobject& S) { return presheaf_to_json(*subobject_inclusion(S).source); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Session s(out, args);
  CLI::App app{"Finite shape categories, presheaves and their homotopy checks", "augcat"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--cap", s.g.cap, "Degree cap (default: everything available)");
  app.add_option("--seed", s.g.seed, "Seed for sampling commands");
  app.add_option("--max-states", s.g.max_states, "Search guard");
  app.add_flag("--timing", s.g.timing, "Add wall time to reports");
  app.add_option("-o,--output", s.g.output, "Write data to this file instead of stdout");

  std::function<void()> action;
  auto on = [&](CLI::App* sub, std::function<void()> f) { sub->callback([&action, f] { action = f; }); };

  std::string kind = "simplex", object, mode, face, gate = "strict", file, file2, tree_text, group, target_kind = "cyclic";
  int max = 3, arity = 2, degree = 1;
  bool cyclic_flag = false, explicit_flag = false;

  auto add_shape_opts = [&](CLI::App* sub) {
    sub->add_option("--kind", kind, "simplex|cyclic|planar-tree|tree|amalgam");
    sub->add_option("--max", max, "Truncation degree (vertices for trees)");
    sub->add_option("--arity", arity, "Maximal vertex arity for trees");
  };
  auto shape_now = [&] { return s.shapes.get(shape_kind_from_string(kind), max, arity); };

  // shape
  auto* shape = app.add_subcommand("shape", "Build or verify shape categories");
  shape->require_subcommand(1);
  auto* shape_build = shape->add_subcommand("build", "Emit a shape category as JSON");
  add_shape_opts(shape_build);
  on(shape_build, [&] { s.emit_data(shape_to_json(*shape_now()), s.report("pass")); });
  auto* shape_verify = shape->add_subcommand("verify", "Run the axiom suites on a shape file");
  shape_verify->add_option("file", file)->required();
  on(shape_verify, [&] {
    const auto S = s.shapes.resolve(s.read(file));
    const auto& C = *S->cat;
    json checks = json::array();
    bool ok = true;
    auto add = [&](const CheckReport& r) {
      ok &= r.ok();
      checks.push_back(report_json(r));
    };
    add(check_category_axioms(C));
    if (S->kind != ShapeKind::custom || std::count(S->reedy.plus.begin(), S->reedy.plus.end(), 1) > 0) {
      add(check_generalized_reedy(C, S->reedy));
      add(check_ez(C, S->reedy));
    }
    if (S->crossed) add(check_crossed_group(C, *S->crossed));
    if (S->has_delta()) {
      add(check_functor(S->delta));
      const auto sieve = check_sieve(S->delta);
      checks.push_back({{"name", "simplex sieve"}, {"holds", sieve.holds}, {"witness", sieve.witness}});
    }
    auto rep = s.report("");
    rep["shape"] = shape_ref(*S);
    rep["objects"] = C.object_count();
    rep["morphisms"] = C.morphism_count();
    rep["checks"] = std::move(checks);
    finish(s, std::move(rep), ok);
  });

  // presheaf
  auto* pre = app.add_subcommand("presheaf", "Constructions on presheaves");
  pre->require_subcommand(1);
  auto* p_rep = pre->add_subcommand("representable", "Representable presheaf of an object");
  add_shape_opts(p_rep);
  p_rep->add_option("--object", object)->required();
  on(p_rep, [&] {
    const auto S = shape_now();
    s.emit_data(presheaf_to_json(*representable(S, object_arg(*S->cat, object))), s.report("pass"));
  });
  auto* p_bd = pre->add_subcommand("boundary", "Boundary of a representable");
  add_shape_opts(p_bd);
  p_bd->add_option("--object", object)->required();
  on(p_bd, [&] {
    const auto S = shape_now();
    s.emit_data(subobject_data(boundary(S, object_arg(*S->cat, object))), s.report("pass"));
  });
  auto* p_horn = pre->add_subcommand("horn", "Horn of a representable at an elementary face");
  add_shape_opts(p_horn);
  p_horn->add_option("--object", object)->required();
  p_horn->add_option("--face", face, "Morphism id of the omitted face")->required();
  on(p_horn, [&] {
    const auto S = shape_now();
    s.emit_data(subobject_data(horn(S, object_arg(*S->cat, object), S->cat->morphism_by_id(face))),
                s.report("pass"));
  });
  auto* p_sk = pre->add_subcommand("sk", "Skeleton of a presheaf");
  p_sk->add_option("--degree", degree)->required();
  p_sk->add_option("file", file)->required();
  on(p_sk, [&] {
    const auto X = presheaf_from_json(s.read(file), s.shapes);
    s.emit_data(subobject_data(skeleton(X, degree)), s.report("pass"));
  });
  auto* p_cosk = pre->add_subcommand("cosk", "Coskeleton of a presheaf, all levels explicit");
  p_cosk->add_option("--degree", degree)->required();
  p_cosk->add_option("file", file)->required();
  on(p_cosk, [&] {
    const auto X = presheaf_from_json(s.read(file), s.shapes);
    s.emit_data(presheaf_to_json(*coskeleton(truncate(X, degree), degree).presheaf), s.report("pass"));
  });
  auto* p_normal = pre->add_subcommand("normal-check", "Is a map a normal monomorphism");
  p_normal->add_option("file", file, "Map JSON")->required();
  on(p_normal, [&] {
    const auto f = map_from_json(s.read(file), s.shapes);
    const auto v = is_normal_mono(f);
    auto rep = s.report("");
    rep["normal_mono"] = v.holds;
    rep["witness"] = v.witness;
    finish(s, std::move(rep), v.holds);
  });
  auto* p_hom = pre->add_subcommand("hom-count", "Number of maps between two presheaves");
  p_hom->add_option("source", file)->required();
  p_hom->add_option("target", file2)->required();
  on(p_hom, [&] {
    const auto X = presheaf_from_json(s.read(file), s.shapes);
    const auto Y = presheaf_from_json(s.read(file2), s.shapes);
    auto o = s.search();
    o.cap = s.g.cap;
    auto rep = s.report("pass");
    rep["count"] = hom_count(*X, *Y, o);
    s.emit(std::move(rep));
  });
  auto* p_prod = pre->add_subcommand("product", "Levelwise product");
  p_prod->add_option("first", file)->required();
  p_prod->add_option("second", file2)->required();
  on(p_prod, [&] {
    const auto X = presheaf_from_json(s.read(file), s.shapes);
    const auto Y = presheaf_from_json(s.read(file2), s.shapes);
    if (X->shape_ptr() != Y->shape_ptr()) throw ArgumentError("factors live over different shapes");
    s.emit_data(presheaf_to_json(*product(X, Y).presheaf), s.report("pass"));
  });
  auto* p_rand = pre->add_subcommand("random", "Seeded random presheaf");
  add_shape_opts(p_rand);
  on(p_rand, [&] {
    std::mt19937_64 rng(s.g.seed);
    s.emit_data(presheaf_to_json(*random_presheaf(shape_now(), rng)), s.report("pass"));
  });

  // check
  auto* check = app.add_subcommand("check", "Horn-filling and hypergroupoid checks");
  check->require_subcommand(1);
  auto cap_of = [&](const Presheaf& X) { return s.g.cap < 0 ? X.cap() : std::min(s.g.cap, X.cap()); };
  auto* c_kan = check->add_subcommand("kan", "Fillers for all horns up to the cap");
  c_kan->add_option("file", file)->required();
  on(c_kan, [&] {
    const auto X = presheaf_from_json(s.read(file), s.shapes);
    const auto k = is_kan(X, cap_of(*X), s.search());
    auto rep = s.report("");
    rep["cap"] = cap_of(*X);
    rep["report"] = report_json(k.report);
    rep["horns"] = horns_json(X->cat(), k);
    finish(s, std::move(rep), k.ok());
  });
  auto* c_hyp = check->add_subcommand("hypergroupoid", "Horn maps covering, bijective above the degree");
  c_hyp->add_option("--degree", degree)->required();
  c_hyp->add_option("file", file)->required();
  on(c_hyp, [&] {
    const auto X = presheaf_from_json(s.read(file), s.shapes);
    const auto k = is_hypergroupoid(X, degree, cap_of(*X), set_surjective, s.search());
    auto rep = s.report("");
    rep["degree"] = degree;
    rep["cap"] = cap_of(*X);
    rep["report"] = report_json(k.report);
    rep["horns"] = horns_json(X->cat(), k);
    finish(s, std::move(rep), k.ok());
  });
  auto* c_triv = check->add_subcommand("trivial-rel", "Trivial relative hypergroupoid condition for a map");
  c_triv->add_option("--degree", degree)->required();
  c_triv->add_option("file", file, "Map JSON")->required();
  on(c_triv, [&] {
    const auto f = map_from_json(s.read(file), s.shapes);
    const int cap = s.g.cap < 0 ? f.cap() : std::min(s.g.cap, f.cap());
    const auto r = is_trivial_relative_hypergroupoid(f, degree, cap, s.search());
    auto rep = s.report("");
    rep["degree"] = degree;
    rep["cap"] = cap;
    rep["report"] = report_json(r);
    finish(s, std::move(rep), r.ok());
  });
  auto* c_cosk = check->add_subcommand("cosk-identity", "X = Y x_{cosk Y} cosk X for a trivial relative map");
  c_cosk->add_option("--degree", degree)->required();
  c_cosk->add_option("file", file, "Map JSON")->required();
  on(c_cosk, [&] {
    const auto f = map_from_json(s.read(file), s.shapes);
    const auto v = check_cosk_identity(f, degree);
    auto rep = s.report("");
    rep["holds"] = v.holds;
    rep["witness"] = v.witness;
    finish(s, std::move(rep), v.holds);
  });
  auto* c_pp = check->add_subcommand("pushout-product", "Pushout-product of two monomorphisms is normal");
  c_pp->add_option("first", file, "Map JSON")->required();
  c_pp->add_option("second", file2, "Map JSON")->required();
  on(c_pp, [&] {
    const auto f = map_from_json(s.read(file), s.shapes);
    const auto g = map_from_json(s.read(file2), s.shapes);
    const auto r = pushout_product_check(f, g);
    auto rep = s.report("");
    rep["normal_mono"] = r.normal_mono;
    rep["witness"] = r.witness;
    rep["first_linear"] = r.f_linear == Linearity::linear ? "linear" : "unknown";
    rep["second_linear"] = r.g_linear == Linearity::linear ? "linear" : "unknown";
    finish(s, std::move(rep), r.normal_mono);
  });

  // pi
  auto* pi = app.add_subcommand("pi", "Homotopy classes of cells with boundary at a basepoint");
  std::string basepoint;
  pi->add_option("--object", object)->required();
  pi->add_option("--basepoint", basepoint, "Element of the point level")->required();
  pi->add_option("file", file)->required();
  on(pi, [&] {
    const auto X = presheaf_from_json(s.read(file), s.shapes);
    const ObjId a = object_arg(X->cat(), object);
    const ObjId p0 = X->shape().delta.on_objects.at(0);
    const auto r = pi_a(X, element_arg(*X, p0, basepoint), a, s.search());
    auto rep = s.report("pass");
    rep["object"] = object;
    rep["basepoint"] = basepoint;
    rep["class_count"] = r.class_count;
    json reps = json::array();
    for (std::size_t k = 0; k < r.representatives.size(); ++k)
      reps.push_back({{"element", X->label(a, r.representatives[k])}, {"class", r.class_of[k]}});
    rep["representatives"] = std::move(reps);
    rep["closure_added"] = r.closure_added;
    s.emit(std::move(rep));
  });

  // nerve
  auto* nv = app.add_subcommand("nerve", "Nerve of a small category, or cyclic nerve of a groupoid");
  nv->add_flag("--cyclic", cyclic_flag);
  nv->add_flag("--explicit", explicit_flag, "Store every level even for groupoids");
  nv->add_option("--group", group, "Z/n, pair:k, monoid:k or a JSON table file")->required();
  on(nv, [&] {
    const auto C = group_arg(s, group);
    const int top = s.g.cap < 0 ? 3 : s.g.cap;
    const auto X = cyclic_flag ? cyclic_nerve(C, s.shapes.get(ShapeKind::cyclic, top))
                               : nerve(C, s.shapes.get(ShapeKind::simplex, top), explicit_flag);
    s.emit_data(presheaf_to_json(*X), s.report("pass"));
  });

  // adjoint
  auto* adj = app.add_subcommand("adjoint", "The adjoints i_! and i^* along the simplex embedding");
  adj->add_option("mode", mode, "shriek|star|check")->required()->check(CLI::IsMember({"shriek", "star", "check"}));
  adj->add_option("--shape", target_kind, "cyclic|tree|planar-tree");
  adj->add_option("--arity", arity);
  adj->add_option("file", file)->required();
  adj->add_option("second", file2, "Presheaf over the target shape (check mode)");
  on(adj, [&] {
    const auto tk = shape_kind_from_string(target_kind);
    if (mode == "star") {
      const auto Y = presheaf_from_json(s.read(file), s.shapes);
      s.emit_data(presheaf_to_json(*i_star(Y)), s.report("pass"));
      return;
    }
    const json jx = s.read(file);
    const int top = jx.at("shape").at("max").get<int>();
    const auto target = s.shapes.get(tk, top, arity);
    const auto X = presheaf_from_json(jx, s.shapes);
    if (mode == "shriek") {
      s.emit_data(presheaf_to_json(*i_shriek(X, target).presheaf), s.report("pass"));
      return;
    }
    if (file2.empty()) throw ArgumentError("check mode needs a second presheaf");
    const auto Y = presheaf_from_json(s.read(file2), s.shapes);
    if (Y->shape_ptr() != target) throw ArgumentError("second presheaf is not over the target shape");
    const auto r = adjunction_check(X, Y, s.search());
    auto rep = s.report("");
    rep["left_maps"] = r.left;
    rep["right_maps"] = r.right;
    rep["bijection"] = r.bijection;
    rep["witness"] = r.witness;
    finish(s, std::move(rep), r.bijection);
  });

  // amalgamate
  auto* am = app.add_subcommand("amalgamate", "Pushout of the cyclic category and the tree category over the simplex category");
  am->add_option("--max", max, "Maximal vertex count of trees");
  am->add_option("--arity", arity);
  am->add_option("--gate", gate, "strict|embedding")->check(CLI::IsMember({"strict", "embedding"}));
  on(am, [&] {
    const auto A = s.shapes.get(ShapeKind::cyclic, max);
    const auto B = s.shapes.get(ShapeKind::tree, max, arity);
    try {
      const auto r = amalgamate(*A, *B, gate == "strict" ? AmalgamGate::strict : AmalgamGate::embedding);
      auto rep = s.report("pass");
      rep["gate"] = gate;
      rep["objects"] = r.shape->cat->object_count();
      rep["morphisms"] = r.shape->cat->morphism_count();
      s.emit_data(shape_to_json(*r.shape), rep);
    } catch (const AmalgamationRefused& e) {
      auto rep = s.report("fail");
      rep["gate"] = gate;
      rep["refused"] = e.what();
      throw Violated{std::move(rep)};
    }
  });

  // export
  auto* ex = app.add_subcommand("export", "DOT export of a shape, category, presheaf or tree");
  ex->add_option("file", file, "JSON file");
  ex->add_option("--tree", tree_text, "Tree in text form, e.g. (||)");
  bool all_morphisms = false;
  ex->add_flag("--all", all_morphisms, "Every non-identity morphism instead of generators");
  on(ex, [&] {
    if (!tree_text.empty()) {
      s.emit_text(export_dot(PlanarTree::parse(tree_text)));
      return;
    }
    if (file.empty()) throw ArgumentError("export needs a file or --tree");
    const json j = s.read(file);
    if (j.contains("levels")) {
      s.emit_text(export_dot(*presheaf_from_json(j, s.shapes)));
    } else if (j.contains("kind")) {
      s.emit_text(export_dot(*s.shapes.resolve(j)->cat, !all_morphisms));
    } else {
      s.emit_text(export_dot(*category_from_json(j), !all_morphisms));
    }
  });

  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--cap" || a == "--seed" || a == "--max-states" || a == "-o" || a == "--output") {
      ++i;
      continue;
    }
    if (a.empty() || a[0] == '-') continue;
    const auto subs = app.get_subcommands([](CLI::App*) { return true; });
    if (std::none_of(subs.begin(), subs.end(), [&](CLI::App* sub) { return sub->get_name() == a; })) {
      err << "error: unknown subcommand '" << a << "'\n";
      return 2;
    }
    break;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  }
  try {
    action();
    return 0;
  } catch (const Violated& v) {
    s.emit(v.report);
    return 1;
  } catch (const EnumerationLimit& e) {
    auto rep = s.report("inconclusive");
    rep["reason"] = e.what();
    rep["states"] = e.states;
    s.emit(std::move(rep));
    err << "error: search guard exceeded after " << e.states << " states\n";
    return 2;
  } catch (const json::parse_error& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "error: unexpected JSON content: " << e.what() << "\n";
  } catch (const TruncationError& e) {
    err << "error: truncation mismatch: " << e.what() << "\n";
  } catch (const RangeError& e) {
    err << "error: out of range: " << e.what() << "\n";
  } catch (const ArgumentError& e) {
    err << "error: invalid argument: " << e.what() << "\n";
  } catch (const StructuralError& e) {
    err << "error: invalid input structure: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace augcat
