#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ginv/geninv.hpp"
#include "ginv/geometry.hpp"
#include "ginv/groupoid.hpp"
#include "ginv/io.hpp"
#include "ginv/mp_analysis.hpp"
#include "ginv/suite.hpp"

namespace {

using namespace ginv;

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kInputError = 2;

struct Globals {
  double tol_residual = ToleranceConfig{}.residual_tol;
  double tol_rank_factor = ToleranceConfig{}.rank_cutoff_factor;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  bool no_timestamp = false;

  ToleranceConfig tol() const {
    ToleranceConfig t;
    t.residual_tol = tol_residual;
    t.rank_cutoff_factor = tol_rank_factor;
    t.validate();
    return t;
  }
};

struct GroupoidArgs {
  std::string kind = "ginv";
  std::vector<std::size_t> shape;
  std::size_t n = 2;
  std::size_t points = 0;

  AlgebraShape algebra_shape() const { return AlgebraShape(shape.empty() ? std::vector<std::size_t>{n} : shape); }

  GroupoidInstance build(const ToleranceConfig& tol) const {
    if (kind == "ginv") return GroupoidInstance::ginv(algebra_shape(), tol);
    if (kind == "partial_isometry") return GroupoidInstance::partial_isometry(algebra_shape(), tol);
    if (kind == "action") return GroupoidInstance::action(n, tol);
    if (kind == "pair") {
      if (points > 0) return GroupoidInstance::pair(1, points, tol);
      return GroupoidInstance::pair(n, std::nullopt, tol);
    }
    throw input_error("unknown groupoid kind '" + kind + "'");
  }
};

void add_groupoid_options(CLI::App* cmd, GroupoidArgs& g) {
  cmd->add_option("--kind", g.kind, "ginv, partial_isometry, action or pair")
      ->check(CLI::IsMember({"ginv", "partial_isometry", "action", "pair"}));
  cmd->add_option("--shape", g.shape, "block sizes of the algebra, e.g. 2,3")->delimiter(',');
  cmd->add_option("--n", g.n, "matrix size, or dimension of R^n for action and pair")->check(CLI::PositiveNumber);
  cmd->add_option("--points", g.points, "finite pair groupoid on this many points");
}

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

AlgebraElement load_element(const std::string& path) {
  try {
    return parse_element(read_file(path));
  } catch (const error& e) {
    // Keep the category, prefix the location.
    if (dynamic_cast<const validation_error*>(&e)) throw validation_error(path + ": " + e.what());
    if (dynamic_cast<const parse_error*>(&e)) throw parse_error(path + ": " + e.what());
    throw;
  }
}

bool is_input_category(const std::string& c) { return c == "input" || c == "parse" || c == "validation"; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int emit(const ExperimentReport& rep, const Globals& g) {
  std::optional<std::string> stamp;
  if (!g.no_timestamp) stamp = utc_timestamp();
  const std::string text = g.format == "csv" ? rep.to_csv() : rep.to_json(stamp);
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      std::cerr << "ginv: cannot write '" << g.out << "'\n";
      return kInputError;
    }
    f << text;
  }
  for (const CheckRecord& r : rep.records())
    if (!r.error_category.empty() && is_input_category(r.error_category)) return kInputError;
  return rep.all_passed() ? kPass : kCheckFailure;
}

ExperimentReport error_report(const std::string& suite, const std::string& category, const std::string& message) {
  ExperimentReport rep(suite);
  CheckRecord r;
  r.name = "error";
  r.anchor = "library error";
  r.error_category = category;
  r.message = message;
  rep.add(std::move(r));
  return rep;
}

ExperimentReport cmd_pinv(const std::string& path, const ToleranceConfig& tol) {
  const AlgebraElement a = load_element(path);
  const AlgebraElement ap = moore_penrose(a, tol);
  const PenroseResidual res = penrose_residuals(a, ap);
  const double bound = tol.residual_tol * (1.0 + norm(a));
  ExperimentReport rep("pinv");
  rep.echo_tolerances(tol);
  const std::pair<const char*, double> eqs[] = {{"aba=a", res.r1}, {"bab=b", res.r2}, {"ba_self_adjoint", res.r3},
                                                {"ab_self_adjoint", res.r4}};
  const char* anchors[] = {"aa^+a = a", "a^+aa^+ = a^+", "(a^+a)^* = a^+a", "(aa^+)^* = aa^+"};
  for (std::size_t i = 0; i < 4; ++i)
    rep.add(std::string("penrose.") + eqs[i].first, eqs[i].second <= bound, anchors[i],
            {{"residual", eqs[i].second}, {"bound", bound}});
  CheckRecord& out = rep.add("pinv", true, "Moore-Penrose inverse",
                             {{"norm", norm(a)}, {"pinv_norm", norm(ap)}});
  out.elements["a"] = serialize_element(a);
  out.elements["pinv"] = serialize_element(ap);
  rep.sort_canonical();
  return rep;
}

ExperimentReport cmd_check_groupoid(const GroupoidArgs& args, std::size_t samples, const Globals& g) {
  const GroupoidInstance G = args.build(g.tol());
  ExperimentReport rep = verify_axioms(G, g.seed, samples);
  rep.echo("seed", std::to_string(g.seed));
  return rep;
}

std::vector<BasePoint> points_for(const GroupoidInstance& G, const std::vector<std::string>& files, std::size_t count,
                                  std::uint64_t seed) {
  std::vector<BasePoint> pts;
  for (const std::string& f : files) pts.push_back(make_point(load_element(f)));
  if (files.empty()) {
    auto rng = sampling::make_engine(seed, 0xc11);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(sample_base_point(G, rng));
  }
  if (pts.empty()) throw input_error("no base points given");
  return pts;
}

ExperimentReport cmd_orbits(const GroupoidArgs& args, const std::vector<std::string>& files, std::size_t count,
                            const Globals& g) {
  const ToleranceConfig tol = g.tol();
  const GroupoidInstance G = args.build(tol);
  ExperimentReport rep = orbit_decompose(G, points_for(G, files, count, g.seed), tol);
  rep.echo("seed", std::to_string(g.seed));
  return rep;
}

ExperimentReport cmd_geometry(const GroupoidArgs& args, const std::vector<std::string>& files, std::size_t count,
                              const Globals& g) {
  const ToleranceConfig tol = g.tol();
  const GroupoidInstance G = args.build(tol);
  ExperimentReport rep(std::string("geometry.") + kind_name(G.kind()));
  rep.echo_tolerances(tol);
  rep.echo("seed", std::to_string(g.seed));
  const std::vector<BasePoint> pts = points_for(G, files, count, g.seed);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    char name[24];
    std::snprintf(name, sizeof name, "point%04zu", i);
    const AnchorData d = fiber_and_anchor(G, pts[i], tol);
    rep.add(std::string(name) + ".anchor", d.fiber_dim == d.anchor_rank + d.isotropy_dim,
            "ker rho_x is the isotropy algebra",
            {{"fiber_dim", static_cast<double>(d.fiber_dim)},
             {"base_tangent_dim", static_cast<double>(d.base_tangent_dim)},
             {"anchor_rank", static_cast<double>(d.anchor_rank)},
             {"isotropy_dim", static_cast<double>(d.isotropy_dim)},
             {"anchor_surjective", d.anchor_surjective() ? 1.0 : 0.0}});
    const SubmersionRank s = submersion_rank_st(G, identity_at(G, pts[i]), tol);
    rep.add(std::string(name) + ".submersion", s.submersive() == d.anchor_surjective(),
            "(s,t) is a submersion at 1_x iff rho_x is onto",
            {{"rank", static_cast<double>(s.rank)}, {"expected", static_cast<double>(s.expected)}});
  }
  rep.sort_canonical();
  return rep;
}

ExperimentReport cmd_path(const std::string& p_file, const std::string& q_file, std::size_t steps, const Globals& g) {
  const ToleranceConfig tol = g.tol();
  const AlgebraElement p = load_element(p_file);
  const AlgebraElement q = load_element(q_file);
  const APath path = orbit_path(p, q, steps, tol);
  ExperimentReport rep("path");
  rep.echo_tolerances(tol);
  rep.echo("steps", std::to_string(steps));
  const double endpoint = std::max(distance(path.base_samples.front(), p), distance(path.base_samples.back(), q));
  rep.add("endpoints", endpoint <= 1e-6, "c(0) = p and c(1) = q", {{"error", endpoint}});
  CheckRecord& lift = rep.add("lift", path.max_lift_residual <= 1e-4, "rho(alpha(t)) = c'(t)",
                              {{"max_residual", path.max_lift_residual}});
  lift.traces["residual"] = path.lift_residuals;
  const std::pair<const char*, Reparametrization> phis[] = {{"square", Reparametrization::square()},
                                                            {"smoothstep", Reparametrization::smoothstep()}};
  for (const auto& [name, phi] : phis) {
    const double res = reparametrize_lift(path, phi).max_lift_residual;
    const double bound = 10.0 * path.max_lift_residual + 1e-6;
    rep.add(std::string("reparametrized.") + name, res <= bound, "(alpha o phi) phi' lifts c o phi",
            {{"max_residual", res}, {"bound", bound}});
  }
  rep.sort_canonical();
  return rep;
}

ExperimentReport cmd_continuity(const std::vector<std::size_t>& shape_sizes, const std::string& base_file,
                                std::size_t families, std::size_t horizon, const Globals& g) {
  const ToleranceConfig tol = g.tol();
  if (!base_file.empty()) return discontinuity_demo(load_element(base_file), tol);
  const AlgebraShape shape(shape_sizes.empty() ? std::vector<std::size_t>{2} : shape_sizes);
  ExperimentReport rep("continuity.grid");
  rep.echo_tolerances(tol);
  rep.echo("seed", std::to_string(g.seed));
  rep.echo("horizon", std::to_string(horizon));
  rep.echo("schedule", schedule_name(Schedule::quartic));
  auto rng = sampling::make_engine(g.seed, 0xc0);
  for (std::size_t i = 0; i < families; ++i) {
    const FamilyKind kind = i % 2 == 0 ? FamilyKind::rank_preserving : FamilyKind::rank_dropping;
    std::vector<std::size_t> sig;
    for (;;) {
      sig = sampling::random_signature(rng, shape);
      bool nonzero = false, deficient = false;
      for (std::size_t k = 0; k < sig.size(); ++k) {
        nonzero = nonzero || sig[k] > 0;
        deficient = deficient || sig[k] < shape.block_size(k);
      }
      if (nonzero && (kind == FamilyKind::rank_preserving || deficient)) break;
    }
    const AlgebraElement base = sampling::random_with_signature(rng, shape, sig);
    const SequenceFamily fam = make_family(kind, base, horizon, Schedule::quartic, g.seed * 1000 + i, tol);
    const ContinuityVerdict v = koliha_experiment(fam, tol);
    char idx[16];
    std::snprintf(idx, sizeof idx, "%04zu", i);
    const bool expected = kind == FamilyKind::rank_preserving ? v.eta_converges
                                                              : (!v.eta_converges && pinv_norms_diverge(v));
    CheckRecord& r = rep.add(std::string("family") + idx + "." + family_kind_name(kind), v.consistent() && expected,
                             "eta(a_n) -> eta(a) iff a_n^+ a_n -> a^+ a",
                             {{"eta_converges", v.eta_converges ? 1.0 : 0.0},
                              {"source_converges", v.source_converges ? 1.0 : 0.0},
                              {"final_pinv_norm", v.pinv_norms.back()}});
    r.traces["distances_eta"] = v.distances_eta;
    r.traces["pinv_norms"] = v.pinv_norms;
  }
  rep.sort_canonical();
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized inverses, groupoids of reflexive pairs and their geometry"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol-residual", g.tol_residual, "residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-rank-factor", g.tol_rank_factor, "relative singular value cutoff")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed")->envname("GINV_SEED");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "write the report here instead of stdout");
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp from JSON reports");
  app.fallthrough();

  std::string element_file;
  auto* pinv = app.add_subcommand("pinv", "Moore-Penrose inverse of an element with its Penrose residuals");
  pinv->add_option("element", element_file, "element file in the wire format, or - for stdin")->required();

  GroupoidArgs garg;
  std::size_t samples = 200;
  auto* check = app.add_subcommand("check-groupoid", "verify the groupoid axioms on sampled arrows");
  add_groupoid_options(check, garg);
  check->add_option("--samples", samples, "number of sampled arrows")->check(CLI::PositiveNumber);

  std::vector<std::string> point_files;
  std::size_t count = 20;
  auto* orbits = app.add_subcommand("orbits", "partition base points into orbits");
  add_groupoid_options(orbits, garg);
  orbits->add_option("files", point_files, "base point files (sampled when omitted)");
  orbits->add_option("--count", count, "number of sampled base points");

  auto* geometry = app.add_subcommand("geometry", "fiber, anchor, isotropy and submersion ranks at base points");
  add_groupoid_options(geometry, garg);
  geometry->add_option("files", point_files, "base point files (sampled when omitted)");
  geometry->add_option("--count", count, "number of sampled base points");

  std::string p_file, q_file;
  std::size_t steps = 512;
  auto* path = app.add_subcommand("path", "admissible path between projections of equal rank");
  path->add_option("p", p_file, "start projection")->required();
  path->add_option("q", q_file, "end projection")->required();
  path->add_option("--steps", steps, "sample intervals")->check(CLI::Range(2, 1 << 20));

  std::vector<std::size_t> shape_sizes;
  std::string base_file;
  std::size_t families = 20, horizon = 64;
  auto* continuity = app.add_subcommand("continuity", "continuity of pseudo-inversion along sequences");
  continuity->add_option("--shape", shape_sizes, "block sizes, e.g. 2,1")->delimiter(',');
  continuity->add_option("--base", base_file, "run the two-family demonstration at this singular element");
  continuity->add_option("--families", families, "number of families")->check(CLI::PositiveNumber);
  continuity->add_option("--horizon", horizon, "sequence length")->check(CLI::Range(8, 100000));

  auto* suite = app.add_subcommand("suite", "run the full acceptance battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  std::string suite_name = "cli";
  try {
    if (pinv->parsed()) {
      suite_name = "pinv";
      return emit(cmd_pinv(element_file, g.tol()), g);
    }
    if (check->parsed()) {
      suite_name = "axioms." + garg.kind;
      return emit(cmd_check_groupoid(garg, samples, g), g);
    }
    if (orbits->parsed()) {
      suite_name = "orbits." + garg.kind;
      return emit(cmd_orbits(garg, point_files, count, g), g);
    }
    if (geometry->parsed()) {
      suite_name = "geometry." + garg.kind;
      return emit(cmd_geometry(garg, point_files, count, g), g);
    }
    if (path->parsed()) {
      suite_name = "path";
      return emit(cmd_path(p_file, q_file, steps, g), g);
    }
    if (continuity->parsed()) {
      suite_name = "continuity";
      return emit(cmd_continuity(shape_sizes, base_file, families, horizon, g), g);
    }
    if (suite->parsed()) {
      suite_name = "acceptance";
      return emit(run_acceptance_suite({g.seed, g.tol()}), g);
    }
  } catch (const error& e) {
    const int rc = emit(error_report(suite_name, e.category(), e.what()), g);
    std::cerr << "ginv: " << e.category() << " error: " << e.what() << "\n";
    return is_input_category(e.category()) ? kInputError : std::max(rc, kCheckFailure);
  }
  return kInputError;
}
