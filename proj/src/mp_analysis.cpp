#include "ginv/mp_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ginv/geninv.hpp"
#include "ginv/linalg.hpp"
#include "ginv/random.hpp"

namespace ginv {

const char* family_kind_name(FamilyKind k) noexcept {
  switch (k) {
    case FamilyKind::rank_preserving: return "rank_preserving";
    case FamilyKind::rank_dropping: return "rank_dropping";
    case FamilyKind::constant: return "constant";
    case FamilyKind::custom: return "custom";
  }
  return "unknown";
}

const char* schedule_name(Schedule s) noexcept { return s == Schedule::quartic ? "quartic" : "harmonic"; }

double schedule_step(Schedule s, std::size_t n) {
  const double x = static_cast<double>(n);
  return s == Schedule::quartic ? 1.0 / (x * x * x * x) : 1.0 / x;
}

namespace {

cplx unit_phase_of_largest(const ComplexMatrix& m) {
  cplx best = 0.0;
  for (const cplx& v : m.entries())
    if (std::abs(v) > std::abs(best)) best = v;
  return std::abs(best) == 0.0 ? cplx(1.0) : std::conj(best) / std::abs(best);
}

ComplexMatrix column_of(const ComplexMatrix& m, std::size_t j) {
  ComplexMatrix c(m.rows(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) c(i, 0) = m(i, j);
  return c;
}

// Random unit vector in the span of columns [first, n) of an n x n unitary.
ComplexMatrix random_tail_direction(sampling::engine& rng, const ComplexMatrix& basis, std::size_t first) {
  const std::size_t n = basis.rows();
  ComplexMatrix v(n, 1);
  const ComplexMatrix coeff = sampling::gaussian_matrix(rng, n - first, 1);
  for (std::size_t k = first; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) v(i, 0) += basis(i, k) * coeff(k - first, 0);
  v *= cplx(1.0 / frobenius_norm(v));
  return v;
}

AlgebraElement rank_preserving_direction(const AlgebraElement& base, std::optional<std::uint64_t> seed,
                                         const ToleranceConfig& tol) {
  if (!seed) return base;
  auto rng = sampling::make_engine(*seed, 0x7270);
  std::vector<ComplexMatrix> blocks;
  for (const ComplexMatrix& b : base.blocks()) {
    const auto f = svd(b);
    const std::size_t n = b.rows();
    const std::size_t r = rank_from_singular_values(f.sigma, n, n, tol);
    ComplexMatrix p(n, n);
    if (r > 0) {
      // |M| <= sigma_r / 2 keeps Sigma_r + e M invertible for e <= 1.
      ComplexMatrix m = sampling::gaussian_matrix(rng, r, r);
      m *= cplx(0.5 * f.sigma[r - 1] / std::max(operator_norm(m), 1e-300));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < r; ++k)
            for (std::size_t l = 0; l < r; ++l) p(i, j) += f.u(i, k) * m(k, l) * std::conj(f.v(j, l));
    }
    blocks.push_back(std::move(p));
  }
  return {base.shape(), std::move(blocks)};
}

AlgebraElement rank_dropping_direction(const AlgebraElement& base, std::optional<std::uint64_t> seed,
                                       const ToleranceConfig& tol) {
  std::optional<sampling::engine> rng;
  if (seed) rng = sampling::make_engine(*seed, 0x7264);
  std::vector<ComplexMatrix> blocks;
  bool placed = false;
  for (const ComplexMatrix& b : base.blocks()) {
    const std::size_t n = b.rows();
    ComplexMatrix w(n, n);
    const auto f = svd(b);
    const std::size_t r = rank_from_singular_values(f.sigma, n, n, tol);
    if (!placed && r < n) {
      const ComplexMatrix u = rng ? random_tail_direction(*rng, f.u, r) : column_of(f.u, r);
      const ComplexMatrix v = rng ? random_tail_direction(*rng, f.v, r) : column_of(f.v, r);
      w = u * v.adjoint();
      w *= unit_phase_of_largest(w);
      placed = true;
    }
    blocks.push_back(std::move(w));
  }
  if (!placed) throw input_error("make_family: rank_dropping requires a singular base");
  return {base.shape(), std::move(blocks)};
}

bool non_increasing(const std::vector<double>& v, std::size_t from) {
  for (std::size_t i = from + 1; i < v.size(); ++i)
    if (!(v[i] <= v[i - 1] * (1.0 + 1e-6) + 1e-10)) return false;
  return true;
}

}  // namespace

SequenceFamily make_family(FamilyKind kind, const AlgebraElement& base, std::size_t horizon, Schedule schedule,
                           std::optional<std::uint64_t> seed, const ToleranceConfig& tol) {
  if (horizon < 8) throw input_error("make_family: horizon must be at least 8");
  if (norm(base) == 0.0) throw input_error("make_family: zero base (zero limits are not supported)");
  SequenceFamily fam{kind, schedule, {}, base, horizon, 1e-6};
  switch (kind) {
    case FamilyKind::constant:
      fam.generator = [base](std::size_t) { return base; };
      fam.final_distance_bound = 1e-6;
      return fam;
    case FamilyKind::rank_preserving:
    case FamilyKind::rank_dropping: {
      const AlgebraElement dir = kind == FamilyKind::rank_preserving ? rank_preserving_direction(base, seed, tol)
                                                                     : rank_dropping_direction(base, seed, tol);
      fam.generator = [base, dir, schedule](std::size_t n) {
        if (n == 0) throw input_error("sequence index starts at 1");
        return base + dir * cplx(schedule_step(schedule, n));
      };
      fam.final_distance_bound = std::max(1e-6, 1.01 * schedule_step(schedule, horizon) * norm(dir));
      return fam;
    }
    case FamilyKind::custom: break;
  }
  throw input_error("make_family: use make_custom_family for custom sequences");
}

SequenceFamily make_custom_family(std::function<AlgebraElement(std::size_t)> generator, AlgebraElement limit,
                                  std::size_t horizon) {
  if (!generator) throw input_error("make_custom_family: empty generator");
  if (horizon < 8) throw input_error("make_custom_family: horizon must be at least 8");
  return {FamilyKind::custom, Schedule::quartic, std::move(generator), std::move(limit), horizon, 1e-6};
}

void check_family(const SequenceFamily& fam) {
  if (!fam.generator) throw input_error("family has no generator");
  if (norm(fam.limit) == 0.0) throw input_error("family limit is zero; the continuity criterion excludes zero limits");
  std::vector<double> d;
  for (std::size_t n = 1; n <= fam.horizon; ++n) {
    const AlgebraElement a = fam.generator(n);
    if (!(a.shape() == fam.limit.shape())) throw input_error("family term has a different shape than its limit");
    if (norm(a) == 0.0) throw input_error("family contains a zero term");
    d.push_back(distance(a, fam.limit));
  }
  if (!non_increasing(d, 0)) throw input_error("family distances to the limit are not non-increasing");
  if (!(d.back() <= fam.final_distance_bound))
    throw input_error("family does not approach its limit: final distance " + format_double(d.back()));
}

bool trend_converges(const std::vector<double>& trace, double threshold) {
  if (trace.size() < 4) return false;
  const std::size_t from = trace.size() - trace.size() / 4;
  for (std::size_t i = from; i < trace.size(); ++i)
    if (!(trace[i] < threshold)) return false;
  return non_increasing(trace, from);
}

bool pinv_norms_diverge(const ContinuityVerdict& v) {
  const auto& p = v.pinv_norms;
  if (p.size() < 4 || p.size() != v.distances_base.size()) return false;
  const std::size_t from = p.size() - p.size() / 4;
  for (std::size_t i = from; i < p.size(); ++i) {
    if (i > from && !(p[i] > p[i - 1])) return false;
    if (!(p[i] * v.distances_base[i] >= 0.5)) return false;
  }
  return true;
}

ContinuityVerdict koliha_experiment(const SequenceFamily& fam, const ToleranceConfig& tol) {
  check_family(fam);
  const AlgebraElement lp = moore_penrose(fam.limit, tol);
  const AlgebraElement ls = lp * fam.limit;
  ContinuityVerdict v;
  for (std::size_t n = 1; n <= fam.horizon; ++n) {
    const AlgebraElement a = fam.generator(n);
    const AlgebraElement ap = moore_penrose(a, tol);
    const double db = distance(a, fam.limit);
    v.distances_base.push_back(db);
    v.distances_eta.push_back(std::max(db, distance(ap, lp)));
    v.distances_source.push_back(distance(ap * a, ls));
    v.pinv_norms.push_back(norm(ap));
  }
  v.eta_converges = trend_converges(v.distances_eta);
  v.source_converges = trend_converges(v.distances_source);
  return v;
}

ExperimentReport discontinuity_demo(const AlgebraElement& base, const ToleranceConfig& tol) {
  if (norm(base) == 0.0) throw input_error("discontinuity_demo: base is zero");
  if (is_invertible(base, tol)) throw input_error("discontinuity_demo: base is invertible; pseudo-inversion is continuous there");
  ExperimentReport rep("continuity.discontinuity_demo");
  rep.echo_tolerances(tol);
  rep.echo("horizon", "64");
  rep.echo("schedule", schedule_name(Schedule::quartic));
  rep.echo("trend_threshold", "0.0001");
  for (FamilyKind kind : {FamilyKind::rank_preserving, FamilyKind::rank_dropping}) {
    const SequenceFamily fam = make_family(kind, base, 64, Schedule::quartic, std::nullopt, tol);
    const ContinuityVerdict v = koliha_experiment(fam, tol);
    const std::string prefix = family_kind_name(kind);
    CheckRecord r;
    r.name = prefix + ".trend";
    r.anchor = kind == FamilyKind::rank_preserving ? "a_n -> a with constant rank gives a_n^+ -> a^+"
                                                   : "a_n -> a with a rank drop gives |a_n^+| -> infinity";
    r.pass = kind == FamilyKind::rank_preserving ? v.eta_converges : (!v.eta_converges && pinv_norms_diverge(v));
    r.values = {{"eta_converges", v.eta_converges ? 1.0 : 0.0},
                {"source_converges", v.source_converges ? 1.0 : 0.0},
                {"final_pinv_norm", v.pinv_norms.back()},
                {"final_distance_eta", v.distances_eta.back()}};
    r.traces = {{"distances_eta", v.distances_eta},
                {"distances_source", v.distances_source},
                {"pinv_norms", v.pinv_norms}};
    rep.add(std::move(r));
    rep.add(prefix + ".criterion", v.consistent(), "eta(a_n) -> eta(a) iff a_n^+ a_n -> a^+ a",
            {{"eta_converges", v.eta_converges ? 1.0 : 0.0}, {"source_converges", v.source_converges ? 1.0 : 0.0}});
  }
  rep.sort_canonical();
  return rep;
}

}  // namespace ginv
