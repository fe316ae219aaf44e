#pragma once

// Continuity of a -> (a, a^+) along sequences: a_n -> a gives
// eta(a_n) -> eta(a) exactly when a_n^+ a_n -> a^+ a.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ginv/algebra.hpp"
#include "ginv/report.hpp"

namespace ginv {

enum class FamilyKind { rank_preserving, rank_dropping, constant, custom };
// Size of the n-th perturbation: n^-4 (default) or 1/n.
enum class Schedule { quartic, harmonic };

const char* family_kind_name(FamilyKind k) noexcept;
const char* schedule_name(Schedule s) noexcept;
double schedule_step(Schedule s, std::size_t n);

struct SequenceFamily {
  FamilyKind kind = FamilyKind::custom;
  Schedule schedule = Schedule::quartic;
  std::function<AlgebraElement(std::size_t)> generator;  // n >= 1
  AlgebraElement limit;
  std::size_t horizon = 64;
  // Largest admissible |a_horizon - limit|.
  double final_distance_bound = 1e-6;
};

/// rank_preserving: a_n = base + e_n P with P = base, or a random
/// perturbation U_r M V_r^* inside the rank stratum when a seed is given.
/// rank_dropping: a_n = base + e_n w with w = u_{r+1} v_{r+1}^* from the SVD
/// of the first rank-deficient block (random unit directions in the two
/// null spaces when seeded). constant: a_n = base.
SequenceFamily make_family(FamilyKind kind, const AlgebraElement& base, std::size_t horizon = 64,
                           Schedule schedule = Schedule::quartic, std::optional<std::uint64_t> seed = std::nullopt,
                           const ToleranceConfig& tol = {});

SequenceFamily make_custom_family(std::function<AlgebraElement(std::size_t)> generator, AlgebraElement limit,
                                  std::size_t horizon = 64);

// Throws input_error unless |a_n - limit| is non-increasing on the horizon
// and ends below final_distance_bound, and the limit is nonzero.
void check_family(const SequenceFamily& fam);

struct ContinuityVerdict {
  bool eta_converges = false;
  bool source_converges = false;
  std::vector<double> distances_eta;
  std::vector<double> distances_source;
  std::vector<double> distances_base;
  std::vector<double> pinv_norms;

  bool consistent() const noexcept { return eta_converges == source_converges; }
};

// Last quarter below threshold and non-increasing.
bool trend_converges(const std::vector<double>& trace, double threshold = 1e-4);
// Last quarter increasing and |a_n^+| |a_n - a| bounded below by 1/2.
bool pinv_norms_diverge(const ContinuityVerdict& v);

ContinuityVerdict koliha_experiment(const SequenceFamily& fam, const ToleranceConfig& tol = {});

ExperimentReport discontinuity_demo(const AlgebraElement& base, const ToleranceConfig& tol = {});

}  // namespace ginv
