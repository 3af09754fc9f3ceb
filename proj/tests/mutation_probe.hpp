#pragma once

// Residual of the identity that a given mutation corrupts, on one generic case.

#include "adsforms/theorems.hpp"

namespace adsforms::testing {

struct MutationProbe {
  std::string identity;
  double residual = 0.0;
};

/// Generic case: dS n=3, random non-transverse 2-form for the restriction formulas and a
/// 1-homogeneous transverse one-form for the continuation formula (s(s+n-1-2b) != 0, delta beta != 0).
/// The normal-term mutation is observed on the ambient residual at `adjudicated_sign`.
inline MutationProbe probe_mutation(Mutation m, int adjudicated_sign, std::uint64_t seed = 5) {
  const GraphChart chart(Geometry(GeometryCase::de_sitter, 3, 1.0));
  const auto points = sample_points(chart, 10, seed);
  const auto off = sample_off_sigma(chart, 10, seed + 1);
  const TheoremContext ctx{chart, points, off, Tolerance{}, m};
  const std::string name = to_string(m);
  if (name.starts_with("eq2")) return {"eq2", th1_delta_residual(suite_random_form(seed, 2, 4), ctx).max_residual};
  if (name.starts_with("eq3")) return {"eq3", th1_box_residual(suite_random_form(seed, 2, 4), ctx).max_residual};
  const auto r = continuation_residuals(suite_random_seed(seed, 1, 4), 1.0, ctx);
  if (m == Mutation::eq5_normal_sign) return {"eq5_ambient", th2_box_residual(r, adjudicated_sign).max_residual};
  return {"eq5_transverse", r.box_transverse.max_residual};
}

}  // namespace adsforms::testing
