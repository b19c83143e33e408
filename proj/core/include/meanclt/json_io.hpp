#pragma once

#include <string>
#include <vector>

#include "meanclt/finite_dist.hpp"
#include "meanclt/functionals.hpp"
#include "meanclt/harness.hpp"
#include "meanclt/mixtures.hpp"
#include "meanclt/zero_bias.hpp"

namespace meanclt {

// Wire formats:
//   FiniteDist            {"support":[...], "probs":[...]}
//   ZeroBiasDist          {"breakpoints":[...], "densities":[...]}
//   MixtureDecomposition  {"weights":[...], "components":[{...}]}
// Support need not be pre-sorted; the loader canonicalizes and rejects
// NaN/Inf, nonpositive probs, and mass error beyond 1e-9.

FiniteDist finite_dist_from_json(const std::string& text);
FiniteDist load_finite_dist(const std::string& path);

ZeroBiasDist zero_bias_from_json(const std::string& text);

std::string to_json(const FiniteDist& d, int indent = -1);
std::string to_json(const ZeroBiasDist& z, int indent = -1);
std::string to_json(const MixtureDecomposition& m, int indent = -1);
std::string to_json(const FunctionalReport& r, int indent = -1);
std::string to_json(const BoundReport& r, int indent = -1);
std::string to_json(const std::vector<BoundReport>& rows, int indent = -1);
std::string to_json(const SearchResult& r, int indent = -1);

/// CSV with header n,w1,be_bound,bg_bound,ratio_be,ratio_bg,sqrtn_w1,a_value.
std::string bound_reports_csv(const std::vector<BoundReport>& rows);

/// CSV with header p,psi.
std::string lower_bound_csv(const LowerBoundSweep& sweep);

}  // namespace meanclt
