#include "meanclt/tolerances.hpp"

#include <sstream>

namespace meanclt::tol {

std::string report() {
    std::ostringstream os;
    os << "merge_rel                 " << kMergeRel << "  (atom merge, times max(1, span))\n"
       << "mass_internal             " << kMassInternal << "  (mass bookkeeping after ops)\n"
       << "mass_input                " << kMassInput << "  (input mass gate, then renormalized)\n"
       << "mean_zero                 " << kMeanZero << "  (centering gate)\n"
       << "standardized              " << kStandardized << "  (standardize() accuracy)\n"
       << "lattice_rel               " << kLatticeRel << "  (real-gcd span detection)\n"
       << "lattice_max_iter          " << kLatticeMaxIter << "  (Euclid iteration cap)\n"
       << "a_quadrature_abs          " << kAQuadAbs << "  (A(G) outer integral)\n"
       << "crossing_bisect           " << kCrossingBisect << "  (pwl-vs-normal roots)\n"
       << "bound_slack               " << kBoundSlack << "  (tested upper bounds)\n"
       << "route_agreement           " << kRouteAgreement << "  (dual-route checks)\n"
       << "weight_drop               " << kWeightDrop << "  (mixture weight floor)\n"
       << "max_support               " << kMaxSupport << "  (convolution support guard)\n"
       << "max_convolve_pairs        " << kMaxConvolvePairs << "  (pairwise sum guard)\n"
       << "max_split_depth           " << kMaxSplitDepth << "  (reduce_to_d3 recursion cap)\n";
    return os.str();
}

}  // namespace meanclt::tol
