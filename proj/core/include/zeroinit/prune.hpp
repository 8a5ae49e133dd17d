#pragma once

#include <vector>

#include "zeroinit/net.hpp"

namespace zeroinit {

/// Per-layer boolean keep-masks congruent to the weights, plus the global
/// kept fraction.
struct PruneMask {
    std::vector<std::vector<bool>> kept;  // row-major per layer
    double kept_fraction = 1.0;
};

/// One-shot per-layer magnitude pruning: in each layer the floor(fraction *
/// count) smallest-|w| entries are zeroed, ties broken by (row, col) order.
/// The input network is left untouched. fraction must lie in [0, 1).
std::pair<Network, PruneMask> magnitude_prune(const Network& net, double fraction);

/// Fraction of samples whose argmax output matches the argmax target, ties
/// resolved to the lowest index. Targets must be exactly one-hot.
double classify_accuracy(const Network& net, const Dataset& data);

}  // namespace zeroinit
