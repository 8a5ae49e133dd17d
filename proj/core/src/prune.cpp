#include "zeroinit/prune.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zeroinit {

std::pair<Network, PruneMask> magnitude_prune(const Network& net, double fraction) {
    if (!(fraction >= 0.0 && fraction < 1.0)) {
        throw DomainError("magnitude_prune: fraction must lie in [0, 1)");
    }
    Network pruned = net;
    PruneMask mask;
    std::size_t kept_total = 0;
    std::size_t total = 0;

    for (Matrix& w : pruned.weights) {
        const std::size_t count = w.size();
        const std::size_t to_zero =
            static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count)));
        std::vector<std::size_t> order(count);
        std::iota(order.begin(), order.end(), 0);
        // Stable sort on |w| keeps (row, col) order among ties.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::fabs(w.data()[a]) < std::fabs(w.data()[b]);
        });
        std::vector<bool> kept(count, true);
        for (std::size_t i = 0; i < to_zero; ++i) {
            w.data()[order[i]] = 0.0;
            kept[order[i]] = false;
        }
        kept_total += count - to_zero;
        total += count;
        mask.kept.push_back(std::move(kept));
    }
    mask.kept_fraction = total == 0 ? 1.0 : static_cast<double>(kept_total) / total;
    return {std::move(pruned), std::move(mask)};
}

namespace {

std::size_t argmax_lowest(const double* values, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (values[j] > values[best]) best = j;
    }
    return best;
}

}  // namespace

double classify_accuracy(const Network& net, const Dataset& data) {
    if (data.count() == 0) throw DomainError("classify_accuracy: empty dataset");
    for (std::size_t i = 0; i < data.count(); ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < data.target_dim(); ++j) {
            const double v = data.targets(i, j);
            if (v == 1.0) {
                ++ones;
            } else if (v != 0.0) {
                throw DomainError("classify_accuracy: targets are not one-hot (sample " +
                                  std::to_string(i) + ")");
            }
        }
        if (ones != 1) {
            throw DomainError("classify_accuracy: targets are not one-hot (sample " +
                              std::to_string(i) + ")");
        }
    }

    constexpr std::size_t kChunk = 512;
    std::size_t correct = 0;
    std::vector<std::size_t> all(data.count());
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t begin = 0; begin < data.count(); begin += kChunk) {
        const std::size_t end = std::min(begin + kChunk, data.count());
        Matrix x(end - begin, data.input_dim());
        for (std::size_t r = begin; r < end; ++r) {
            const double* src = data.inputs.row_data(r);
            std::copy(src, src + data.input_dim(), x.row_data(r - begin));
        }
        const Matrix out = forward_batch(net, x).output();
        for (std::size_t r = begin; r < end; ++r) {
            const std::size_t predicted =
                argmax_lowest(out.row_data(r - begin), out.cols());
            const std::size_t truth =
                argmax_lowest(data.targets.row_data(r), data.target_dim());
            if (predicted == truth) ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(data.count());
}

}  // namespace zeroinit
