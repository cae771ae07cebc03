#include "lmtk/peaks.hpp"

#include <algorithm>
#include <bit>

namespace lmtk {

namespace {

// O(1) range-minimum queries after O(n log n) setup.
class RangeMin {
public:
    explicit RangeMin(std::span<const double> x) {
        const std::size_t n = x.size();
        table_.emplace_back(x.begin(), x.end());
        for (std::size_t len = 2; len <= n; len *= 2) {
            const auto& prev = table_.back();
            std::vector<double> level(n - len + 1);
            for (std::size_t i = 0; i + len <= n; ++i) level[i] = std::min(prev[i], prev[i + len / 2]);
            table_.push_back(std::move(level));
        }
    }

    // min over [lo, hi], lo <= hi.
    double query(std::size_t lo, std::size_t hi) const {
        const std::size_t len = hi - lo + 1;
        const auto k = static_cast<std::size_t>(std::bit_width(len) - 1);
        return std::min(table_[k][lo], table_[k][hi + 1 - (std::size_t{1} << k)]);
    }

private:
    std::vector<std::vector<double>> table_;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::vector<Peak> detect_peaks(std::span<const double> x, const PeakCriteria& criteria) {
    const std::size_t n = x.size();
    std::vector<Peak> peaks;
    if (n < 3) return peaks;

    // Nearest strictly greater neighbour on each side (monotonic stacks).
    std::vector<std::size_t> prev_greater(n, kNone);
    std::vector<std::size_t> next_greater(n, kNone);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        while (!stack.empty() && x[stack.back()] <= x[i]) stack.pop_back();
        if (!stack.empty()) prev_greater[i] = stack.back();
        stack.push_back(i);
    }
    stack.clear();
    for (std::size_t i = n; i-- > 0;) {
        while (!stack.empty() && x[stack.back()] <= x[i]) stack.pop_back();
        if (!stack.empty()) next_greater[i] = stack.back();
        stack.push_back(i);
    }
    const RangeMin range_min(x);

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(x[i] > x[i - 1] && x[i] > x[i + 1])) continue;
        if (!(x[i] > criteria.min_height)) continue;

        const std::size_t left_lo = prev_greater[i] == kNone ? 0 : prev_greater[i] + 1;
        const std::size_t right_hi = next_greater[i] == kNone ? n - 1 : next_greater[i] - 1;
        const double base = std::max(range_min.query(left_lo, i), range_min.query(i, right_hi));
        const double prominence = x[i] - base;
        if (!(prominence > criteria.min_prominence)) continue;

        // Nearest samples strictly below the base on each side, else the signal edges.
        std::size_t left = 0;
        if (range_min.query(0, i) < base) {
            std::size_t lo = 0;
            std::size_t hi = i;  // invariant: min(x[lo..i]) < base
            while (lo < hi) {
                const std::size_t mid = lo + (hi - lo + 1) / 2;
                if (range_min.query(mid, i) < base) lo = mid;
                else hi = mid - 1;
            }
            left = lo;
        }
        std::size_t right = n - 1;
        if (range_min.query(i, n - 1) < base) {
            std::size_t lo = i;
            std::size_t hi = n - 1;  // invariant: min(x[i..hi]) < base
            while (lo < hi) {
                const std::size_t mid = lo + (hi - lo) / 2;
                if (range_min.query(i, mid) < base) hi = mid;
                else lo = mid + 1;
            }
            right = lo;
        }
        peaks.push_back(Peak{i, x[i], prominence, static_cast<double>(right - left)});
    }

    if (criteria.min_distance == 0 || peaks.size() < 2) return peaks;

    std::vector<std::size_t> order(peaks.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return peaks[a].height > peaks[b].height; });

    std::vector<bool> keep(peaks.size(), true);
    for (std::size_t k : order) {
        if (!keep[k]) continue;
        // Suppress lower-priority neighbours within the exclusion radius.
        for (std::size_t j = k; j-- > 0 && peaks[k].index - peaks[j].index <= criteria.min_distance;) keep[j] = false;
        for (std::size_t j = k + 1; j < peaks.size() && peaks[j].index - peaks[k].index <= criteria.min_distance; ++j) {
            keep[j] = false;
        }
    }
    std::vector<Peak> kept;
    for (std::size_t k = 0; k < peaks.size(); ++k) {
        if (keep[k]) kept.push_back(peaks[k]);
    }
    return kept;
}

}  // namespace lmtk
