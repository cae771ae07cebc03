#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace lmtk {

struct Peak {
    std::size_t index = 0;
    double height = 0.0;
    double prominence = 0.0;
    double width = 0.0;  // r - l, the nearest samples on each side strictly below the prominence base
};

struct PeakCriteria {
    double min_height = -std::numeric_limits<double>::infinity();
    double min_prominence = 0.0;
    std::size_t min_distance = 0;  // kept peaks satisfy |i - j| > min_distance
};

// Strict local maxima x[n] > x[n-1], x[n] > x[n+1] with x[n] > min_height and
// prominence > min_prominence. Prominence is x[n] minus the higher of the two
// lowest points reached on each side before meeting a strictly higher sample
// (or the signal edge). Among candidates closer than min_distance the taller
// one survives; equal heights keep the earlier index. Result is sorted by index.
std::vector<Peak> detect_peaks(std::span<const double> signal, const PeakCriteria& criteria);

}  // namespace lmtk
