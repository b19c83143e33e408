#pragma once

#include <cmath>

namespace meanclt::detail {

/// Neumaier compensated summation, used for the long prefix and moment sums.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }

    double value() const { return s + c; }
};

}  // namespace meanclt::detail
