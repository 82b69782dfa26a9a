#ifndef GEC_COMPENSATED_HPP
#define GEC_COMPENSATED_HPP

#include <cmath>

namespace gec {

// Kahan-Babuska-Neumaier compensated accumulator.  The correction word
// captures the rounding error of every addition, so a sum of N terms
// carries an error of O(eps) rather than O(N*eps).
struct comp_sum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }

    void reset() { sum = 0.0; comp = 0.0; }
};

} // namespace gec

#endif
