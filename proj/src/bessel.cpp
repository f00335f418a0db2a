#include "pathsum/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace pathsum {

namespace {

// Downward start order: comfortably above both the target order and the
// turning point x, so the minimal solution dominates by the time the
// recurrence reaches `order`.
int miller_start_order(int order, double x) {
    const int base = order > static_cast<int>(x) ? order : static_cast<int>(x);
    const int pad = 18 + static_cast<int>(std::sqrt(42.0 * (base + 1)));
    return ((base + pad) / 2) * 2 + 2;
}

// Miller's algorithm: run J_{k-1} = (2k/x) J_k - J_{k+1} downward from an
// arbitrary seed and normalize with J_0 + 2 J_2 + 2 J_4 + ... = 1.
double miller_downward(int order, double x) {
    const int start = miller_start_order(order, x);
    double above = 0.0;      // J_{k+1}
    double current = 1e-30;  // J_k, arbitrary seed
    double norm = 0.0;
    double value = 0.0;
    for (int k = start; k > 0; --k) {
        const double below = 2.0 * k / x * current - above;
        above = current;
        current = below;
        if ((k - 1) % 2 == 0) norm += (k == 1 ? 1.0 : 2.0) * current;
        if (k - 1 == order) value = current;
        if (std::abs(current) > 1e250) {
            current *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            value *= 1e-250;
        }
    }
    return value / norm;
}

}  // namespace

double bessel_j(int order, double x) {
    if (x < 0.0) throw std::invalid_argument("bessel_j: x must be nonnegative");
    bool negate = false;
    if (order < 0) {
        negate = (order & 1) != 0;  // J_{-n} = (-1)^n J_n
        order = -order;
    }
    double value;
    if (x == 0.0) {
        value = order == 0 ? 1.0 : 0.0;
    } else if (order >= 2 && order < static_cast<int>(x)) {
        // Forward recurrence is stable below the turning point.
        double jm = miller_downward(0, x);
        double jc = miller_downward(1, x);
        for (int k = 1; k < order; ++k) {
            const double jn = 2.0 * k / x * jc - jm;
            jm = jc;
            jc = jn;
        }
        value = jc;
    } else {
        value = miller_downward(order, x);
    }
    return negate ? -value : value;
}

}  // namespace pathsum
