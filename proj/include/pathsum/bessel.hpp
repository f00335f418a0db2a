#pragma once

namespace pathsum {

/// Bessel function of the first kind J_n(x) for integer order, x >= 0.
/// Forward recurrence where it is stable (n < x), Miller's downward
/// recurrence normalized by J_0 + 2 sum_k J_{2k} = 1 otherwise. Absolute
/// accuracy better than 1e-12 for x <= 200; values below the double
/// underflow threshold come back as 0.
double bessel_j(int order, double x);

}  // namespace pathsum
