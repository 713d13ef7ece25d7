#pragma once

#include <functional>
#include <string>

namespace wmlg {

/// The pair of smooth kernels (c, pi) whose plug-in ratio is the index in the
/// large-sample limit, together with their partial derivatives. Two routes:
///  - ratio_route = true:  J(t) = H_c/H_pi with H_c = int_0^q c(q,s) gamma ds
///    and H_pi = int_0^q pi(q,s) ds (the Kakwani family);
///  - ratio_route = false: H_pi == 1 identically and pi is unused (the
///    Shorrocks/Thon and FGT families).
/// Arguments are always (x, y) = (headcount ratio, CDF level), both in [0,1].
struct LimitFunctions {
    bool ratio_route = false;
    std::function<double(double, double)> c, dc_dx, dc_dy;
    std::function<double(double, double)> pi, dpi_dx, dpi_dy;
    std::string label;

    static LimitFunctions kakwani(int k);
    static LimitFunctions shorrocks_thon();
    static LimitFunctions fgt();
};

} // namespace wmlg
