// Prints a few values of J_n^{1,2}(u,v), the small-argument expansion of
// J_3^{1,2} and the stationary points of the phase at one point.

#include <cstdio>

#include "gb2d/gb2d.hpp"

int main() {
    for (long n = 0; n <= 4; ++n)
        std::printf("J_%ld^{1,2}(3, 2) = % .15f\n", n, gb2d::eval(gb2d::Index{n, 1, 2}, 3.0, 2.0));

    const gb2d::PolyExpansion poly = gb2d::expand(3, 1, 2, 5);
    std::printf("\nJ_3^{1,2} up to total degree 5:\n");
    for (const auto& t : poly.terms)
        std::printf("  %s u^%d v^%d\n", t.coefficient.str().c_str(), t.u_exponent, t.v_exponent);

    std::printf("\nstationary points of u sin t + v sin 2t - 30 t at (u, v) = (0, 40):\n");
    for (const auto& s : gb2d::stationary_points(1, 2, 30, 0.0, 40.0))
        std::printf("  t = % .12f  phase'' = % .6f\n", s.t.real(), s.second_derivative.real());
    std::printf("sector %s\n", gb2d::sector_name(gb2d::classify_region(30, 0.0, 40.0).label));
}
