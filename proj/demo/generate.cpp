// First few solutions of F1 with (a, b, c) = (1, 1, 2), each checked exactly.
#include <iostream>

#include "gfpoints/gfpoints.hpp"

int main() {
    using namespace gfp;
    const FamilyParams p(1, 1, 2);
    const EllipticCurve E = curve_for_family(Family::F1, p);
    std::cout << "E: Y^2 = X^3 + " << E.A() << "X + " << E.B() << '\n';

    SolutionStream stream(Family::F1, p);
    for (int i = 0; i < 4; ++i) {
        const auto s = stream.next();
        std::cout << "[" << s.n << "]P1 -> x = " << s.solution.x << ", y = " << s.solution.y
                  << ", z = " << s.solution.z << (verify_solution(Family::F1, p, s.solution) ? "  ok" : "  FAIL")
                  << '\n';
    }
}
