// Broken lines for the Kronecker quiver (b = c = 2): the three lines
// contributing to theta_{(1,-1)}, their images in the d-diagram, and an SVG.

#include <fstream>
#include <iostream>

#include "rank2/rank2.hpp"

using namespace rank2;

int main() {
  const ClusterParams p{2, 2};
  const auto G = complete(initial_diagram_g(p, 8), 8);
  const RationalPoint q{Rational(3, 2), Rational(1)};

  const auto lines = enumerate_broken_lines(G, {1, -1}, q, 6);
  LaurentPoly theta;
  for (const auto& l : lines) {
    theta += l.mono();
    std::cout << l.bends() << " bend(s): " << to_json(l).dump() << "\n";
  }
  std::cout << "theta_(1,-1) = " << theta << "\n";

  const auto Dd = complete(initial_diagram_d(p, 6), 6);
  for (const auto& l : lines) {
    const BrokenLine t = transport_broken_line(p, l);
    std::cout << "T(line) valid in the d-diagram: " << (broken_line_violation(Dd, t) ? "no" : "yes") << "  "
              << to_json(t).dump() << "\n";
  }
  std::cout << "x[1,1] = " << greedy_element(p, {1, 1}).poly << "\n";

  std::ofstream("kronecker_lines.svg") << render_svg(G, lines);
  std::cout << "wrote kronecker_lines.svg\n";
}
