// Greedy elements against theta functions over a small grid of d-vectors.
// Usage: greedy_vs_theta [b c radius]

#include <cstdlib>
#include <iostream>

#include "rank2/rank2.hpp"

using namespace rank2;

int main(int argc, char** argv) {
  const std::int64_t b = argc > 1 ? std::atoll(argv[1]) : 3;
  const std::int64_t c = argc > 2 ? std::atoll(argv[2]) : 2;
  const std::int64_t radius = argc > 3 ? std::atoll(argv[3]) : 3;

  const GridResult g = compare_grid({b, c}, radius, {40, &std::cerr});
  std::size_t equal = 0, terms = 0;
  for (const auto& r : g.reports) {
    equal += r.equal;
    terms += r.greedy.size();
    const auto region = support_region(r.params, r.d);
    std::cout << "(" << r.d.a1 << "," << r.d.a2 << ")  case " << region.case_tag << (region.imaginary ? "*" : " ")
              << "  " << r.greedy.size() << " terms  " << (r.equal ? "equal" : "DIFFERENT") << "\n";
  }
  std::cout << equal << "/" << g.reports.size() << " equal, " << terms << " terms, diagram order " << g.order
            << "  (* = imaginary direction)\n";
  return g.all_equal() ? 0 : 1;
}
