// Writes SVGs of a few completed diagrams: a finite type, the affine
// Kronecker case and a wild case with its irrational cone.

#include <fstream>
#include <iostream>

#include "rank2/rank2.hpp"

using namespace rank2;

int main() {
  struct Item {
    const char* file;
    ClusterParams p;
    std::int64_t K;
  };
  for (const Item& it : {Item{"d21.svg", {2, 1}, 10}, Item{"d22.svg", {2, 2}, 12}, Item{"d32.svg", {3, 2}, 30}}) {
    const auto D = complete(initial_diagram_g(it.p, it.K), it.K);
    std::ofstream(it.file) << render_svg(D, {}, {-6, 6, -6, 6, 640});
    std::cout << it.file << ": " << D.walls.size() << " walls at order " << it.K << "\n";
  }
}
