// rank2 command line: cluster variables, greedy elements, scattering
// diagrams, theta functions and their comparison.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rank2/rank2.hpp"

using namespace rank2;

namespace {

std::pair<std::string, std::string> split_pair(const std::string& s, const char* what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw MalformedInput(std::string(what) + " must be A,B");
  return {s.substr(0, comma), s.substr(comma + 1)};
}

LatticeVector parse_vector(const std::string& s, const char* what) {
  const auto [a, b] = split_pair(s, what);
  try {
    return {std::stoll(a), std::stoll(b)};
  } catch (const std::exception&) {
    throw MalformedInput(std::string(what) + " must be two integers");
  }
}

RationalPoint parse_point(const std::string& s) {
  const auto [a, b] = split_pair(s, "--q");
  return {parse_rational(a), parse_rational(b)};
}

ScatteringDiagram build(const ClusterParams& p, bool dvec, std::int64_t K) {
  return complete(dvec ? initial_diagram_d(p, K) : initial_diagram_g(p, K), K);
}

void print_report(const ComparisonReport& r) {
  std::cout << "d = (" << r.d.a1 << "," << r.d.a2 << ")  order " << r.order << "  "
            << (r.equal ? "equal" : "DIFFERENT") << "  support " << (r.support_certificate ? "ok" : "FAIL") << "\n"
            << "  greedy: " << r.greedy << "\n"
            << "  theta:  " << r.theta << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-two cluster algebras: greedy elements, scattering diagrams and theta functions"};
  app.require_subcommand(1);

  std::int64_t b = 1, c = 1;
  auto add_bc = [&](CLI::App* sub) {
    sub->add_option("--b", b, "exchange exponent b")->required()->check(CLI::PositiveNumber);
    sub->add_option("--c", c, "exchange exponent c")->required()->check(CLI::PositiveNumber);
  };

  auto* cluster = app.add_subcommand("cluster", "cluster variable x_k");
  add_bc(cluster);
  std::int64_t k = 0;
  cluster->add_option("--k", k, "index")->required();

  auto* greedy = app.add_subcommand("greedy", "greedy element x[a1,a2]");
  add_bc(greedy);
  std::int64_t a1 = 0, a2 = 0;
  bool table = false;
  greedy->add_option("--a1", a1)->required();
  greedy->add_option("--a2", a2)->required();
  greedy->add_flag("--table", table, "print c(p1,p2) as TSV, rows p2 descending");

  auto* scatter = app.add_subcommand("scatter", "complete the initial scattering diagram");
  add_bc(scatter);
  std::int64_t order = 10;
  bool dvec = false;
  std::string json_out;
  scatter->add_option("--order", order, "truncation order K")->required()->check(CLI::NonNegativeNumber);
  scatter->add_flag("--dvec", dvec, "d-vector (first quadrant) variant");
  scatter->add_option("--json", json_out, "write the diagram as JSON to this file");

  auto* theta_cmd = app.add_subcommand("theta", "theta function by broken-line enumeration");
  add_bc(theta_cmd);
  std::string m_text, q_text;
  bool show_lines = false;
  theta_cmd->add_option("--m", m_text, "initial exponent M1,M2")->required();
  theta_cmd->add_option("--order", order, "degree budget K")->required()->check(CLI::PositiveNumber);
  theta_cmd->add_flag("--dvec", dvec);
  theta_cmd->add_option("--q", q_text, "endpoint Q1,Q2 (rationals); perturbed if not generic");
  theta_cmd->add_flag("--lines", show_lines, "print each broken line as JSON");

  auto* compare_cmd = app.add_subcommand("compare", "greedy element against theta^d");
  add_bc(compare_cmd);
  bool as_json = false;
  compare_cmd->add_option("--a1", a1)->required();
  compare_cmd->add_option("--a2", a2)->required();
  compare_cmd->add_flag("--json", as_json);

  auto* grid_cmd = app.add_subcommand("compare-grid", "compare over |a1|,|a2| <= radius");
  add_bc(grid_cmd);
  std::int64_t radius = 2, cap = 40;
  grid_cmd->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  grid_cmd->add_option("--order-cap", cap, "largest budget before the radius is reduced");
  grid_cmd->add_flag("--json", as_json);

  auto* render = app.add_subcommand("render", "SVG of a diagram and optional broken lines");
  add_bc(render);
  std::string theta_m, out_file;
  double extent = 4;
  render->add_option("--order", order)->required()->check(CLI::NonNegativeNumber);
  render->add_flag("--dvec", dvec);
  render->add_option("--theta", theta_m, "draw the broken lines for exponent M1,M2");
  render->add_option("--q", q_text, "endpoint for --theta");
  render->add_option("--extent", extent, "half-width of the viewport")->check(CLI::PositiveNumber);
  render->add_option("--out", out_file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const ClusterParams params{b, c};

    if (*cluster) {
      std::cout << cluster_variable(params, k) << "\n";
    } else if (*greedy) {
      const DVector d{a1, a2};
      if (!table) {
        std::cout << greedy_element(params, d).poly << "\n";
      } else {
        const CoefficientTable t = greedy_table(params, d, 0);
        std::cout << "p2\\p1";
        for (std::int64_t p1 = 0; p1 <= t.p1_max; ++p1) std::cout << '\t' << p1;
        std::cout << "\n";
        for (std::int64_t p2 = t.p2_max; p2 >= 0; --p2) {
          std::cout << p2;
          for (std::int64_t p1 = 0; p1 <= t.p1_max; ++p1) std::cout << '\t' << t.at(p1, p2);
          std::cout << "\n";
        }
      }
    } else if (*scatter) {
      const ScatteringDiagram D = build(params, dvec, order);
      for (const Wall& w : D.walls)
        std::cout << to_string(w.geometry) << ' ' << w.direction << "  f = " << w.function() << "\n";
      if (!json_out.empty()) {
        std::ofstream f(json_out);
        if (!f) throw std::runtime_error("cannot write " + json_out);
        f << to_json(D).dump(2) << "\n";
      }
    } else if (*theta_cmd) {
      const LatticeVector m = parse_vector(m_text, "--m");
      const ScatteringDiagram D = build(params, dvec, order);
      const RationalPoint hint = q_text.empty() ? kFirstQuadrantHint : parse_point(q_text);
      const RationalPoint q = pick_generic_endpoint(D, hint, m, order);
      const auto lines = enumerate_broken_lines(D, m, q, order);
      LaurentPoly t;
      for (const auto& l : lines) t += l.mono();
      std::cout << t << "\n";
      if (show_lines) {
        std::cout << "# q = (" << rational_text(q.q1) << ", " << rational_text(q.q2) << "), " << lines.size()
                  << " lines\n";
        for (const auto& l : lines) std::cout << to_json(l).dump() << "\n";
      }
    } else if (*compare_cmd) {
      const ComparisonReport r = compare(params, {a1, a2});
      if (as_json) std::cout << to_json(r).dump(2) << "\n"; else print_report(r);
      return r.equal ? 0 : 1;
    } else if (*grid_cmd) {
      const GridResult g = compare_grid(params, radius, {cap, &std::cerr});
      if (as_json) {
        json a = json::array();
        for (const auto& r : g.reports) a.push_back(to_json(r));
        std::cout << a.dump(2) << "\n";
      } else {
        for (const auto& r : g.reports) print_report(r);
        std::size_t eq = 0;
        for (const auto& r : g.reports) eq += r.equal;
        std::cout << eq << "/" << g.reports.size() << " equal (radius " << g.radius << ", order " << g.order << ")\n";
      }
      return g.all_equal() ? 0 : 1;
    } else if (*render) {
      const ScatteringDiagram D = build(params, dvec, order);
      std::vector<BrokenLine> lines;
      if (!theta_m.empty()) {
        const LatticeVector m = parse_vector(theta_m, "--theta");
        const RationalPoint hint = q_text.empty() ? kFirstQuadrantHint : parse_point(q_text);
        lines = enumerate_broken_lines(D, m, pick_generic_endpoint(D, hint, m, order), order);
      }
      std::ofstream f(out_file, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + out_file);
      f << render_svg(D, lines, {-extent, extent, -extent, extent, 640});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
