#include "ncert/figure.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "ncert/operational.hpp"

namespace ncert {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string bloch_figure_svg(const FigureOptions& options) {
  const double c = options.size / 2.0;
  const double r = options.radius;
  std::map<std::string, std::pair<double, double>> at;
  for (const auto& name : canonical_state_names()) {
    const BlochVector b = bloch_from_density(DensityOperator::pure(canonical_state_vector(name)));
    at[name] = {c + r * b.x(), c - r * b.z()};
  }
  auto point = [&](const std::string& n) { return num(at[n].first) + "," + num(at[n].second); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(options.size) << "\" height=\""
    << num(options.size) << "\" viewBox=\"0 0 " << num(options.size) << " " << num(options.size) << "\">\n"
    << "  <title>Six pure qubit states in the z-x plane of the Bloch ball</title>\n"
    << "  <circle class=\"disk\" cx=\"" << num(c) << "\" cy=\"" << num(c) << "\" r=\"" << num(r)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& [x, y] : {std::pair{"a", "A"}, std::pair{"b", "B"}, std::pair{"c", "C"}})
    s << "  <line class=\"segment\" x1=\"" << num(at[x].first) << "\" y1=\"" << num(at[x].second) << "\" x2=\""
      << num(at[y].first) << "\" y2=\"" << num(at[y].second) << "\" stroke=\"blue\"/>\n";
  s << "  <polygon class=\"triangle\" points=\"" << point("a") << " " << point("b") << " " << point("c")
    << "\" fill=\"none\" stroke=\"red\"/>\n";
  s << "  <polygon class=\"triangle\" points=\"" << point("A") << " " << point("B") << " " << point("C")
    << "\" fill=\"none\" stroke=\"green\"/>\n";
  for (const auto& name : canonical_state_names()) {
    const auto [x, y] = at[name];
    const double lx = c + 1.12 * (x - c);
    const double ly = c + 1.12 * (y - c);
    s << "  <circle class=\"state\" id=\"state-" << name << "\" cx=\"" << num(x) << "\" cy=\"" << num(y)
      << "\" r=\"4\" fill=\"black\"/>\n"
      << "  <text class=\"state-label\" x=\"" << num(lx) << "\" y=\"" << num(ly)
      << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">sigma_" << name << "</text>\n";
  }
  s << "  <circle class=\"center\" cx=\"" << num(c) << "\" cy=\"" << num(c) << "\" r=\"3\" fill=\"white\" stroke=\"black\"/>\n"
    << "  <text class=\"center-label\" x=\"" << num(c + 8.0) << "\" y=\"" << num(c - 8.0) << "\">I/2</text>\n"
    << "</svg>\n";
  return s.str();
}

}  // namespace ncert
