#include "dhat/render.hpp"

#include <sstream>

namespace dhat {

std::string render_svg(const AnalysisReport& rep) {
  const PVModel& m = rep.model;
  if (m.lengths.size() != 2)
    throw std::invalid_argument("render_svg: exactly 2 processes required");
  const int lx = m.lengths[0], ly = m.lengths[1];
  const int cell = 48, pad = 24;
  const int w = lx * cell + 2 * pad, h = ly * cell + 2 * pad;
  // process 1 runs right, process 2 runs up
  auto px = [&](int x) { return pad + x * cell; };
  auto py = [&](int y) { return pad + (ly - y) * cell; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
     << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  for (int x = 0; x < lx; ++x)
    for (int y = 0; y < ly; ++y) {
      bool kept = m.complex
                      .find(2, grid_cube_name({x, y}, {true, true}))
                      .has_value();
      os << "<rect x=\"" << px(x) << "\" y=\"" << py(y + 1) << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\""
         << (kept ? "#f8f8f8" : "#555555") << "\" stroke=\"none\"/>\n";
    }
  // surviving edges
  for (int x = 0; x <= lx; ++x)
    for (int y = 0; y <= ly; ++y) {
      if (x < lx && m.complex.find(1, grid_cube_name({x, y}, {true, false})))
        os << "<line x1=\"" << px(x) << "\" y1=\"" << py(y) << "\" x2=\"" << px(x + 1)
           << "\" y2=\"" << py(y) << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
      if (y < ly && m.complex.find(1, grid_cube_name({x, y}, {false, true})))
        os << "<line x1=\"" << px(x) << "\" y1=\"" << py(y) << "\" x2=\"" << px(x)
           << "\" y2=\"" << py(y + 1) << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    }
  // vertices: plain, unreachable (hollow), unsafe (amber), deadlock (red)
  for (const auto& [v, id] : m.vertex_of) {
    std::string fill = "#222";
    std::string extra;
    int r = 3;
    if (rep.unreachable.count(v)) {
      fill = "none";
      extra = " stroke=\"#888\" stroke-width=\"2\" class=\"unreachable\"";
      r = 5;
    }
    if (rep.unsafe.count(v)) {
      fill = "#e8a020";
      extra = " class=\"unsafe\"";
      r = 5;
    }
    if (rep.deadlocks.count(v)) {
      fill = "#d03030";
      extra = " class=\"deadlock\"";
      r = 6;
    }
    os << "<circle cx=\"" << px(v[0]) << "\" cy=\"" << py(v[1]) << "\" r=\"" << r
       << "\" fill=\"" << fill << "\"" << extra << "/>\n";
  }
  os << "<circle cx=\"" << px(0) << "\" cy=\"" << py(0)
     << "\" r=\"8\" fill=\"none\" stroke=\"#3060d0\" stroke-width=\"2\"/>\n";
  os << "<circle cx=\"" << px(lx) << "\" cy=\"" << py(ly)
     << "\" r=\"8\" fill=\"none\" stroke=\"#30a050\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace dhat
