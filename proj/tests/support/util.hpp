#pragma once
// Shared helpers for the test suites.

#include <fstream>
#include <sstream>

#include "rspin/io.hpp"

namespace testsupport {

inline rspin::json load_fixture_json(const std::string& name) {
  std::string path = std::string(RSPIN_FIXTURE_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  return rspin::json::parse(in);
}

inline rspin::RSpinGraph load_fixture(const std::string& name) {
  return rspin::parse_graph(load_fixture_json(name));
}

// Smooth graded one-vertex disk graph: k boundary tails (tw r-2, alt 1,
// markings 1..k) and internal tails with twists a (markings 1..l).
inline rspin::RSpinGraph smooth_disk(int r, int k, const std::vector<int>& a) {
  using namespace rspin;
  RSpinGraph g;
  g.r = r;
  g.vertices["v0"] = VertexKind::Open;
  for (int i = 0; i < k; ++i) {
    std::string id = "b" + std::to_string(i + 1);
    g.half_edges[id] = {id, "v0", Sector::Boundary, r - 2, 1, Marking{i + 1}, false, false};
  }
  for (size_t i = 0; i < a.size(); ++i) {
    std::string id = "z" + std::to_string(i + 1);
    g.half_edges[id] = {id, "v0", Sector::Internal, a[i], 0,
                        Marking{static_cast<int>(i + 1)}, false, false};
  }
  return g;
}

}  // namespace testsupport
