#include "resnet/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "resnet/errors.hpp"

namespace resnet {

Network read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t vertex_count = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, c, extra;
    if (!(fields >> a)) continue;
    auto fail = [&](const std::string& why) {
      throw ArgumentError("edge list line " + std::to_string(line_no) + ": " + why);
    };
    if (!(fields >> b)) fail("expected 'u v [conductance]'");
    auto parse_id = [&](const std::string& s) {
      std::size_t id = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
      if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad vertex id '" + s + "'");
      return id;
    };
    Edge edge{parse_id(a), parse_id(b), 1.0};
    if (fields >> c) {
      try {
        std::size_t used = 0;
        edge.conductance = std::stod(c, &used);
        if (used != c.size()) fail("bad conductance '" + c + "'");
      } catch (const std::logic_error&) {
        fail("bad conductance '" + c + "'");
      }
      if (fields >> extra) fail("trailing field '" + extra + "'");
    }
    vertex_count = std::max({vertex_count, edge.tail + 1, edge.head + 1});
    edges.push_back(edge);
  }
  return Network(vertex_count, std::move(edges));
}

Network read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Network& network) {
  char buf[64];
  for (const Edge& edge : network.edges()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, edge.conductance);
    out << edge.tail << ' ' << edge.head << ' ' << std::string_view(buf, ptr - buf) << '\n';
  }
}

}  // namespace resnet
