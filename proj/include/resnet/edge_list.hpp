#ifndef RESNET_EDGE_LIST_HPP
#define RESNET_EDGE_LIST_HPP

#include <iosfwd>
#include <string>

#include "resnet/network.hpp"

namespace resnet {

// Text format, one edge per line:
//   u v [conductance]
// Whitespace separated, vertex ids are non-negative integers, a missing
// conductance means 1.0, and everything after '#' is a comment. The vertex
// count is one more than the largest id mentioned.
Network read_edge_list(std::istream& in);
Network read_edge_list_file(const std::string& path);

// Writes edges in id order using the reference orientation. Conductances
// are printed with round-trip precision.
void write_edge_list(std::ostream& out, const Network& network);

}  // namespace resnet

#endif
