#ifndef RPT_IO_HPP
#define RPT_IO_HPP

#include <iosfwd>
#include <string>

#include "rpt/certify.hpp"
#include "rpt/graph.hpp"
#include "rpt/path_system.hpp"

namespace rpt {

/// Bit-exact text formats. Serialize then parse is the identity on every
/// valid object; malformed input raises input_error with a line number.

std::string serialize_graph(const Graph& g);
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

std::string serialize_partition(const RobustPartition& rp);
RobustPartition parse_partition(std::istream& in, int n);
RobustPartition parse_partition_string(const std::string& text, int n);

std::string serialize_path_system(const PathSystem& ps);
PathSystem parse_path_system(std::istream& in, int n);

std::string serialize_certificate(const Certificate& cert);

/// Cycle line: ids in cyclic order starting at the minimum id, second id the
/// smaller neighbour.
std::string serialize_cycle(const std::vector<int>& cycle);

}  // namespace rpt

#endif
