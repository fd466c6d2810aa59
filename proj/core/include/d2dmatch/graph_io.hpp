#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2dmatch/generators.hpp"
#include "d2dmatch/graph.hpp"

namespace d2d {

// Thrown by the CSV readers; carries the 1-based line number of the offending record.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Graph JSON: {"n":..,"edges":[[i,j,w],..],"quantities":[..]?,"coords":[[x,y],..]?}
std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const std::string& text);
void write_graph_json(const WeightedGraph& g, const std::string& path);
WeightedGraph read_graph_json(const std::string& path);

// CSV edge list "i,j,w" with a header row.
void write_graph_csv(const WeightedGraph& g, const std::string& path);
WeightedGraph read_graph_csv(const std::string& path);

// Location CSV with header user_id,x,y[,floor].
std::vector<LocationRecord> read_locations_csv(const std::string& path);
std::vector<LocationRecord> parse_locations_csv(std::istream& in);
void write_locations_csv(const std::vector<LocationRecord>& records, const std::string& path);

}  // namespace d2d
