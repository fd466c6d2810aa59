#include "d2dmatch/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace d2d {

namespace {

nlohmann::json graph_to_json_obj(const WeightedGraph& g) {
  nlohmann::json j;
  j["n"] = g.num_nodes();
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
  j["edges"] = std::move(edges);
  if (g.has_quantities()) {
    j["quantities"] = std::vector<int>(g.quantities().begin(), g.quantities().end());
  }
  if (g.has_coords()) {
    auto coords = nlohmann::json::array();
    for (const auto& p : g.coords()) coords.push_back({p.x, p.y});
    j["coords"] = std::move(coords);
  }
  return j;
}

}  // namespace

std::string graph_to_json(const WeightedGraph& g) { return graph_to_json_obj(g).dump(); }

WeightedGraph graph_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    edges.push_back(Edge{e.at(0).get<std::int32_t>(), e.at(1).get<std::int32_t>(),
                         e.at(2).get<double>(), -1});
  }
  std::optional<std::vector<int>> qs;
  if (j.contains("quantities")) qs = j.at("quantities").get<std::vector<int>>();
  std::optional<std::vector<Point>> coords;
  if (j.contains("coords")) {
    std::vector<Point> pts;
    for (const auto& c : j.at("coords")) pts.push_back(Point{c.at(0), c.at(1)});
    coords = std::move(pts);
  }
  return WeightedGraph(n, std::move(edges), std::move(qs), std::move(coords));
}

void write_graph_json(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << graph_to_json_obj(g).dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

WeightedGraph read_graph_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_json(ss.str());
}

void write_graph_csv(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "i,j,w\n";
  out.precision(17);
  for (const auto& e : g.edges()) out << e.u << "," << e.v << "," << e.w << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

WeightedGraph read_graph_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  int max_node = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("i,", 0) == 0) continue;  // header
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
      throw ParseError("edge csv: expected i,j,w", lineno);
    try {
      Edge e{static_cast<std::int32_t>(std::stol(a)), static_cast<std::int32_t>(std::stol(b)),
             std::stod(c), -1};
      edges.push_back(e);
      max_node = std::max({max_node, static_cast<int>(e.u), static_cast<int>(e.v)});
    } catch (const std::exception&) {
      throw ParseError("edge csv: malformed number", lineno);
    }
  }
  return WeightedGraph(max_node + 1, std::move(edges));
}

std::vector<LocationRecord> parse_locations_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("location csv: empty file", 1);
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
  };
  const auto header = split(line);
  const bool has_floor = header.size() == 4 && header[3] == "floor";
  if (header.size() < 3 || header[0] != "user_id" || header[1] != "x" || header[2] != "y" ||
      (header.size() == 4 && !has_floor) || header.size() > 4)
    throw ParseError("location csv: expected header user_id,x,y[,floor]", 1);

  std::vector<LocationRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size())
      throw ParseError("location csv: wrong field count", lineno);
    LocationRecord r;
    r.user_id = fields[0];
    try {
      r.x = std::stod(fields[1]);
      r.y = std::stod(fields[2]);
      r.floor = has_floor ? std::stoi(fields[3]) : -1;
    } catch (const std::exception&) {
      throw ParseError("location csv: malformed number", lineno);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<LocationRecord> read_locations_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return parse_locations_csv(in);
}

void write_locations_csv(const std::vector<LocationRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const bool has_floor = !records.empty() && records.front().floor >= 0;
  out << (has_floor ? "user_id,x,y,floor\n" : "user_id,x,y\n");
  out.precision(17);
  for (const auto& r : records) {
    out << r.user_id << "," << r.x << "," << r.y;
    if (has_floor) out << "," << r.floor;
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace d2d
