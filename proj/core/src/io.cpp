#include "stretchlab/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

namespace stretchlab {

namespace {

using ordered = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return std::move(buf).str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string graph_to_json(const EmbeddedGraph& g) {
  ordered j;
  j["n"] = g.params.n;
  j["p"] = g.params.p;
  j["seed"] = g.params.seed;
  auto points = ordered::array();
  for (const Point& p : g.points) points.push_back({p.x, p.y});
  j["points"] = std::move(points);
  auto edges = ordered::array();
  const std::size_t n = g.n();
  for (std::size_t i = 0; i < n; ++i) {
    // scan the packed row above the diagonal
    for (std::size_t w = i >> 6; w < g.adj.row_words(); ++w) {
      std::uint64_t bits = g.adj.row_word(i, w);
      if ((w << 6) <= i) {
        bits &= ~((std::uint64_t{2} << (i & 63)) - 1);
      }
      while (bits != 0) {
        const std::size_t j2 = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        edges.push_back({i, j2});
      }
    }
  }
  j["edges"] = std::move(edges);
  return j.dump();
}

EmbeddedGraph graph_from_json(const std::string& text) {
  ordered j;
  try {
    j = ordered::parse(text);
  } catch (const std::exception& e) {
    bad(std::string("graph json: ") + e.what());
  }
  if (!j.is_object()) bad("graph json: top level must be an object");
  for (const std::string key : {"n", "p", "seed", "points", "edges"}) {
    if (!j.contains(key)) bad("graph json: missing field " + key);
  }
  if (j.size() != 5) bad("graph json: unexpected extra fields");
  if (!j["n"].is_number_unsigned()) bad("graph json: n must be unsigned");
  if (!j["p"].is_number()) bad("graph json: p must be a number");
  if (!j["seed"].is_number_unsigned()) {
    bad("graph json: seed must be unsigned");
  }
  ModelParams params;
  params.n = j["n"].get<std::uint64_t>();
  params.p = j["p"].get<double>();
  params.seed = j["seed"].get<std::uint64_t>();
  validate(params);

  if (!j["points"].is_array()) bad("graph json: points must be an array");
  std::vector<Point> points;
  points.reserve(j["points"].size());
  for (const auto& item : j["points"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
        !item[1].is_number()) {
      bad("graph json: each point must be [x, y]");
    }
    const Point p{item[0].get<double>(), item[1].get<double>()};
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      bad("graph json: point outside the unit square");
    }
    points.push_back(p);
  }

  if (!j["edges"].is_array()) bad("graph json: edges must be an array");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(j["edges"].size());
  for (const auto& item : j["edges"]) {
    if (!item.is_array() || item.size() != 2 ||
        !item[0].is_number_unsigned() || !item[1].is_number_unsigned()) {
      bad("graph json: each edge must be [i, j]");
    }
    const auto a = item[0].get<std::uint64_t>();
    const auto b = item[1].get<std::uint64_t>();
    if (a >= b) bad("graph json: edges must satisfy i < j");
    if (b >= params.n) bad("graph json: edge endpoint out of range");
    edges.emplace_back(static_cast<std::uint32_t>(a),
                       static_cast<std::uint32_t>(b));
  }
  try {
    return from_points_edges(params, std::move(points), edges);
  } catch (const std::invalid_argument& e) {
    bad(std::string("graph json: ") + e.what());
  }
}

std::string stretch_report_to_json(const StretchReport& rep) {
  ordered j;
  if (rep.defined) {
    j["stretch"] = rep.value;
    j["defined"] = true;
    j["pair"] = {rep.pair_i, rep.pair_j};
    j["d_graph"] = rep.d_graph;
    j["d_euclid"] = rep.d_euclid;
  } else {
    j["stretch"] = nullptr;
    j["defined"] = false;
    j["pair"] = nullptr;
    j["d_graph"] = nullptr;
    j["d_euclid"] = nullptr;
  }
  return j.dump();
}

std::string trace_to_json(const ThreePhaseTrace& trace) {
  ordered j;
  j["c"] = trace.c;
  j["A"] = trace.primary;
  auto assignment = ordered::array();
  for (std::size_t t = 0; t < trace.disc_assignment.size(); ++t) {
    assignment.push_back(
        {trace.first_count + t, trace.disc_assignment[t]});
  }
  j["disc_assignment"] = std::move(assignment);
  j["two_vertex_discs"] = trace.two_vertex_discs;
  j["nice_discs"] = trace.nice_discs;
  j["lambda"] = trace.lambda;
  j["conditioning_ok"] = trace.conditioning_ok;
  return j.dump();
}

}  // namespace stretchlab
