#pragma once

#include <stdexcept>
#include <string>

#include "stretchlab/constructs.hpp"
#include "stretchlab/model.hpp"
#include "stretchlab/stretch.hpp"

namespace stretchlab {

// Filesystem failures (open/read/write) carry the path in the message.
// Schema or syntax problems in parsed documents throw std::invalid_argument
// instead, so callers can map the two to different exit codes.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// {n, p, seed, points: [[x,y],...], edges: [[i,j],...]} with i<j, edges in
// ascending lexicographic order. Numbers survive a round trip bit for bit.
std::string graph_to_json(const EmbeddedGraph& g);
EmbeddedGraph graph_from_json(const std::string& text);

// {stretch, defined, pair: [i,j], d_graph, d_euclid}; an undefined report
// uses null for everything but the flag.
std::string stretch_report_to_json(const StretchReport& rep);

// {c, A, disc_assignment: [[vertex, disc],...], two_vertex_discs,
//  nice_discs, lambda, conditioning_ok}; disc 0 means the exterior region.
std::string trace_to_json(const ThreePhaseTrace& trace);

}  // namespace stretchlab
