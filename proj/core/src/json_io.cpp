#include "humanshape/json_io.hpp"

#include <cmath>

namespace humanshape {

using json = nlohmann::ordered_json;

namespace {

json real_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double tenths(Tenths t) { return t / 10.0; }

}  // namespace

json pixel_json(Pixel p) { return json::array({p.row, p.col}); }

json graph_json(const SkeletonGraph& graph) {
  json points = json::array();
  for (const auto& p : graph.points()) {
    points.push_back({{"row", p.position.row},
                      {"col", p.position.col},
                      {"degree", p.degree},
                      {"kind", to_string(p.kind)}});
  }
  json nodes = json::array();
  for (const auto& n : graph.nodes()) {
    json pixels = json::array();
    for (const Pixel q : n.pixels) pixels.push_back(pixel_json(q));
    nodes.push_back({{"row", n.position.row},
                     {"col", n.position.col},
                     {"kind", to_string(n.kind)},
                     {"pixels", std::move(pixels)}});
  }
  json branches = json::array();
  for (const auto& b : graph.branches()) {
    json path = json::array();
    for (const Pixel q : b.path) path.push_back(pixel_json(q));
    branches.push_back(
        {{"a", b.a}, {"b", b.b}, {"length", b.geodesic_length}, {"path", std::move(path)}});
  }
  return {{"width", graph.mask().width()},
          {"height", graph.mask().height()},
          {"metric", graph.metric() == StepMetric::Unit ? "unit" : "geodesic"},
          {"points", std::move(points)},
          {"nodes", std::move(nodes)},
          {"branches", std::move(branches)}};
}

namespace {

json ratios_json(const std::vector<ForkRatio>& ratios) {
  json out = json::array();
  for (const auto& r : ratios) {
    out.push_back({{"fork", pixel_json(r.fork)},
                   {"shape1", r.shape1},
                   {"shape2", r.shape2},
                   {"shape", r.shape}});
  }
  return out;
}

json pixels_json(const std::vector<Pixel>& pixels) {
  json out = json::array();
  for (const Pixel p : pixels) out.push_back(pixel_json(p));
  return out;
}

}  // namespace

json features_json(const ShapeFeatures& f) {
  return {{"T", pixel_json(f.extremal.top)},
          {"B", pixel_json(f.extremal.bottom)},
          {"L", pixel_json(f.extremal.left)},
          {"R", pixel_json(f.extremal.right)},
          {"V", f.posture.vertical},
          {"H", f.posture.horizontal},
          {"ratio", real_or_inf(f.posture.ratio)},
          {"spine_length", f.spine.length},
          {"fork_ratios", ratios_json(f.fork_ratios)},
          {"skipped_forks", pixels_json(f.skipped_forks)},
          {"shapeneck", f.flags.shapeneck},
          {"shapewaist", f.flags.shapewaist}};
}

json report_json(const DetectionReport& r) {
  const Diagnostics& d = r.diagnostics;
  json diag = {{"background", d.background_index},
               {"correlation", d.correlation ? json(*d.correlation) : json(nullptr)},
               {"stages", d.stages},
               {"notes", d.notes},
               {"alert", d.alert},
               {"movement_alert", d.movement_alert}};
  if (d.stages.size() > 1) {
    diag["diff_pixels"] = d.diff_pixels;
    diag["object_area"] = d.object_area;
    diag["other_components"] = d.other_components;
  }
  if (d.skeleton_pixels > 0) {
    diag["skeleton"] = {{"pixels", d.skeleton_pixels},
                        {"endpoints", d.endpoints},
                        {"forks", d.forks},
                        {"branches", d.branches}};
  }
  if (d.posture) {
    diag["V"] = d.posture->vertical;
    diag["H"] = d.posture->horizontal;
    diag["ratio"] = real_or_inf(d.posture->ratio);
    diag["fork_ratios"] = ratios_json(d.fork_ratios);
    diag["skipped_forks"] = pixels_json(d.skipped_forks);
  }
  if (!d.timing_ms.empty()) diag["timing_ms"] = d.timing_ms;

  json centroid = nullptr;
  if (r.centroid) centroid = json::array({r.centroid->row, r.centroid->col});
  json bbox = nullptr;
  if (r.bbox) {
    bbox = json::array({r.bbox->min_row, r.bbox->min_col, r.bbox->max_row, r.bbox->max_col});
  }
  json out = json::object();
  out["frame_id"] = r.frame_id;
  out["changed"] = r.changed;
  out["possibility"] = r.possibility;
  out["shapeneck"] = r.shapeneck;
  out["shapewaist"] = r.shapewaist;
  out["shape_pos"] = tenths(r.shape_pos);
  out["final_score"] = tenths(r.final_score);
  out["category"] = to_string(r.category);
  out["centroid"] = std::move(centroid);
  out["bbox"] = std::move(bbox);
  out["movement"] = to_string(r.movement);
  out["diagnostics"] = std::move(diag);
  return out;
}

json error_json(const FrameError& e) { return {{"frame_id", e.frame_id}, {"error", e.message}}; }

json result_json(const FrameResult& result) {
  if (const auto* r = std::get_if<DetectionReport>(&result)) return report_json(*r);
  return error_json(std::get<FrameError>(result));
}

std::string report_line(const FrameResult& result) { return result_json(result).dump(); }

json truth_json(const FigureGroundTruth& t) {
  json landmarks = json::object();
  for (const auto& [name, p] : t.landmarks) landmarks[name] = pixel_json(p);
  return {{"width", t.mask.width()},
          {"height", t.mask.height()},
          {"landmarks", std::move(landmarks)},
          {"expected_ratio_vh", real_or_inf(t.expected_ratio_vh)},
          {"expected_fork_shapes", t.expected_fork_shapes}};
}

}  // namespace humanshape
