#pragma once

#include <cstdint>
#include <string>

#include "humanshape/config.hpp"
#include "humanshape/features.hpp"
#include "humanshape/pipeline.hpp"
#include "humanshape/skeleton.hpp"
#include "humanshape/synthgen.hpp"
#include "json.hpp"

namespace humanshape {

// Pixels are [row, col] pairs. Infinite ratios are written as the string "inf".
nlohmann::ordered_json pixel_json(Pixel p);

// {width, height, metric, points:[{row,col,degree,kind}],
//  nodes:[{row,col,kind,pixels}], branches:[{a,b,length,path}]}
nlohmann::ordered_json graph_json(const SkeletonGraph& graph);

// {T, B, L, R, V, H, ratio, spine_length, fork_ratios:[{fork,shape1,shape2,shape}],
//  skipped_forks, shapeneck, shapewaist}
nlohmann::ordered_json features_json(const ShapeFeatures& features);

// Report record; scores are decimals with one fractional digit.
nlohmann::ordered_json report_json(const DetectionReport& report);
nlohmann::ordered_json error_json(const FrameError& error);
nlohmann::ordered_json result_json(const FrameResult& result);

// One line, no trailing newline.
std::string report_line(const FrameResult& result);

// Landmarks and expected values; the mask is written separately as a raster.
nlohmann::ordered_json truth_json(const FigureGroundTruth& truth);

}  // namespace humanshape
