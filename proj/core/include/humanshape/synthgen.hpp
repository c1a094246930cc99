#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "humanshape/image.hpp"

namespace humanshape {

enum class Pose { ArmsDown, ArmsOut, SlightBend };

// Stick-figure proportions. Fractions are measured along the head-to-foot
// skeleton path: the neck sits neck_fraction of the way down from the head
// tip, the waist waist_fraction of the way down.
struct HumanoidSpec {
  int height_px = 160;  // vertical distance from head tip to foot tip
  double neck_fraction = 0.125;
  double waist_fraction = 0.42;
  double arm_span_fraction = 0.30;  // hand-to-hand distance / height
  int limb_thickness = 5;
  Pose pose = Pose::ArmsDown;
  double jitter_px = 0.0;  // seed-driven perturbation of hand/foot tips; 0 disables
};

struct FigureGroundTruth {
  BinaryMask mask;
  // Skeleton-level landmarks: head_tip is the head disk centre, joint and tip
  // landmarks sit on stroke centre lines.
  std::map<std::string, Pixel> landmarks;
  double expected_ratio_vh = 0.0;
  std::vector<double> expected_fork_shapes;  // neck then waist, humanoids only
};

// Throws SpecTooSmall for height < 60, thickness < 3, or inconsistent fractions.
FigureGroundTruth render_humanoid(const HumanoidSpec& spec, std::uint64_t seed = 0);

// Horizontal body on four legs with a raised head at the front (right).
// Requires body_length_px > leg_length_px >= 10.
FigureGroundTruth render_quadruped(int body_length_px = 120, int leg_length_px = 40,
                                   int thickness = 5);

enum class RigidKind { Box, CarLike };

// Solid w x h rectangle, or a car silhouette (body, cabin, wheels) inside a
// w x h envelope. Requires w, h >= 10.
FigureGroundTruth render_rigid(RigidKind kind, int w, int h);

// Nearest-neighbour upscale by an integer factor.
BinaryMask upscale(const BinaryMask& mask, int factor);

// Smooth diagonal gradient with mild deterministic noise, values in [60, 210].
GrayImage textured_background(int width, int height, std::uint64_t seed);

// Copy of background with mask foreground painted at `intensity`, the mask's
// (0,0) placed at `offset`. Pixels falling outside the background are dropped.
GrayImage composite(const GrayImage& background, const BinaryMask& figure, Pixel offset,
                    std::uint8_t intensity = 20);

// Landmark shifted the same way as composite places the figure.
Pixel translate(Pixel p, Pixel offset);

}  // namespace humanshape
