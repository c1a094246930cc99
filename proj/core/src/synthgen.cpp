#include "humanshape/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "humanshape/errors.hpp"

namespace humanshape {
namespace {

struct Point {
  double row = 0.0;
  double col = 0.0;
};

struct Segment {
  Point a;
  Point b;
  double radius = 0.0;
};

struct Disk {
  Point centre;
  double radius = 0.0;
};

struct Rect {
  double min_row, min_col, max_row, max_col;  // inclusive pixel bounds
};

double distance_to_segment(Point p, const Segment& s) {
  const double dr = s.b.row - s.a.row;
  const double dc = s.b.col - s.a.col;
  const double len2 = dr * dr + dc * dc;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.row - s.a.row) * dr + (p.col - s.a.col) * dc) / len2, 0.0, 1.0);
  const double er = s.a.row + t * dr - p.row;
  const double ec = s.a.col + t * dc - p.col;
  return std::sqrt(er * er + ec * ec);
}

// Collects primitives, then rasterises them onto a canvas just large enough
// to hold them plus a margin. Coordinates are shifted so the canvas starts at
// (0, 0); the same shift applies to landmarks.
class Canvas {
 public:
  void add(Segment s) { segments_.push_back(s); }
  void add(Disk d) { disks_.push_back(d); }
  void add(Rect r) { rects_.push_back(r); }

  BinaryMask rasterise(int margin) {
    double min_r = 1e300, min_c = 1e300, max_r = -1e300, max_c = -1e300;
    auto extend = [&](double r0, double c0, double r1, double c1) {
      min_r = std::min(min_r, r0);
      min_c = std::min(min_c, c0);
      max_r = std::max(max_r, r1);
      max_c = std::max(max_c, c1);
    };
    for (const auto& s : segments_) {
      extend(std::min(s.a.row, s.b.row) - s.radius, std::min(s.a.col, s.b.col) - s.radius,
             std::max(s.a.row, s.b.row) + s.radius, std::max(s.a.col, s.b.col) + s.radius);
    }
    for (const auto& d : disks_) {
      extend(d.centre.row - d.radius, d.centre.col - d.radius, d.centre.row + d.radius,
             d.centre.col + d.radius);
    }
    for (const auto& r : rects_) extend(r.min_row, r.min_col, r.max_row, r.max_col);

    origin_row_ = static_cast<int>(std::floor(min_r)) - margin;
    origin_col_ = static_cast<int>(std::floor(min_c)) - margin;
    const int height = static_cast<int>(std::ceil(max_r)) - origin_row_ + margin + 1;
    const int width = static_cast<int>(std::ceil(max_c)) - origin_col_ + margin + 1;

    BinaryMask mask(width, height);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const Point p{static_cast<double>(r + origin_row_), static_cast<double>(c + origin_col_)};
        bool on = false;
        for (const auto& s : segments_) {
          if (distance_to_segment(p, s) <= s.radius) {
            on = true;
            break;
          }
        }
        for (std::size_t i = 0; !on && i < disks_.size(); ++i) {
          const double dr = p.row - disks_[i].centre.row;
          const double dc = p.col - disks_[i].centre.col;
          const double reach = disks_[i].radius + 0.5;  // no single-pixel nubs at the poles
          on = dr * dr + dc * dc <= reach * reach;
        }
        for (std::size_t i = 0; !on && i < rects_.size(); ++i) {
          on = p.row >= rects_[i].min_row && p.row <= rects_[i].max_row &&
               p.col >= rects_[i].min_col && p.col <= rects_[i].max_col;
        }
        if (on) mask.set(r, c, true);
      }
    }
    return mask;
  }

  Pixel to_pixel(Point p) const {
    return {static_cast<int>(std::lround(p.row)) - origin_row_,
            static_cast<int>(std::lround(p.col)) - origin_col_};
  }

 private:
  std::vector<Segment> segments_;
  std::vector<Disk> disks_;
  std::vector<Rect> rects_;
  int origin_row_ = 0;
  int origin_col_ = 0;
};

Point rotate_about(Point p, Point pivot, double radians) {
  const double dr = p.row - pivot.row;
  const double dc = p.col - pivot.col;
  const double cs = std::cos(radians);
  const double sn = std::sin(radians);
  // Positive angle leans the upper body towards +col.
  return {pivot.row + dr * cs - dc * sn, pivot.col + dr * sn + dc * cs};
}

double ratio_from_endpoints(const std::vector<Pixel>& endpoints) {
  int min_r = endpoints.front().row, max_r = min_r;
  int min_c = endpoints.front().col, max_c = min_c;
  for (const Pixel p : endpoints) {
    min_r = std::min(min_r, p.row);
    max_r = std::max(max_r, p.row);
    min_c = std::min(min_c, p.col);
    max_c = std::max(max_c, p.col);
  }
  const int h = max_c - min_c;
  return h == 0 ? std::numeric_limits<double>::infinity()
                : static_cast<double>(max_r - min_r) / static_cast<double>(h);
}

constexpr int kMargin = 8;

}  // namespace

FigureGroundTruth render_humanoid(const HumanoidSpec& spec, std::uint64_t seed) {
  const int h = spec.height_px;
  const int t = spec.limb_thickness;
  if (h < 60) throw SpecTooSmall("humanoid height must be >= 60 px");
  if (t < 3) throw SpecTooSmall("limb thickness must be >= 3 px");
  if (!(spec.neck_fraction > 0.0 && spec.neck_fraction < spec.waist_fraction &&
        spec.waist_fraction < 1.0)) {
    throw SpecTooSmall("fractions must satisfy 0 < neck < waist < 1");
  }
  if (!(spec.arm_span_fraction > 0.0)) throw SpecTooSmall("arm span must be positive");

  const int hip_half = std::max(t + 2, static_cast<int>(std::lround(h / 16.0)));
  const int path_len = h + hip_half;  // head tip -> waist -> hip corner -> foot
  const int neck_drop = static_cast<int>(std::lround(spec.neck_fraction * path_len));
  const int waist_drop = static_cast<int>(std::lround(spec.waist_fraction * path_len));
  const int half_span = static_cast<int>(std::lround(spec.arm_span_fraction * h / 2.0));
  const int head_radius =
      std::min(std::max(t, static_cast<int>(std::lround(0.055 * h))), neck_drop - t - 1);
  if (head_radius < t / 2 + 1) throw SpecTooSmall("neck too short to hold a head");
  if (waist_drop - neck_drop < 3 * t) throw SpecTooSmall("trunk too short for the thickness");
  if (path_len - waist_drop - hip_half < 3 * t) throw SpecTooSmall("legs too short");
  if (half_span < 2 * t) throw SpecTooSmall("arm span too narrow for the thickness");

  const double r = t / 2.0;
  Point head{0.0, 0.0};
  Point neck{static_cast<double>(neck_drop), 0.0};
  Point waist{static_cast<double>(waist_drop), 0.0};
  Point left_shoulder{neck.row, static_cast<double>(-half_span)};
  Point right_shoulder{neck.row, static_cast<double>(half_span)};
  Point left_hand = left_shoulder;
  Point right_hand = right_shoulder;
  if (spec.pose != Pose::ArmsOut) {
    const double hand_row = waist.row - t;
    left_hand = {hand_row, left_shoulder.col};
    right_hand = {hand_row, right_shoulder.col};
  }
  Point left_hip{waist.row, static_cast<double>(-hip_half)};
  Point right_hip{waist.row, static_cast<double>(hip_half)};
  Point left_foot{static_cast<double>(h), left_hip.col};
  Point right_foot{static_cast<double>(h), right_hip.col};

  if (spec.pose == Pose::SlightBend) {
    const double lean = 8.0 * std::numbers::pi / 180.0;
    for (Point* p : {&head, &neck, &left_shoulder, &right_shoulder, &left_hand, &right_hand}) {
      *p = rotate_about(*p, waist, lean);
    }
  }
  if (spec.jitter_px > 0.0) {
    std::mt19937_64 rng(seed);
    auto jitter = [&]() {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
      return (2.0 * u - 1.0) * spec.jitter_px;
    };
    for (Point* p : {&left_hand, &right_hand}) {
      p->row += jitter();
      p->col += jitter();
    }
    for (Point* p : {&left_foot, &right_foot}) p->col += jitter();
  }

  Canvas canvas;
  canvas.add(Disk{head, static_cast<double>(head_radius)});
  canvas.add(Segment{head, neck, r});
  canvas.add(Segment{neck, waist, r});
  canvas.add(Segment{left_shoulder, right_shoulder, r});
  if (spec.pose != Pose::ArmsOut) {
    canvas.add(Segment{left_shoulder, left_hand, r});
    canvas.add(Segment{right_shoulder, right_hand, r});
  }
  canvas.add(Segment{left_hip, right_hip, r});
  canvas.add(Segment{left_hip, left_foot, r});
  canvas.add(Segment{right_hip, right_foot, r});

  FigureGroundTruth out{canvas.rasterise(kMargin), {}, 0.0, {}};
  out.landmarks = {
      {"head_tip", canvas.to_pixel(head)},
      {"neck_joint", canvas.to_pixel(neck)},
      {"waist_joint", canvas.to_pixel(waist)},
      {"foot_tip", canvas.to_pixel(left_foot)},
      {"right_foot_tip", canvas.to_pixel(right_foot)},
      {"left_hand_tip", canvas.to_pixel(left_hand)},
      {"right_hand_tip", canvas.to_pixel(right_hand)},
  };
  out.expected_ratio_vh = ratio_from_endpoints(
      {out.landmarks["head_tip"], out.landmarks["foot_tip"], out.landmarks["right_foot_tip"],
       out.landmarks["left_hand_tip"], out.landmarks["right_hand_tip"]});
  out.expected_fork_shapes = {(1.0 - spec.neck_fraction) / spec.neck_fraction,
                              (1.0 - spec.waist_fraction) / spec.waist_fraction};
  return out;
}

FigureGroundTruth render_quadruped(int body_length_px, int leg_length_px, int thickness) {
  if (!(body_length_px > leg_length_px) || leg_length_px < 10) {
    throw SpecTooSmall("quadruped requires body > legs >= 10");
  }
  if (thickness < 3) throw SpecTooSmall("thickness must be >= 3 px");
  const double body = body_length_px;
  const double leg = leg_length_px;
  const double r = thickness / 2.0;

  Canvas canvas;
  const Point rear{0.0, 0.0};
  const Point front{0.0, body};
  canvas.add(Segment{rear, front, r});
  std::vector<Point> feet;
  for (const double f : {0.1, 0.25, 0.75, 0.9}) {
    const Point hip{0.0, std::round(f * body)};
    const Point foot{leg, hip.col};
    canvas.add(Segment{hip, foot, r});
    feet.push_back(foot);
  }
  const Point head{-std::round(0.25 * body), body + std::round(0.12 * body)};
  canvas.add(Segment{front, head, r});
  canvas.add(Disk{head, std::max(static_cast<double>(thickness), std::round(0.07 * body))});

  FigureGroundTruth out{canvas.rasterise(kMargin), {}, 0.0, {}};
  out.landmarks["head_tip"] = canvas.to_pixel(head);
  out.landmarks["tail_tip"] = canvas.to_pixel(rear);
  for (std::size_t i = 0; i < feet.size(); ++i) {
    out.landmarks["foot_tip_" + std::to_string(i)] = canvas.to_pixel(feet[i]);
  }
  std::vector<Pixel> endpoints{out.landmarks["head_tip"], out.landmarks["tail_tip"]};
  for (std::size_t i = 0; i < feet.size(); ++i) {
    endpoints.push_back(out.landmarks["foot_tip_" + std::to_string(i)]);
  }
  out.expected_ratio_vh = ratio_from_endpoints(endpoints);
  return out;
}

FigureGroundTruth render_rigid(RigidKind kind, int w, int h) {
  if (w < 10 || h < 10) throw SpecTooSmall("rigid objects need w, h >= 10");
  Canvas canvas;
  const double W = w;
  const double H = h;
  if (kind == RigidKind::Box) {
    canvas.add(Rect{0.0, 0.0, H - 1.0, W - 1.0});
  } else {
    const double wheel = std::max(2.0, std::round(0.18 * H));
    const double body_top = std::round(0.4 * H);
    const double body_bottom = H - 1.0 - wheel;
    canvas.add(Rect{body_top, 0.0, body_bottom, W - 1.0});
    canvas.add(Rect{0.0, std::round(0.2 * W), body_top, std::round(0.7 * W)});
    canvas.add(Disk{{body_bottom, std::round(0.2 * W)}, wheel});
    canvas.add(Disk{{body_bottom, std::round(0.8 * W)}, wheel});
  }
  FigureGroundTruth out{canvas.rasterise(kMargin), {}, 0.0, {}};
  out.landmarks["centre"] = canvas.to_pixel({(H - 1.0) / 2.0, (W - 1.0) / 2.0});
  out.expected_ratio_vh = H / W;
  return out;
}

BinaryMask upscale(const BinaryMask& mask, int factor) {
  if (factor < 1) throw SpecTooSmall("upscale factor must be >= 1");
  BinaryMask out(mask.width() * factor, mask.height() * factor);
  for (int r = 0; r < out.height(); ++r) {
    for (int c = 0; c < out.width(); ++c) out.set(r, c, mask.at(r / factor, c / factor));
  }
  return out;
}

GrayImage textured_background(int width, int height, std::uint64_t seed) {
  GrayImage img(width, height);
  std::mt19937_64 rng(seed);
  const double span = static_cast<double>(width + height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double base = 70.0 + 130.0 * static_cast<double>(r + c) / span;
      const int noise = static_cast<int>(rng() % 11) - 5;
      img.at(r, c) =
          static_cast<std::uint8_t>(std::clamp(static_cast<int>(std::lround(base)) + noise, 60, 210));
    }
  }
  return img;
}

GrayImage composite(const GrayImage& background, const BinaryMask& figure, Pixel offset,
                    std::uint8_t intensity) {
  GrayImage out = background;
  for (int r = 0; r < figure.height(); ++r) {
    for (int c = 0; c < figure.width(); ++c) {
      if (!figure.at(r, c)) continue;
      const int rr = r + offset.row;
      const int cc = c + offset.col;
      if (out.contains(rr, cc)) out.at(rr, cc) = intensity;
    }
  }
  return out;
}

Pixel translate(Pixel p, Pixel offset) { return {p.row + offset.row, p.col + offset.col}; }

}  // namespace humanshape
