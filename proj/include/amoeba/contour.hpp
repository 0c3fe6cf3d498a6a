#pragma once

#include <cstdint>
#include <vector>

#include "amoeba/field.hpp"

namespace amoeba {

/// Pixels inside a circle (strictly closer than r to (cx, cy) in pixels).
std::vector<std::uint8_t> circle_mask(int w, int h, double cx, double cy,
                                      double r);

/// Pixels inside an axis-aligned rectangle [x0, x1] x [y0, y1].
std::vector<std::uint8_t> rect_mask(int w, int h, double x0, double y0,
                                    double x1, double y1);

/// Signed 8-connected chamfer distance to the mask boundary, positive inside
/// the mask. The zero level then sits between the innermost outside pixels
/// and the outermost inside pixels.
ScalarField signed_distance(const std::vector<std::uint8_t>& inside, int w,
                            int h, double spacing = 1.0);

/// Subpixel zero crossings of u on horizontal and vertical pixel edges.
std::vector<Vec2> zero_crossings(const ScalarField& u);

/// Copy of the image with the zero level set of u painted white (255).
ScalarField overlay_contour(const ScalarField& image, const ScalarField& u);

/// Symmetric Hausdorff distance between a point set and the circle of radius
/// r around c (both directions; the circle is sampled densely).
double hausdorff_to_circle(const std::vector<Vec2>& points, Vec2 c, double r);

}  // namespace amoeba
