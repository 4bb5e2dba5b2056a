#pragma once

namespace casimir {

/// Plane-sphere configuration, lengths in micrometres.
struct Geometry {
  double L;  // closest surface separation
  double R;  // sphere radius

  /// Distance from the sphere centre to the plane, L + R.
  double center_distance() const { return L + R; }
};

/// Throws std::invalid_argument unless L > 0 and R > 0 (finite).
void validate(const Geometry& geom);

}  // namespace casimir
