#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "helix/surface.hpp"

namespace helix {

struct MeshSpec {
  int n_chi = 64;             // samples around the profile (closed seam)
  int n_phi = 64;             // samples per revolution along the helix
  double revolutions = 2.5;   // open-ended span in phi
  bool operator==(const MeshSpec&) const = default;
};

// Triangulated tube patch. Vertices are laid out ring by ring:
// index(i, j) = j * n_chi + i for chi sample i and phi ring j, with
// ceil(n_phi * revolutions) + 1 rings. Triangle indices are 0-based.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
};

Mesh build_mesh(const SurfaceParams& p, const MeshSpec& spec);

// Wavefront OBJ, vertices printed to 9 significant digits, each grid quad
// split into two triangles.
void write_obj(std::ostream& os, const Mesh& mesh);

}  // namespace helix
