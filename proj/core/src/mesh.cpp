#include "helix/mesh.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "text_format.hpp"

namespace helix {

Mesh build_mesh(const SurfaceParams& p, const MeshSpec& spec) {
  if (spec.n_chi < 3 || spec.n_phi < 1 || !(spec.revolutions > 0.0))
    fail(Errc::bad_config, "mesh needs n_chi >= 3, n_phi >= 1, revolutions > 0");

  const double two_pi = 2.0 * std::numbers::pi;
  const int n_rings = static_cast<int>(
      std::ceil(spec.n_phi * spec.revolutions - 1e-9));
  const double phi_end = two_pi * spec.revolutions;

  Mesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(spec.n_chi) * (n_rings + 1));
  for (int j = 0; j <= n_rings; ++j) {
    const double phi = phi_end * j / n_rings;
    for (int i = 0; i < spec.n_chi; ++i) {
      const double chi = two_pi * i / spec.n_chi;
      mesh.vertices.push_back(embed(p, chi, phi));
    }
  }

  mesh.triangles.reserve(static_cast<std::size_t>(spec.n_chi) * n_rings * 2);
  for (int j = 0; j < n_rings; ++j) {
    for (int i = 0; i < spec.n_chi; ++i) {
      const int i1 = (i + 1) % spec.n_chi;
      const int v00 = j * spec.n_chi + i;
      const int v10 = j * spec.n_chi + i1;
      const int v01 = (j + 1) * spec.n_chi + i;
      const int v11 = (j + 1) * spec.n_chi + i1;
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

void write_obj(std::ostream& os, const Mesh& mesh) {
  for (const Vec3& v : mesh.vertices)
    os << "v " << fmt_g(v.x, 9) << ' ' << fmt_g(v.y, 9) << ' '
       << fmt_g(v.z, 9) << '\n';
  for (const auto& t : mesh.triangles)
    os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

}  // namespace helix
