// SPDX-License-Identifier: MIT
//
// Rebuild a manufactured field inside the unit ball from its volume data
// and exact boundary traces:
//
//   u(x) = G[f](x) + DL[gamma u](x) - SL[B u](x),   f = -box u.
//
// The table prints the worst relative error over a few interior probes as
// the boundary grid and the volume rule refine together.

#include <dbarbie/fields.hpp>
#include <dbarbie/potentials.hpp>

#include <cstdio>

using namespace dbarbie;

namespace {

double cdist(const C2& a, const C2& b) {
  return std::sqrt(abs2(C2{a[0] - b[0], a[1] - b[1]}));
}

}  // namespace

int main() {
  const ManufacturedField fld = field_by_name("gauss-e1");
  const auto f = volume_data_by_name(fld.name);

  const C2 probes[4] = {{cplx(0.2, 0.1), cplx(-0.3, 0.05)},
                        {cplx(0.42, -0.31), cplx(0.12, 0.4)},
                        {cplx(-0.1, 0.62), cplx(0.3, -0.05)},
                        {cplx(0.05, -0.15), cplx(0.68, 0.1)}};

  std::printf("field: %s\n", fld.name.c_str());
  std::printf("%8s %8s %12s\n", "boundary", "volume", "max rel err");
  struct Level {
    int bn, nr, ps, pe;
  };
  for (const Level& lv :
       {Level{10, 14, 12, 6}, {12, 16, 14, 7}, {14, 18, 16, 8}}) {
    const BoundaryGrid g = BoundaryGrid::hopf(lv.bn, 2 * lv.bn);
    const VolumeGrid vol = VolumeGrid::ball(lv.nr, lv.pe + 2, 2 * (lv.pe + 2));
    const PatchRule patch{lv.ps, lv.pe, 2 * lv.pe, 0.35};

    // Exact traces of the field feed the layer potentials.
    std::vector<C2> gam(g.nodes.size()), bu(g.nodes.size());
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      gam[j] = field_frame_values(fld, g.nodes[j].z);
      bu[j] = field_conormal(fld, g.nodes[j].z);
    }

    double err = 0.0, scale = 0.0;
    for (const C2& x : probes) {
      const C2 G = newton_potential(x, f, vol, patch);
      const C2 dl =
          frame_values_to_standard(ball_frame(x), double_layer(x, g, gam));
      const C2 sl =
          frame_values_to_standard(ball_frame(x), single_layer(x, g, bu));
      const C2 got{G[0] + dl[0] - sl[0], G[1] + dl[1] - sl[1]};
      const C2 want = field_values(fld, x);
      scale = std::max(scale, std::sqrt(abs2(want)));
      err = std::max(err, cdist(got, want));
    }
    std::printf("%8zu %8zu %12.3e\n", g.quad_count(), vol.nodes.size(),
                err / scale);
  }
  return 0;
}
