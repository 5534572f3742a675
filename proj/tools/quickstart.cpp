// Builds the default nested family and prints, per level, the aspect ratio,
// the witness-to-disk volume ratio and the divergence ratio for Phi(t) = t.

#include <cstdio>

#include "rarebasis/verify.hpp"

int main() {
  using namespace rarebasis;
  const auto seq = LacunarySequence::geometric(0.5, 0.6, 0.5, 0.8);
  const auto wb = make_workbench(seq, 6, 31);
  const auto div = divergence_check(OrliczFunction::power(1.0), 1.0, wb.family, wb.consts);

  std::printf("j0=%zu c=%.6f kappa'=%.6f c1=%.6f\n", wb.window.j0, wb.consts.c, wb.consts.kappa_prime, wb.consts.c1);
  std::printf("%3s %14s %14s %10s\n", "k", "aspect", "|Y|/|Theta|", "ratio");
  for (std::size_t i = 0; i < wb.family.levels.size(); ++i) {
    const auto& level = wb.family.levels[i];
    const auto w = witness(level);
    std::printf("%3d %14.4f %14.4f %10.4f\n", level.k, level.aspect, w.y_area.value / w.theta_area(), div.ratios[i]);
  }
}
