// Walks through the library on A2: Levis and parabolics, a splitting
// constant, a (G,M)-family limit, the one-dimensional residue identity and
// one coefficient of the asymptotic expansion.

#include <iostream>
#include <memory>

#include "woi/asymptotic.hpp"
#include "woi/contour.hpp"
#include "woi/gm_family.hpp"

int main() {
  using namespace woi;
  auto d = std::make_shared<const RootDatum>(build_root_system("A2"));
  std::cout << d->label << ": |W| = " << d->weyl.size() << "\n";
  for (const auto& L : enumerate_levis(*d))
    std::cout << "  " << L.label << "  dim a_L = " << L.dim() << ", " << parabolics(*d, L).size() << " parabolics\n";

  Levi M0 = minimal_levi(*d), G = whole_group(*d);
  Levi L0 = levi_from_roots(*d, {0}), L1 = levi_from_roots(*d, {1});
  std::cout << "d_M0(L[0], L[1]) = " << d_constant(*d, M0, L0, L1).str() << "\n";

  RatVec T{rat(3), rat(2)};
  auto s = orthogonal_set(*d, M0, T);
  std::cout << "hull volume at T = " << T.str() << ": " << hull_volume(*d, s).str()
            << ", family limit: " << family_limit(*d, exponential_family(*d, s)).str() << "\n";

  Density f = Density::model_plancherel(1, 1);
  auto rep = residue_identity_1d(f, 1);
  std::cout << "residue identity for " << f.describe() << ": " << rep.count(Status::Pass) << "/" << rep.checks.size()
            << " checks pass, max residual " << rep.max_residual() << "\n";

  std::vector<int> all(d->roots.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  TauClass tc = make_tau_class(build_spectral_triple(d, all, {}));
  auto fns = tau_densities(tc, [](const Rational& n) { return Density::model_plancherel(n, 1); });
  SigmaModel model = make_sigma_model(tc, fns, {Complex(0.3, 0.2), Complex(0.15, 0.35)});
  auto P = parabolics(*d, M0).front();
  std::cout << "c coefficient (w = 1, L = G): " << c_coefficient_example(model, 0, P, {0}, G) << "\n";
  return 0;
}
