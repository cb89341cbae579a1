// Walks through the Asai cocycle on SL2(Z): values, the rational splitting
// function, the integral obstruction and the braid-group extension.

#include <iostream>

#include "cocylab/cocylab.hpp"

using namespace cocylab;

int main() {
  std::cout << "h(S, S) = " << asai_h(kS, kS) << '\n';
  std::cout << "h(T, T) = " << asai_h(kT, kT) << '\n';

  MatZ m = lemma_matrix(0, 0, 2, 2);
  std::cout << "M = " << to_json(m).dump() << " = " << encode(m) << '\n';
  std::cout << "f(S) = " << format_rational(asai_split_f(kS)) << ", f(T) = " << format_rational(asai_split_f(kT))
            << ", f(M) = " << format_rational(asai_split_f(m)) << '\n';

  auto h = asai_cocycle();
  auto z = certify_split(h, {kS, kT}, 4, CoeffDomain::Integers, {"S", "T"});
  std::cout << "over Z, radius 4: " << to_string(z.kind);
  if (z.certificate) std::cout << ' ' << to_json(*z.certificate).dump();
  std::cout << '\n';
  auto q = certify_split(h, {kS, kT}, 6, CoeffDomain::Rationals, {"S", "T"});
  std::cout << "over Q, radius 6: " << to_string(q.kind) << " on " << q.ball_size << " elements\n";

  AsaiExt b3 = asai_extension();
  std::cout << "braid discrepancy (0, 0) = " << braid_discrepancy(0, 0) << '\n';
  std::cout << "(s1 s2)^6 = " << b3.encode(full_twist_center(0, 0)) << '\n';
  return 0;
}
