// Builds the large orthogonal set {P (x, x)} for the off-diagonal form
// [[0,1],[1,0]] over Z_9 and checks it against the exact search.

#include <iostream>

#include "unimod/unimod.hpp"

int main() {
  using namespace unimod;
  const auto ring = make_ring(RingSpec::zps(3, 2));
  const BilinearForm form(Matrix::from_ints(*ring, {{0, 1}, {1, 0}}));

  const auto canon = canonicalize(form);
  std::cout << "P = " << format_matrix(canon.transform.matrix()) << ", u = " << ring->format(canon.form.u) << "\n";

  const auto witness = construct_hyperbolic_witness(form);
  std::cout << "witness " << format_set(witness) << " (size " << witness.size() << ")\n";
  std::cout << "orthogonal: " << std::boolalpha << is_orthogonal_set(form, witness)
            << ", inclusion-maximal: " << is_inclusion_maximal(form, witness) << "\n";

  const auto search = max_orthogonal_set(form, 2);
  std::cout << "exact maximum " << search.max_size << ", closed form " << theoretical_S(form) << "\n";
  return search.max_size == witness.size() ? 0 : 1;
}
