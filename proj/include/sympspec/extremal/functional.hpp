#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sympspec::extremal {

/// A function of a positive k-vector. The flags record what the function is
/// claimed to satisfy; schur_concave_monotone_check tests the claim.
struct SpectralFunctional {
  std::string name;
  std::function<double(std::span<const double>)> eval;
  bool schur_concave = true;
  bool permutation_invariant = true;
  bool monotone = true;

  double operator()(std::span<const double> x) const { return eval(x); }
  bool admissible() const { return schur_concave && permutation_invariant && monotone; }
};

SpectralFunctional phi_sum();
SpectralFunctional phi_product();
SpectralFunctional phi_min();
/// Elementary symmetric polynomial e_r; zero when r exceeds the length.
SpectralFunctional phi_elementary(std::size_t r);

/// "sum", "product", "min", "e1", "e2", ...
SpectralFunctional functional_by_name(const std::string& name);
/// sum, product, min, e2, e3.
std::vector<SpectralFunctional> shipped_functionals();

}  // namespace sympspec::extremal
