#include "sympspec/extremal/functional.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "sympspec/error.hpp"

namespace sympspec::extremal {

SpectralFunctional phi_sum() {
  return {"sum", [](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += v;
            return s;
          }};
}

SpectralFunctional phi_product() {
  return {"product", [](std::span<const double> x) {
            double p = 1.0;
            for (double v : x) p *= v;
            return p;
          }};
}

SpectralFunctional phi_min() {
  return {"min", [](std::span<const double> x) {
            if (x.empty()) return std::numeric_limits<double>::infinity();
            return *std::min_element(x.begin(), x.end());
          }};
}

SpectralFunctional phi_elementary(std::size_t r) {
  if (r == 0) throw ValidationError("e_r needs r >= 1");
  return {"e" + std::to_string(r), [r](std::span<const double> x) {
            // e[j] holds e_j of the prefix seen so far.
            std::vector<double> e(r + 1, 0.0);
            e[0] = 1.0;
            for (double v : x)
              for (std::size_t j = r; j >= 1; --j) e[j] += v * e[j - 1];
            return e[r];
          }};
}

SpectralFunctional functional_by_name(const std::string& name) {
  if (name == "sum") return phi_sum();
  if (name == "product") return phi_product();
  if (name == "min") return phi_min();
  if (name.size() > 1 && name[0] == 'e' &&
      std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return phi_elementary(std::stoul(name.substr(1)));
  }
  throw ValidationError("unknown functional '" + name + "'");
}

std::vector<SpectralFunctional> shipped_functionals() {
  return {phi_sum(), phi_product(), phi_min(), phi_elementary(2), phi_elementary(3)};
}

}  // namespace sympspec::extremal
