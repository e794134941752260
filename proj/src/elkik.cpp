#include "artin/elkik.hpp"

#include <algorithm>

#include "artin/errors.hpp"

namespace artin {

ElkikResult elkik(std::span<const Polynomial> fs, std::span<const VarId> diff_vars) {
  if (fs.empty()) throw Error(ErrorKind::invalid_argument, "elkik ideal needs at least one equation");
  const std::size_t n = fs.size();
  if (n > kMaxElkikEquations) {
    throw Error(ErrorKind::capacity, "elkik ideal: " + std::to_string(n) +
                                         " equations exceed the subset limit of " +
                                         std::to_string(kMaxElkikEquations));
  }
  const RingPtr& ring = fs.front().ring();
  const Ideal whole(ring, {fs.begin(), fs.end()});
  const PolyMatrix jac = jacobian(fs, diff_vars);

  ElkikResult out{Ideal(ring), {}};
  std::vector<Polynomial> gens;
  for (std::size_t h = 0; h <= n; ++h) {
    for (const auto& rows : subsets(n, h)) {
      std::vector<Polynomial> sub;
      for (std::size_t i : rows) sub.push_back(fs[i]);
      ElkikComponent comp{rows, {}, colon(Ideal(ring, sub), whole)};

      std::vector<std::size_t> all_cols(jac.cols());
      for (std::size_t j = 0; j < all_cols.size(); ++j) all_cols[j] = j;
      for (auto& minor : indexed_minors(jac.submatrix(rows, all_cols), h)) {
        for (auto& r : minor.rows) r = rows[r];
        comp.minors.push_back(std::move(minor));
      }

      for (const auto& minor : comp.minors) {
        if (minor.value.is_zero()) continue;
        for (const auto& g : comp.colon.generators()) {
          Polynomial p = minor.value * g;
          if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(std::move(p));
        }
      }
      out.components.push_back(std::move(comp));
    }
  }
  out.ideal = Ideal(ring, std::move(gens));
  return out;
}

Ideal elkik_ideal(std::span<const Polynomial> fs, std::span<const VarId> diff_vars) {
  return elkik(fs, diff_vars).ideal;
}

}  // namespace artin
