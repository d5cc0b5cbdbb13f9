#include "qcrystal/module.hpp"

namespace qcrystal {

std::vector<std::pair<ScalarQ, Word>> UmModule::raise_word(Index i, const Word& w) const {
  std::vector<std::pair<ScalarQ, Word>> out;
  const FVector r = eprime(d_, i, FVector::word(w));
  for (const auto& [x, c] : r.terms()) out.emplace_back(c, x);
  return out;
}

}  // namespace qcrystal
