#include "dlchow/unipoly.hpp"

#include <map>
#include <mutex>

namespace dlchow {

QPolyDivision divide(const QPoly& numerator, const QPoly& denominator) {
  if (denominator.is_zero()) throw std::domain_error("polynomial division by zero");
  if (numerator.has_negative_exponents() || denominator.has_negative_exponents())
    throw std::domain_error("polynomial division needs nonnegative exponents");
  QPoly quotient;
  QPoly rem = numerator;
  const auto [ddeg, dlead] = denominator.leading_data();
  while (!rem.is_zero() && rem.degree() >= ddeg) {
    const auto [rdeg, rlead] = rem.leading_data();
    QPoly step = QPoly::monomial(rlead / dlead, rdeg - ddeg);
    quotient += step;
    rem -= step * denominator;
  }
  return {std::move(quotient), std::move(rem)};
}

QPoly divide_exact(const QPoly& numerator, const QPoly& denominator) {
  auto [quot, rem] = divide(numerator, denominator);
  if (!rem.is_zero())
    throw std::domain_error("inexact polynomial division: (" + numerator.to_string("q") + ")/(" +
                            denominator.to_string("q") + ")");
  return quot;
}

const QPoly& cyclotomic(int d) {
  if (d < 1) throw std::invalid_argument("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<int, QPoly> table;
  std::lock_guard lock(mu);
  if (auto it = table.find(d); it != table.end()) return it->second;
  // Phi_d = (q^d - 1) / prod_{e | d, e < d} Phi_e, built bottom-up.
  for (int k = 1; k <= d; ++k) {
    if (table.contains(k)) continue;
    QPoly p = QPoly::monomial(1, k) - QPoly(1);
    for (int e = 1; e < k; ++e)
      if (k % e == 0) p = divide_exact(p, table.at(e));
    table.emplace(k, std::move(p));
  }
  return table.at(d);
}

} // namespace dlchow
