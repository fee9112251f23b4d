#include "ellrank/embedding.hpp"

namespace ellrank {

std::vector<Monomial> basis_functions(int n) {
  if (n < 3) throw std::invalid_argument("embedding needs n >= 3, got " + std::to_string(n));
  std::vector<Monomial> out;
  for (int k = 0; k <= n + 1; ++k) {
    if (k == 1) continue;  // the only gap at O
    if (k % 2 == 0)
      out.push_back({k / 2, 0});
    else
      out.push_back({(k - 3) / 2, 1});
  }
  return out;
}

std::string format_monomial(const Monomial& m) {
  if (m.x_exp == 0 && m.y_exp == 0) return "1";
  std::string s;
  if (m.x_exp == 1) s += "x";
  if (m.x_exp > 1) s += "x^" + std::to_string(m.x_exp);
  if (m.y_exp) s += "y";
  return s;
}

}  // namespace ellrank
