#include "pretzelkh/poly.hpp"

#include <algorithm>
#include <sstream>

namespace pretzelkh {

BigradedPoly BigradedPoly::monomial(int q, int h, long long coeff) {
  BigradedPoly p;
  p.add(q, h, coeff);
  return p;
}

BigradedPoly BigradedPoly::shifted(int q, int h, const UniPoly& f) {
  BigradedPoly p;
  for (std::size_t n = 0; n < f.size(); ++n) {
    p.add(q + 2 * static_cast<int>(n), h + static_cast<int>(n), f[n]);
  }
  return p;
}

BigradedPoly BigradedPoly::from_table(const HomologyTable& table) {
  BigradedPoly p;
  for (const auto& [hq, cell] : table) p.add(hq.second, hq.first, cell.free_rank);
  return p;
}

void BigradedPoly::add(int q, int h, long long coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace({q, h}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

BigradedPoly& BigradedPoly::operator+=(const BigradedPoly& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c);
  return *this;
}

BigradedPoly operator*(long long k, const BigradedPoly& p) {
  BigradedPoly out;
  for (const auto& [key, c] : p.terms_) out.add(key.first, key.second, k * c);
  return out;
}

long long BigradedPoly::coeff(int q, int h) const {
  auto it = terms_.find({q, h});
  return it == terms_.end() ? 0 : it->second;
}

long long BigradedPoly::total() const {
  long long s = 0;
  for (const auto& [k, c] : terms_) s += c;
  return s;
}

bool BigradedPoly::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
}

std::map<int, long long> BigradedPoly::delta_collapse() const {
  std::map<int, long long> out;
  for (const auto& [k, c] : terms_) out[k.first - 2 * k.second] += c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::string BigradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const long long a = c < 0 ? -c : c;
    if (a != 1) os << a;
    os << "Q^" << k.first << "H^" << k.second;
  }
  return os.str();
}

UniPoly geometric(int n) { return n < 0 ? UniPoly{} : UniPoly(n + 1, 1); }

}  // namespace pretzelkh
