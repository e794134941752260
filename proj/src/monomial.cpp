#include "artin/monomial.hpp"

#include <algorithm>
#include <limits>

namespace artin {

Monomial::Monomial(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  for (const auto& [v, e] : entries) {
    if (e == 0) continue;
    if (!entries_.empty() && entries_.back().first == v) {
      entries_.back().second += e;
    } else {
      entries_.emplace_back(v, e);
    }
    degree_ += e;
  }
}

Monomial Monomial::variable(VarId v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.entries_.emplace_back(v, exponent);
    m.degree_ = exponent;
  }
  return m;
}

std::uint32_t Monomial::exponent(VarId v) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{v, 0},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return (it != entries_.end() && it->first == v) ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  auto j = other.entries_.begin();
  for (const auto& [v, e] : entries_) {
    while (j != other.entries_.end() && j->first < v) ++j;
    if (j == other.entries_.end() || j->first != v || j->second < e) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  auto i = entries_.begin();
  auto j = other.entries_.begin();
  while (i != entries_.end() && j != other.entries_.end()) {
    if (i->first == j->first) return false;
    if (i->first < j->first) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

Monomial Monomial::divided_by(const Monomial& divisor) const {
  Monomial r;
  auto j = divisor.entries_.begin();
  for (const auto& [v, e] : entries_) {
    std::uint32_t d = 0;
    if (j != divisor.entries_.end() && j->first == v) {
      d = j->second;
      ++j;
    }
    if (e > d) r.entries_.emplace_back(v, e - d);
  }
  r.degree_ = degree_ - divisor.degree_;
  return r;
}

Monomial Monomial::without(VarId v) const {
  Monomial r;
  for (const auto& entry : entries_) {
    if (entry.first == v) continue;
    r.entries_.push_back(entry);
    r.degree_ += entry.second;
  }
  return r;
}

Monomial Monomial::restricted_below(VarId bound) const {
  Monomial r;
  for (const auto& entry : entries_) {
    if (entry.first >= bound) break;
    r.entries_.push_back(entry);
    r.degree_ += entry.second;
  }
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.entries_.reserve(a.entries_.size() + b.entries_.size());
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() || j != b.entries_.end()) {
    if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
      r.entries_.push_back(*i++);
    } else if (i == a.entries_.end() || j->first < i->first) {
      r.entries_.push_back(*j++);
    } else {
      r.entries_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() || j != b.entries_.end()) {
    if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
      r.entries_.push_back(*i++);
    } else if (i == a.entries_.end() || j->first < i->first) {
      r.entries_.push_back(*j++);
    } else {
      r.entries_.emplace_back(i->first, std::max(i->second, j->second));
      ++i;
      ++j;
    }
  }
  for (const auto& entry : r.entries_) r.degree_ += entry.second;
  return r;
}

namespace {

constexpr VarId kNoVar = std::numeric_limits<VarId>::max();

unsigned range_degree(const Monomial& m, VarId lo, VarId hi) {
  unsigned d = 0;
  for (const auto& [v, e] : m.entries()) {
    if (v >= lo && v < hi) d += e;
  }
  return d;
}

// Reverse-lexicographic tie break restricted to variables in [lo, hi):
// the monomial with the smaller exponent in the last differing variable wins.
int revlex_range(const Monomial& a, const Monomial& b, VarId lo, VarId hi) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  auto i = static_cast<long>(ea.size()) - 1;
  auto j = static_cast<long>(eb.size()) - 1;
  auto skip = [&](const auto& es, long& k) {
    while (k >= 0 && (es[k].first >= hi)) --k;
  };
  skip(ea, i);
  skip(eb, j);
  while (true) {
    const VarId va = (i >= 0 && ea[i].first >= lo) ? ea[i].first : kNoVar;
    const VarId vb = (j >= 0 && eb[j].first >= lo) ? eb[j].first : kNoVar;
    if (va == kNoVar && vb == kNoVar) return 0;
    if (va == vb) {
      if (ea[i].second != eb[j].second) return ea[i].second < eb[j].second ? 1 : -1;
      --i;
      --j;
    } else if (vb == kNoVar || (va != kNoVar && va > vb)) {
      return -1;
    } else {
      return 1;
    }
  }
}

int degrevlex_range(const Monomial& a, const Monomial& b, VarId lo, VarId hi) {
  const unsigned da = range_degree(a, lo, hi);
  const unsigned db = range_degree(b, lo, hi);
  if (da != db) return da > db ? 1 : -1;
  return revlex_range(a, b, lo, hi);
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const noexcept {
  switch (kind_) {
    case Kind::degrevlex: {
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      return revlex_range(a, b, 0, kNoVar);
    }
    case Kind::lex: {
      const auto& ea = a.entries();
      const auto& eb = b.entries();
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < ea.size() || j < eb.size()) {
        const VarId va = i < ea.size() ? ea[i].first : kNoVar;
        const VarId vb = j < eb.size() ? eb[j].first : kNoVar;
        if (va == vb) {
          if (ea[i].second != eb[j].second) return ea[i].second > eb[j].second ? 1 : -1;
          ++i;
          ++j;
        } else {
          return va < vb ? 1 : -1;
        }
      }
      return 0;
    }
    case Kind::block: {
      if (int c = degrevlex_range(a, b, 0, split_); c != 0) return c;
      return degrevlex_range(a, b, split_, kNoVar);
    }
  }
  return 0;
}

std::string MonomialOrder::to_string() const {
  switch (kind_) {
    case Kind::degrevlex: return "degrevlex";
    case Kind::lex: return "lex";
    case Kind::block: return "block(" + std::to_string(split_) + ")";
  }
  return "?";
}

}  // namespace artin
