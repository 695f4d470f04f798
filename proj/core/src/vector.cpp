#include "tsl/vector.hpp"

#include <algorithm>

#include "tsl/error.hpp"

namespace tsl {

RationalVector::RationalVector(std::initializer_list<std::pair<const Index, Rational>> init) {
  for (const auto& [i, v] : init) set(i, v);
}

RationalVector RationalVector::indicator(const std::vector<Index>& indices) {
  RationalVector v;
  for (Index i : indices) v.set(i, Rational(1));
  return v;
}

Rational RationalVector::operator[](Index i) const {
  const auto it = coords_.find(i);
  return it == coords_.end() ? Rational(0) : it->second;
}

void RationalVector::set(Index i, const Rational& value) {
  if (i < 1) throw InputError("vector index must be positive, got " + std::to_string(i));
  if (value.is_zero()) {
    coords_.erase(i);
  } else {
    coords_[i] = value;
  }
}

std::vector<Index> RationalVector::support() const {
  std::vector<Index> out;
  out.reserve(coords_.size());
  for (const auto& [i, v] : coords_) out.push_back(i);
  return out;
}

Rational RationalVector::sup_norm() const {
  Rational best(0);
  for (const auto& [i, v] : coords_) best = max(best, v.abs());
  return best;
}

Rational RationalVector::l1_norm() const {
  Rational sum(0);
  for (const auto& [i, v] : coords_) sum += v.abs();
  return sum;
}

RationalVector RationalVector::abs() const {
  RationalVector out;
  for (const auto& [i, v] : coords_) out.coords_.emplace(i, v.abs());
  return out;
}

RationalVector& RationalVector::operator+=(const RationalVector& rhs) {
  for (const auto& [i, v] : rhs.coords_) set(i, (*this)[i] + v);
  return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& rhs) {
  for (const auto& [i, v] : rhs.coords_) set(i, (*this)[i] - v);
  return *this;
}

RationalVector& RationalVector::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    coords_.clear();
    return *this;
  }
  for (auto& [i, v] : coords_) v *= scalar;
  return *this;
}

RationalVector restrict(const std::vector<Index>& indices, const RationalVector& x) {
  RationalVector out;
  for (Index i : indices) {
    if (const Rational v = x[i]; !v.is_zero()) out.set(i, v);
  }
  return out;
}

RationalVector restrict_interval(Index lo, Index hi, const RationalVector& x) {
  RationalVector out;
  for (auto it = x.coords().lower_bound(lo); it != x.coords().end() && it->first <= hi; ++it) {
    out.set(it->first, it->second);
  }
  return out;
}

Rational inner(const RationalVector& f, const RationalVector& x) {
  const auto& small = f.nnz() <= x.nnz() ? f : x;
  const auto& large = f.nnz() <= x.nnz() ? x : f;
  Rational sum(0);
  for (const auto& [i, v] : small) {
    if (const auto it = large.coords().find(i); it != large.coords().end()) sum += v * it->second;
  }
  return sum;
}

bool dominated_abs(const RationalVector& x, const RationalVector& y) {
  return std::all_of(x.begin(), x.end(),
                     [&](const auto& entry) { return entry.second.abs() <= y[entry.first].abs(); });
}

}  // namespace tsl
