#pragma once

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "tsl/rational.hpp"

namespace tsl {

/// Coordinate index; coordinates are numbered from 1.
using Index = int;

/// Finitely supported vector of rationals indexed by positive integers.
/// Zero coordinates are never stored.
class RationalVector {
 public:
  using Storage = std::map<Index, Rational>;

  RationalVector() = default;
  RationalVector(std::initializer_list<std::pair<const Index, Rational>> init);

  static RationalVector unit(Index i) { return RationalVector{{i, Rational(1)}}; }
  /// Sum of e_i over the given indices.
  static RationalVector indicator(const std::vector<Index>& indices);

  [[nodiscard]] Rational operator[](Index i) const;
  void set(Index i, const Rational& value);

  [[nodiscard]] bool is_zero() const { return coords_.empty(); }
  [[nodiscard]] std::size_t nnz() const { return coords_.size(); }
  [[nodiscard]] std::vector<Index> support() const;
  /// Largest supported index, 0 for the zero vector.
  [[nodiscard]] Index max_index() const { return coords_.empty() ? 0 : coords_.rbegin()->first; }
  [[nodiscard]] Index min_index() const { return coords_.empty() ? 0 : coords_.begin()->first; }

  [[nodiscard]] Rational sup_norm() const;
  [[nodiscard]] Rational l1_norm() const;
  [[nodiscard]] RationalVector abs() const;

  [[nodiscard]] const Storage& coords() const { return coords_; }
  [[nodiscard]] auto begin() const { return coords_.begin(); }
  [[nodiscard]] auto end() const { return coords_.end(); }

  RationalVector& operator+=(const RationalVector& rhs);
  RationalVector& operator-=(const RationalVector& rhs);
  RationalVector& operator*=(const Rational& scalar);

  friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
  friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
  friend RationalVector operator*(const Rational& s, RationalVector v) { return v *= s; }
  friend RationalVector operator*(RationalVector v, const Rational& s) { return v *= s; }
  friend bool operator==(const RationalVector&, const RationalVector&) = default;

 private:
  Storage coords_;
};

/// Ex: keeps the coordinates of x whose index lies in `indices`.
RationalVector restrict(const std::vector<Index>& indices, const RationalVector& x);
/// Restriction to the integer interval [lo, hi].
RationalVector restrict_interval(Index lo, Index hi, const RationalVector& x);

Rational inner(const RationalVector& f, const RationalVector& x);

/// |x| <= |y| coordinatewise.
bool dominated_abs(const RationalVector& x, const RationalVector& y);

}  // namespace tsl
