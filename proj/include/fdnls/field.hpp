#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fdnls/lattice.hpp"

namespace fdnls {

using cplx = std::complex<double>;

enum class Representation { Physical, Frequency };

const char* to_string(Representation rep);

/// Complex function on a lattice (Physical: indexed by site j) or on its dual
/// (Frequency: indexed by mode k). Values are stored in natural order, i.e.
/// values()[0] belongs to j = -M (resp. k = -M).
class Field {
 public:
  Field(const Lattice& lattice, Representation rep);
  Field(const Lattice& lattice, std::vector<cplx> values, Representation rep);

  /// Samples f(x_j) for every site.
  static Field from_function(const Lattice& lattice,
                             const std::function<cplx(double)>& f);
  /// Builds a Frequency field with F(k) = g(k).
  static Field from_spectrum(const Lattice& lattice,
                             const std::function<cplx(int)>& g);

  const Lattice& lattice() const noexcept { return lattice_; }
  Representation representation() const noexcept { return rep_; }
  bool is_physical() const noexcept { return rep_ == Representation::Physical; }

  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Value at site j (Physical only).
  cplx at_site(int j) const;
  /// Value at mode k (Frequency only).
  cplx at_mode(int k) const;
  cplx& mode(int k);

  void require(Representation rep, const char* who) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx scale);

 private:
  Lattice lattice_;
  std::vector<cplx> values_;
  Representation rep_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx scale, Field a);

}  // namespace fdnls
