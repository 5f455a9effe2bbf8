#include "fdnls/field.hpp"

#include <string>

#include "fdnls/errors.hpp"

namespace fdnls {

const char* to_string(Representation rep) {
  return rep == Representation::Physical ? "physical" : "frequency";
}

Field::Field(const Lattice& lattice, Representation rep)
    : lattice_(lattice), values_(lattice.size(), cplx{}), rep_(rep) {}

Field::Field(const Lattice& lattice, std::vector<cplx> values,
             Representation rep)
    : lattice_(lattice), values_(std::move(values)), rep_(rep) {
  if (values_.size() != static_cast<std::size_t>(lattice.size())) {
    throw ContractError("field has " + std::to_string(values_.size()) +
                        " values, lattice needs " +
                        std::to_string(lattice.size()));
  }
}

Field Field::from_function(const Lattice& lattice,
                           const std::function<cplx(double)>& f) {
  Field out(lattice, Representation::Physical);
  for (int i = 0; i < lattice.size(); ++i) {
    out.values_[i] = f(lattice.site_at_index(i));
  }
  return out;
}

Field Field::from_spectrum(const Lattice& lattice,
                           const std::function<cplx(int)>& g) {
  Field out(lattice, Representation::Frequency);
  for (int i = 0; i < lattice.size(); ++i) {
    out.values_[i] = g(lattice.mode_at_index(i));
  }
  return out;
}

void Field::require(Representation rep, const char* who) const {
  if (rep_ != rep) {
    throw ContractError(std::string(who) + ": expected " + to_string(rep) +
                        " representation, got " + to_string(rep_));
  }
}

cplx Field::at_site(int j) const {
  require(Representation::Physical, "Field::at_site");
  return values_.at(lattice_.index_of_site(j));
}

cplx Field::at_mode(int k) const {
  require(Representation::Frequency, "Field::at_mode");
  return values_.at(lattice_.index_of_mode(k));
}

cplx& Field::mode(int k) {
  require(Representation::Frequency, "Field::mode");
  return values_.at(lattice_.index_of_mode(k));
}

Field& Field::operator+=(const Field& other) {
  if (!(other.lattice_ == lattice_) || other.rep_ != rep_) {
    throw ContractError("Field::operator+=: incompatible operands");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(other.lattice_ == lattice_) || other.rep_ != rep_) {
    throw ContractError("Field::operator-=: incompatible operands");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(cplx scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx scale, Field a) { return a *= scale; }

}  // namespace fdnls
