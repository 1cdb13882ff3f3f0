#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "hzeta/rational.hpp"

namespace hzeta {

class DirichletCharacter;

// (Z/qZ)^* presented as a product of cyclic factors with a fixed,
// deterministic generator list:
//   - 2^e (e >= 3) contributes <-1> then <5>, of orders 2 and 2^{e-2};
//   - 4 contributes <3>, of order 2;
//   - odd p^e contributes the smallest primitive root mod p^e.
// Factors are ordered by prime (2 first), generators lifted to mod q by CRT.
// A character is a choice of exponent k_i (mod n_i) per factor; its index is
// the mixed-radix value of (k_1, ..., k_r), so the principal character is
// index 0 and the rest follow in lexicographic exponent order.
//
// All tables are immutable after construction; concurrent reads are safe.
class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
public:
  // Supported range: 1 <= q <= 10^6.
  static std::shared_ptr<const CharacterGroup> make(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t phi() const { return phi_; }
  // lcm of the cyclic orders; every character value is a root of unity of
  // order dividing this, so value exponents share the denominator L.
  std::uint64_t exponent() const { return L_; }

  std::size_t component_count() const { return orders_.size(); }
  std::uint64_t component_order(std::size_t i) const { return orders_[i]; }
  std::uint64_t component_generator(std::size_t i) const { return gens_[i]; }

  std::size_t size() const { return phi_; }
  DirichletCharacter character(std::size_t index) const;
  std::vector<DirichletCharacter> enumerate() const;

  bool coprime(std::uint64_t a) const;
  // Residues coprime to q, ascending.
  const std::vector<std::uint32_t>& units() const { return units_; }
  // Discrete log of a (must be coprime to q) against the generator list;
  // pointer to component_count() exponents.
  const std::uint32_t* dlog(std::uint64_t a) const;

private:
  friend class DirichletCharacter;
  CharacterGroup() = default;

  std::uint64_t q_ = 1, phi_ = 1, L_ = 1;
  std::vector<std::uint64_t> gens_, orders_, comp_prime_;
  std::vector<std::uint32_t> unit_index_;  // residue -> unit slot, or npos
  std::vector<std::uint32_t> units_;       // unit slot -> residue
  std::vector<std::uint32_t> dlog_;        // unit slot x component, flattened
};

class DirichletCharacter {
public:
  DirichletCharacter() = default;

  std::uint64_t modulus() const { return group_->modulus(); }
  std::size_t index() const;
  bool is_principal() const;
  std::uint64_t order() const;
  int parity() const;  // chi(-1): +1 even, -1 odd
  bool is_real() const;
  std::uint64_t conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == group_->modulus(); }
  // The primitive character mod conductor() inducing this one.
  DirichletCharacter induce_primitive() const;

  // chi(a) = e^{2 pi i r} with r in [0,1) exact; domain error if gcd(a,q)>1.
  Rational value_exponent(std::uint64_t a) const;
  // 0 when gcd(a, q) > 1, otherwise e^{2 pi i value_exponent(a)}.
  std::complex<double> value(std::uint64_t a) const;

  DirichletCharacter operator*(const DirichletCharacter& other) const;
  DirichletCharacter conj() const;
  bool operator==(const DirichletCharacter& other) const;
  bool operator!=(const DirichletCharacter& o) const { return !(*this == o); }

  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  const std::shared_ptr<const CharacterGroup>& group() const { return group_; }

private:
  friend class CharacterGroup;
  DirichletCharacter(std::shared_ptr<const CharacterGroup> g, std::vector<std::uint32_t> e);
  void compute_conductor();

  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::uint32_t> exps_;
  std::uint64_t conductor_ = 1;
};

// Convenience: CharacterGroup::make(q)->enumerate().
std::vector<DirichletCharacter> enumerate_characters(std::uint64_t q);

// e^{2 pi i r} with exact special cases for r.den in {1, 2, 4}.
std::complex<double> unit_root(const Rational& r);

}  // namespace hzeta
