#include "hzeta/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hzeta/primes.hpp"

namespace hzeta {

static constexpr std::uint32_t kNoUnit = UINT32_MAX;

static std::uint64_t powmod_u(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = (__uint128_t)r * a % m;
    a = (__uint128_t)a * a % m;
    e >>= 1;
  }
  return r;
}

// Smallest primitive root mod p^e for odd prime p.  The smallest root g
// mod p also generates mod p^e unless g^{p-1} = 1 (mod p^2), in which
// case g + p does.
static std::uint64_t primitive_root_odd(std::uint64_t p, int e) {
  std::uint64_t order = p - 1;
  auto fac = factorize(order);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool ok = true;
    for (auto [r, m] : fac) {
      (void)m;
      if (powmod_u(g, order / r, p) == 1) { ok = false; break; }
    }
    if (ok) break;
  }
  if (e == 1) return g;
  if (powmod_u(g, p - 1, p * p) == 1) g += p;
  return g;
}

// x = a (mod m1), x = 1 (mod m2), gcd(m1, m2) = 1, x reduced mod m1*m2.
static std::uint64_t crt_lift(std::uint64_t a, std::uint64_t m1, std::uint64_t m2) {
  if (m2 == 1) return a % m1;
  std::int64_t t0 = 0, t1 = 1;
  std::int64_t r0 = (std::int64_t)m1, r1 = (std::int64_t)(m2 % m1);
  while (r1 != 0) {
    std::int64_t qd = r0 / r1;
    std::int64_t tmp = r0 - qd * r1; r0 = r1; r1 = tmp;
    tmp = t0 - qd * t1; t0 = t1; t1 = tmp;
  }
  std::int64_t inv = t0 % (std::int64_t)m1;
  if (inv < 0) inv += (std::int64_t)m1;
  std::uint64_t diff = ((a % m1) + m1 - 1) % m1;
  std::uint64_t k = (__uint128_t)diff * (std::uint64_t)inv % m1;
  return (1 + (__uint128_t)m2 * k) % (m1 * m2);
}

std::shared_ptr<const CharacterGroup> CharacterGroup::make(std::uint64_t q) {
  if (q < 1 || q > 1000000) throw std::domain_error("CharacterGroup: need 1 <= q <= 10^6");
  auto g = std::shared_ptr<CharacterGroup>(new CharacterGroup());
  g->q_ = q;
  g->phi_ = euler_phi(q);
  g->unit_index_.assign(q, kNoUnit);

  if (q == 1) {
    g->unit_index_[0] = 0;
    g->units_ = {0};
    return g;
  }

  for (auto [p, e] : factorize(q)) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;  // (Z/2)^* trivial
      if (e == 2) {
        g->comp_prime_.push_back(2);
        g->gens_.push_back(crt_lift(3, pe, q / pe));
        g->orders_.push_back(2);
      } else {
        g->comp_prime_.push_back(2);
        g->gens_.push_back(crt_lift(pe - 1, pe, q / pe));
        g->orders_.push_back(2);
        g->comp_prime_.push_back(2);
        g->gens_.push_back(crt_lift(5, pe, q / pe));
        g->orders_.push_back(pe / 4);
      }
    } else {
      g->comp_prime_.push_back(p);
      g->gens_.push_back(crt_lift(primitive_root_odd(p, e) % pe, pe, q / pe));
      g->orders_.push_back(pe / p * (p - 1));
    }
  }

  g->L_ = 1;
  for (auto n : g->orders_) g->L_ = std::lcm(g->L_, n);

  // Walk the whole group once via the mixed-radix index, recording each
  // unit's discrete log.  Generator power tables keep this O(phi * r).
  const std::size_t r = g->gens_.size();
  std::vector<std::vector<std::uint64_t>> pw(r);
  for (std::size_t i = 0; i < r; ++i) {
    pw[i].resize(g->orders_[i]);
    std::uint64_t v = 1;
    for (std::uint64_t j = 0; j < g->orders_[i]; ++j) {
      pw[i][j] = v;
      v = (__uint128_t)v * g->gens_[i] % q;
    }
  }
  g->units_.resize(g->phi_);
  g->dlog_.assign(g->phi_ * std::max<std::size_t>(r, 1), 0);
  std::vector<std::uint32_t> tuple(r);
  for (std::size_t idx = 0; idx < g->phi_; ++idx) {
    std::size_t rem = idx;
    std::uint64_t a = 1;
    for (std::size_t i = r; i-- > 0;) {
      std::uint32_t k = (std::uint32_t)(rem % g->orders_[i]);
      rem /= g->orders_[i];
      tuple[i] = k;
      a = (__uint128_t)a * pw[i][k] % q;
    }
    if (g->unit_index_[a] != kNoUnit)
      throw std::logic_error("CharacterGroup: generator decomposition not free");
    g->unit_index_[a] = (std::uint32_t)idx;
    g->units_[idx] = (std::uint32_t)a;
    for (std::size_t i = 0; i < r; ++i) g->dlog_[idx * r + i] = tuple[i];
  }

  // Re-key unit slots to ascending residue order.
  std::vector<std::uint32_t> by_residue = g->units_;
  std::sort(by_residue.begin(), by_residue.end());
  std::vector<std::uint32_t> new_dlog(g->dlog_.size());
  for (std::uint32_t slot = 0; slot < g->phi_; ++slot) {
    std::uint32_t a = by_residue[slot];
    std::uint32_t old = g->unit_index_[a];
    for (std::size_t i = 0; i < r; ++i)
      new_dlog[(std::size_t)slot * std::max<std::size_t>(r, 1) + i] =
          g->dlog_[(std::size_t)old * std::max<std::size_t>(r, 1) + i];
  }
  g->units_ = std::move(by_residue);
  g->dlog_ = std::move(new_dlog);
  for (std::uint32_t slot = 0; slot < g->phi_; ++slot) g->unit_index_[g->units_[slot]] = slot;
  return g;
}

bool CharacterGroup::coprime(std::uint64_t a) const {
  return unit_index_[a % q_] != kNoUnit;
}

const std::uint32_t* CharacterGroup::dlog(std::uint64_t a) const {
  std::uint32_t slot = unit_index_[a % q_];
  if (slot == kNoUnit) throw std::domain_error("dlog: residue not coprime to modulus");
  return dlog_.data() + (std::size_t)slot * std::max<std::size_t>(gens_.size(), 1);
}

DirichletCharacter CharacterGroup::character(std::size_t index) const {
  if (index >= phi_) throw std::domain_error("character index out of range");
  std::vector<std::uint32_t> exps(orders_.size());
  std::size_t rem = index;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    exps[i] = (std::uint32_t)(rem % orders_[i]);
    rem /= orders_[i];
  }
  return DirichletCharacter(shared_from_this(), std::move(exps));
}

std::vector<DirichletCharacter> CharacterGroup::enumerate() const {
  std::vector<DirichletCharacter> out;
  out.reserve(phi_);
  for (std::size_t i = 0; i < phi_; ++i) out.push_back(character(i));
  return out;
}

std::vector<DirichletCharacter> enumerate_characters(std::uint64_t q) {
  return CharacterGroup::make(q)->enumerate();
}

// ---------------------------------------------------------------------------
// DirichletCharacter
// ---------------------------------------------------------------------------

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> g,
                                       std::vector<std::uint32_t> e)
    : group_(std::move(g)), exps_(std::move(e)) {
  compute_conductor();
}

std::size_t DirichletCharacter::index() const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    idx = idx * group_->component_order(i) + exps_[i];
  return idx;
}

bool DirichletCharacter::is_principal() const {
  for (auto e : exps_)
    if (e != 0) return false;
  return true;
}

std::uint64_t DirichletCharacter::order() const {
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t n = group_->component_order(i);
    ord = std::lcm(ord, n / std::gcd<std::uint64_t>(n, exps_[i]));
  }
  return ord;
}

int DirichletCharacter::parity() const {
  std::uint64_t q = group_->modulus();
  if (q <= 2) return 1;
  return value_exponent(q - 1).num == 0 ? 1 : -1;
}

bool DirichletCharacter::is_real() const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if ((2ull * exps_[i]) % group_->component_order(i) != 0) return false;
  return true;
}

// Conductor from the cyclic components.  Odd p^e with local order
// m = p^j * m' (m' | p-1, m > 1) needs modulus p^{j+1}.  For the 2-part,
// a <5>-component of order 2^j > 1 needs 2^{j+2}; otherwise a nontrivial
// <-1> (or <3>) component needs 4.
void DirichletCharacter::compute_conductor() {
  std::uint64_t f = 1;
  const std::size_t r = exps_.size();
  std::size_t i = 0;
  if (r > 0 && group_->comp_prime_[0] == 2) {
    bool pair = r > 1 && group_->comp_prime_[1] == 2;
    if (pair) {
      std::uint64_t n1 = group_->component_order(1);
      std::uint64_t m1 = n1 / std::gcd<std::uint64_t>(n1, exps_[1]);
      if (m1 > 1) f *= 4 * m1;
      else if (exps_[0] != 0) f *= 4;
      i = 2;
    } else {
      if (exps_[0] != 0) f *= 4;
      i = 1;
    }
  }
  for (; i < r; ++i) {
    std::uint32_t k = exps_[i];
    if (k == 0) continue;
    std::uint64_t p = group_->comp_prime_[i];
    std::uint64_t n = group_->component_order(i);
    std::uint64_t m = n / std::gcd<std::uint64_t>(n, k);
    std::uint64_t pj = 1;
    while (m % p == 0) { m /= p; pj *= p; }
    f *= pj * p;
  }
  conductor_ = f;
}

Rational DirichletCharacter::value_exponent(std::uint64_t a) const {
  const auto& g = *group_;
  if (!g.coprime(a)) throw std::domain_error("value_exponent: gcd(a, q) > 1");
  if (exps_.empty()) return Rational(0, 1);
  const std::uint32_t* dl = g.dlog(a);
  // r = sum_i k_i * dlog_i / n_i over the common denominator L
  std::uint64_t L = g.exponent();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t n = g.component_order(i);
    std::uint64_t term = (__uint128_t)exps_[i] * dl[i] % n * (L / n) % L;
    acc = (acc + term) % L;
  }
  return Rational((std::int64_t)acc, (std::int64_t)L);
}

std::complex<double> unit_root(const Rational& r) {
  Rational m = r.mod1();
  if (m.den == 1) return {1.0, 0.0};
  if (m.den == 2) return {-1.0, 0.0};
  if (m.den == 4) return m.num == 1 ? std::complex<double>(0.0, 1.0)
                                    : std::complex<double>(0.0, -1.0);
  double ang = 2.0 * M_PI * m.to_double();
  return {std::cos(ang), std::sin(ang)};
}

std::complex<double> DirichletCharacter::value(std::uint64_t a) const {
  if (!group_->coprime(a)) return {0.0, 0.0};
  return unit_root(value_exponent(a));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
  if (group_->modulus() != other.group_->modulus())
    throw std::domain_error("character product: mismatched moduli");
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i)
    e[i] = (std::uint32_t)((exps_[i] + (std::uint64_t)other.exps_[i]) % group_->component_order(i));
  return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t n = group_->component_order(i);
    e[i] = (std::uint32_t)((n - exps_[i]) % n);
  }
  return DirichletCharacter(group_, std::move(e));
}

bool DirichletCharacter::operator==(const DirichletCharacter& other) const {
  return group_->modulus() == other.group_->modulus() && exps_ == other.exps_;
}

DirichletCharacter DirichletCharacter::induce_primitive() const {
  auto sub = CharacterGroup::make(conductor_);
  std::vector<std::uint32_t> exps(sub->component_count());
  for (std::size_t j = 0; j < sub->component_count(); ++j) {
    // lift the sub-generator to a residue coprime to q in the same class
    std::uint64_t b = sub->component_generator(j);
    while (!group_->coprime(b)) b += conductor_;
    Rational rv = value_exponent(b);
    std::uint64_t nj = sub->component_order(j);
    if (nj % (std::uint64_t)rv.den != 0)
      throw std::logic_error("induce_primitive: exponent denominator mismatch");
    exps[j] = (std::uint32_t)((std::uint64_t)rv.num * (nj / (std::uint64_t)rv.den) % nj);
  }
  return DirichletCharacter(sub, std::move(exps));
}

}  // namespace hzeta
