#include "teamlogic/relation.hpp"

#include <bit>
#include <functional>

#include "teamlogic/error.hpp"

namespace teamlogic {

std::size_t checked_power(std::size_t n, std::size_t k, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && r > limit / n) {
      throw ResourceExhausted("tuple universe " + std::to_string(n) + "^" + std::to_string(k) +
                              " is too large");
    }
    r *= n;
  }
  return r;
}

Relation::Relation(std::size_t arity, std::size_t domain_size)
    : arity_(arity),
      domain_size_(domain_size),
      universe_(checked_power(domain_size, arity)),
      words_((universe_ + 63) / 64 + (universe_ == 0 ? 1 : 0), 0) {}

Relation Relation::full(std::size_t arity, std::size_t domain_size) {
  Relation r(arity, domain_size);
  for (std::size_t c = 0; c < r.universe_; ++c) r.set(c, true);
  return r;
}

std::size_t Relation::code(const Tuple& t) const {
  if (t.size() != arity_) {
    throw ArityError("tuple of length " + std::to_string(t.size()) + " for a relation of arity " +
                     std::to_string(arity_));
  }
  std::size_t c = 0;
  for (Element e : t) {
    if (e >= domain_size_) {
      throw InvariantError("element " + std::to_string(e) + " outside domain of size " +
                           std::to_string(domain_size_));
    }
    c = c * domain_size_ + e;
  }
  return c;
}

Tuple Relation::decode(std::size_t code) const {
  Tuple t(arity_);
  for (std::size_t i = arity_; i-- > 0;) {
    t[i] = static_cast<Element>(code % domain_size_);
    code /= domain_size_;
  }
  return t;
}

void Relation::set(std::size_t code, bool value) {
  std::uint64_t bit = std::uint64_t{1} << (code & 63);
  if (value) {
    words_[code >> 6] |= bit;
  } else {
    words_[code >> 6] &= ~bit;
  }
}

std::size_t Relation::size() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  for (std::size_t c = 0; c < universe_; ++c) {
    if (test(c)) out.push_back(decode(c));
  }
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  if (other.universe_ != universe_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::size_t Relation::hash() const {
  std::size_t h = arity_ * 1000003u + domain_size_;
  for (std::uint64_t w : words_) h = h * 0x100000001b3ULL ^ std::hash<std::uint64_t>{}(w);
  return h;
}

FunctionTable::FunctionTable(std::size_t arity, std::size_t domain_size)
    : arity_(arity), domain_size_(domain_size), values_(checked_power(domain_size, arity), 0) {}

std::size_t FunctionTable::code(const Tuple& args) const {
  if (args.size() != arity_) {
    throw ArityError("function of arity " + std::to_string(arity_) + " applied to " +
                     std::to_string(args.size()) + " arguments");
  }
  std::size_t c = 0;
  for (Element e : args) {
    if (e >= domain_size_) throw InvariantError("argument outside the domain");
    c = c * domain_size_ + e;
  }
  return c;
}

Element FunctionTable::apply(const Tuple& args) const { return values_[code(args)]; }

void FunctionTable::set(const Tuple& args, Element value) { set_code(code(args), value); }

void FunctionTable::set_code(std::size_t code, Element value) {
  if (value >= domain_size_) throw InvariantError("function value outside the domain");
  values_[code] = value;
}

}  // namespace teamlogic
