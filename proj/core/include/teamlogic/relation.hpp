#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace teamlogic {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

// A k-ary relation over {0..n-1}, stored as a bitset over the n^k tuples in
// lexicographic order (first coordinate most significant).
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t arity, std::size_t domain_size);
  static Relation full(std::size_t arity, std::size_t domain_size);

  std::size_t arity() const { return arity_; }
  std::size_t domain_size() const { return domain_size_; }
  // n^k: the number of candidate tuples.
  std::size_t universe_size() const { return universe_; }

  std::size_t code(const Tuple& t) const;
  Tuple decode(std::size_t code) const;

  bool contains(const Tuple& t) const { return test(code(t)); }
  bool test(std::size_t code) const { return (words_[code >> 6] >> (code & 63)) & 1U; }
  void insert(const Tuple& t) { set(code(t), true); }
  void erase(const Tuple& t) { set(code(t), false); }
  void set(std::size_t code, bool value);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<Tuple> tuples() const;
  bool subset_of(const Relation& other) const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::size_t hash() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t arity_ = 0;
  std::size_t domain_size_ = 0;
  std::size_t universe_ = 1;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

// Total map {0..n-1}^k -> {0..n-1}, indexed like Relation.
class FunctionTable {
 public:
  FunctionTable() = default;
  FunctionTable(std::size_t arity, std::size_t domain_size);

  std::size_t arity() const { return arity_; }
  std::size_t domain_size() const { return domain_size_; }
  std::size_t universe_size() const { return values_.size(); }

  Element apply(const Tuple& args) const;
  Element at(std::size_t code) const { return values_[code]; }
  void set(const Tuple& args, Element value);
  void set_code(std::size_t code, Element value);

  std::size_t code(const Tuple& args) const;

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::size_t arity_ = 0;
  std::size_t domain_size_ = 0;
  std::vector<Element> values_ = std::vector<Element>(1, 0);
};

// n^k, or throws ResourceExhausted above `limit`.
std::size_t checked_power(std::size_t n, std::size_t k, std::size_t limit = std::size_t{1} << 26);

}  // namespace teamlogic
