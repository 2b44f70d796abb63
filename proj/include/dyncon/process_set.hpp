#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyncon {

using ProcessId = int;
using Round = int;
using Value = std::uint64_t;

/// Largest system size representable by ProcessSet.
inline constexpr int kMaxProcesses = 64;

/// A set of process ids in [0, 64), stored as a bit mask.
class ProcessSet {
 public:
  constexpr ProcessSet() = default;
  constexpr explicit ProcessSet(std::uint64_t bits) : bits_(bits) {}
  ProcessSet(std::initializer_list<ProcessId> ids) {
    for (ProcessId p : ids) insert(p);
  }

  static constexpr ProcessSet all(int n) {
    return ProcessSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static constexpr ProcessSet single(ProcessId p) { return ProcessSet(std::uint64_t{1} << p); }

  constexpr bool contains(ProcessId p) const { return (bits_ >> p) & 1U; }
  constexpr void insert(ProcessId p) { bits_ |= std::uint64_t{1} << p; }
  constexpr void erase(ProcessId p) { bits_ &= ~(std::uint64_t{1} << p); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }
  /// Smallest member; undefined on an empty set.
  constexpr ProcessId front() const { return std::countr_zero(bits_); }

  constexpr bool is_subset_of(ProcessSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(ProcessSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr ProcessSet& operator|=(ProcessSet o) { bits_ |= o.bits_; return *this; }
  constexpr ProcessSet& operator&=(ProcessSet o) { bits_ &= o.bits_; return *this; }
  friend constexpr ProcessSet operator|(ProcessSet a, ProcessSet b) { return ProcessSet(a.bits_ | b.bits_); }
  friend constexpr ProcessSet operator&(ProcessSet a, ProcessSet b) { return ProcessSet(a.bits_ & b.bits_); }
  friend constexpr ProcessSet operator-(ProcessSet a, ProcessSet b) { return ProcessSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(ProcessSet, ProcessSet) = default;
  friend constexpr auto operator<=>(ProcessSet, ProcessSet) = default;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = ProcessId;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = ProcessId;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr ProcessId operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<ProcessId> to_vector() const { return {begin(), end()}; }
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

inline std::string ProcessSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (ProcessId p : *this) {
    if (!first) out += ",";
    out += std::to_string(p);
    first = false;
  }
  return out + "}";
}

inline void require_process_count(int n) {
  if (n < 1 || n > kMaxProcesses) {
    throw std::invalid_argument("process count must be in [1, 64], got " + std::to_string(n));
  }
}

}  // namespace dyncon
