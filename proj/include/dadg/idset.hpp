#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace dadg {

using ArrowId = std::uint32_t;
using UnitId = std::uint32_t;

/// Dense subset of an id range owned by one groupoid.
///
/// The owner is tracked by an opaque token rather than a pointer, so sets stay
/// plain values and may outlive the groupoid object that produced them. Two
/// sets can only be combined when they share owner and universe size.
template <class Tag>
class IdSet {
 public:
  using id_type = std::uint32_t;

  IdSet() = default;
  IdSet(std::uint64_t owner, std::size_t universe) : owner_(owner), bits_(universe) {}

  static IdSet from_ids(std::uint64_t owner, std::size_t universe,
                        const std::vector<id_type>& ids) {
    IdSet s(owner, universe);
    for (auto i : ids) s.insert(i);
    return s;
  }

  std::uint64_t owner() const noexcept { return owner_; }
  std::size_t universe() const noexcept { return bits_.size(); }

  bool contains(id_type i) const { return i < bits_.size() && bits_.test(i); }
  void insert(id_type i) {
    if (i >= bits_.size()) throw std::out_of_range("IdSet::insert: id outside universe");
    bits_.set(i);
  }
  void erase(id_type i) {
    if (i < bits_.size()) bits_.reset(i);
  }
  void clear() { bits_.reset(); }
  void fill() { bits_.set(); }

  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool is_subset_of(const IdSet& other) const {
    check_compatible(other);
    return bits_.is_subset_of(other.bits_);
  }
  bool intersects(const IdSet& other) const {
    check_compatible(other);
    return bits_.intersects(other.bits_);
  }

  IdSet& operator|=(const IdSet& o) { check_compatible(o); bits_ |= o.bits_; return *this; }
  IdSet& operator&=(const IdSet& o) { check_compatible(o); bits_ &= o.bits_; return *this; }
  IdSet& operator-=(const IdSet& o) { check_compatible(o); bits_ -= o.bits_; return *this; }
  friend IdSet operator|(IdSet a, const IdSet& b) { return a |= b; }
  friend IdSet operator&(IdSet a, const IdSet& b) { return a &= b; }
  friend IdSet operator-(IdSet a, const IdSet& b) { return a -= b; }

  friend bool operator==(const IdSet& a, const IdSet& b) {
    return a.owner_ == b.owner_ && a.bits_ == b.bits_;
  }
  friend bool operator<(const IdSet& a, const IdSet& b) {
    if (a.owner_ != b.owner_) return a.owner_ < b.owner_;
    if (a.bits_.size() != b.bits_.size()) return a.bits_.size() < b.bits_.size();
    return a.bits_ < b.bits_;
  }

  template <class F>
  void for_each(F&& f) const {
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
      f(static_cast<id_type>(i));
  }

  std::vector<id_type> ids() const {
    std::vector<id_type> out;
    out.reserve(size());
    for_each([&](id_type i) { out.push_back(i); });
    return out;
  }

  const boost::dynamic_bitset<>& bits() const noexcept { return bits_; }

  void check_compatible(const IdSet& o) const {
    if (owner_ != o.owner_ || bits_.size() != o.bits_.size())
      throw std::invalid_argument("set owner mismatch");
  }

 private:
  std::uint64_t owner_ = 0;
  boost::dynamic_bitset<> bits_;
};

struct ArrowTag {};
struct UnitTag {};

using ArrowSet = IdSet<ArrowTag>;
using UnitSet = IdSet<UnitTag>;

}  // namespace dadg
