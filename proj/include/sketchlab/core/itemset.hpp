#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sketchlab/core/bitvector.hpp"

namespace sketchlab {

/// A set of attributes, stored as its d-bit indicator vector.
///
/// Internally attributes are 0-based. from_attributes()/attributes() are the
/// only places that speak the external 1..d numbering.
class Itemset {
 public:
  explicit Itemset(BitVector members);

  static Itemset empty(std::size_t d) { return Itemset(BitVector(d)); }
  static Itemset from_indices(std::size_t d, std::span<const std::size_t> indices);
  static Itemset from_attributes(std::size_t d, std::span<const std::size_t> attributes);

  std::size_t dim() const { return members_.size(); }
  std::size_t cardinality() const { return cardinality_; }
  bool contains(std::size_t index) const { return members_.get(index); }
  const BitVector& members() const { return members_; }

  std::vector<std::size_t> indices() const;
  std::vector<std::size_t> attributes() const;

  bool subset_of(const Itemset& other) const;
  Itemset united(const Itemset& other) const;

  /// "{1,3}" in 1-based attributes.
  std::string to_string() const;

  friend bool operator==(const Itemset& a, const Itemset& b) { return a.members_ == b.members_; }

 private:
  BitVector members_;
  std::size_t cardinality_;
};

}  // namespace sketchlab
