#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bv/group.hpp"
#include "bv/word.hpp"

namespace bv {

inline constexpr std::size_t kDefaultMaxCosets = 100000;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

/// Completed coset table for the trivial subgroup. Column 2i holds the action
/// of generator i, column 2i+1 that of its inverse. Coset 0 is the subgroup.
class CosetTable {
 public:
  CosetTable(std::size_t generator_count, std::size_t cosets, std::vector<std::int32_t> entries,
             std::size_t total_defined)
      : generator_count_(generator_count),
        cosets_(cosets),
        entries_(std::move(entries)),
        total_defined_(total_defined) {}

  std::size_t generator_count() const noexcept { return generator_count_; }
  std::size_t columns() const noexcept { return 2 * generator_count_; }
  std::size_t size() const noexcept { return cosets_; }
  std::int32_t entry(std::size_t coset, std::size_t column) const noexcept {
    return entries_[coset * columns() + column];
  }
  /// Cosets defined over the whole run, dead ones included.
  std::size_t total_defined() const noexcept { return total_defined_; }

 private:
  std::size_t generator_count_;
  std::size_t cosets_;
  std::vector<std::int32_t> entries_;
  std::size_t total_defined_;
};

/// HLT coset enumeration over the trivial subgroup. Relators are scanned in
/// declaration order and cosets in creation order, so the output numbering is
/// reproducible. Throws CosetLimitExceeded when more than `max_cosets` rows
/// would be needed, UnknownGenerator if a relator uses an undeclared name.
CosetTable todd_coxeter(const Presentation& p, std::size_t max_cosets = kDefaultMaxCosets);

/// Group of the regular action described by a completed table.
GroupTable realize(const Presentation& p, const CosetTable& table, std::string label = {});

}  // namespace bv
