#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bv/fp.hpp"
#include "bv/group.hpp"
#include "bv/word.hpp"

namespace bv {

/// Owning pointer with value semantics: deep copy, deep equality.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& o) : ptr_(std::make_unique<T>(*o.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) {
    if (this != &o) ptr_ = std::make_unique<T>(*o.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct GroupSpec;

struct CyclicSpec {
  std::uint64_t n = 1;
  friend bool operator==(const CyclicSpec&, const CyclicSpec&) = default;
};

struct DirectSpec {
  Box<GroupSpec> left;
  Box<GroupSpec> right;
  friend bool operator==(const DirectSpec&, const DirectSpec&) = default;
};

/// Action of one actor generator: either "every base generator to its k-th
/// power" or explicit images for named base generators (unnamed ones are
/// fixed).
struct ActorAction {
  using Images = std::vector<std::pair<std::string, Word>>;
  std::variant<std::int64_t, Images> value;
  friend bool operator==(const ActorAction&, const ActorAction&) = default;
};

struct SemidirectSpec {
  Box<GroupSpec> base;
  Box<GroupSpec> actor;
  std::vector<ActorAction> action;
  friend bool operator==(const SemidirectSpec&, const SemidirectSpec&) = default;
};

struct PermSpec {
  using Cycle = std::vector<std::size_t>;
  std::size_t degree = 1;
  /// Each generator is a product of cycles, kept as written.
  std::vector<std::vector<Cycle>> generators;
  friend bool operator==(const PermSpec&, const PermSpec&) = default;
};

struct FpSpec {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  friend bool operator==(const FpSpec&, const FpSpec&) = default;
};

struct QuotientSpec {
  Box<GroupSpec> inner;
  std::vector<Word> normal_seeds;
  friend bool operator==(const QuotientSpec&, const QuotientSpec&) = default;
};

struct GroupSpec {
  std::variant<CyclicSpec, DirectSpec, SemidirectSpec, PermSpec, FpSpec, QuotientSpec> node;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Grammar:
///
///     spec   := term ("x" term)*              left-associated direct product
///     term   := "C(" int ")"
///             | "perm(" int ";" gen ("," gen)* ")"     gen := cycle+, cycle := "(" int* ")"
///             | "sd(" spec "," spec ",[" action (";" action)* "])"
///             | "fp(" name ("," name)* ";" [word ("," word)*] ")"
///             | "quot(" spec ";" word ("," word)* ")"
///             | "(" spec ")"
///     action := ["-"] int | name "->" word ("," name "->" word)*
///     word   := factor ("*" factor)*,  factor := atom ["^" ["-"] int]
///     atom   := name | "1" | "(" word ")" | "[" word "," word "]"
///
/// Throws ParseError (SyntaxError, UnknownGenerator or ArityError).
GroupSpec parse_spec(std::string_view text);

std::string render_spec(const GroupSpec& spec);

/// Generator names of the group `build` would produce, when they can be
/// determined without building (direct products depend on orders).
std::optional<std::vector<std::string>> static_generator_names(const GroupSpec& spec);

struct BuildOptions {
  std::size_t max_order = kDefaultMaxOrder;
  std::size_t max_cosets = kDefaultMaxCosets;
};

GroupTable build(const GroupSpec& spec, const BuildOptions& options = {});

Presentation presentation_of(const FpSpec& fp);

}  // namespace bv
