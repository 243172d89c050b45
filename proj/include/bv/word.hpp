#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bv/group.hpp"

namespace bv {

struct Letter {
  std::string generator;
  std::int64_t exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A group word in named generators. Kept in normal form: adjacent letters
/// on the same generator are merged and zero exponents dropped. The empty
/// word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word generator(std::string name, std::int64_t exponent = 1);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  /// Sum of |exponent| over letters.
  std::size_t length() const noexcept;

  Word inverse() const;
  Word power(std::int64_t k) const;
  friend Word operator*(const Word& a, const Word& b);
  /// u^-1 v^-1 u v
  static Word commutator(const Word& u, const Word& v);

  friend bool operator==(const Word&, const Word&) = default;

 private:
  void push(const Letter& l);
  std::vector<Letter> letters_;
};

/// Text form using `*`, `^`, parentheses for periodic words ("(s*t)^3") and
/// "1" for the empty word.
std::string render_word(const Word& w);

using Assignment = std::map<std::string, Element>;

/// Throws UnboundGenerator if a letter has no image.
Element evaluate_word(const GroupTable& g, const Assignment& assignment, const Word& w);
/// Evaluates in the group's own designated generators.
Element evaluate_word(const GroupTable& g, const Word& w);
Assignment generator_assignment(const GroupTable& g);

}  // namespace bv
