#include "bv/word.hpp"

#include <algorithm>
#include <cstdlib>

#include "bv/error.hpp"

namespace bv {

Word::Word(std::vector<Letter> letters) {
  for (const auto& l : letters) push(l);
}

Word Word::generator(std::string name, std::int64_t exponent) {
  Word w;
  w.push(Letter{std::move(name), exponent});
  return w;
}

void Word::push(const Letter& l) {
  if (l.exponent == 0) return;
  if (!letters_.empty() && letters_.back().generator == l.generator) {
    letters_.back().exponent += l.exponent;
    if (letters_.back().exponent == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(l);
}

std::size_t Word::length() const noexcept {
  std::size_t n = 0;
  for (const auto& l : letters_) n += static_cast<std::size_t>(std::llabs(l.exponent));
  return n;
}

Word Word::inverse() const {
  Word w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.push(Letter{it->generator, -it->exponent});
  return w;
}

Word Word::power(std::int64_t k) const {
  const Word base = k < 0 ? inverse() : *this;
  Word w;
  for (std::int64_t i = 0; i < std::llabs(k); ++i)
    for (const auto& l : base.letters_) w.push(l);
  return w;
}

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  for (const auto& l : b.letters_) w.push(l);
  return w;
}

Word Word::commutator(const Word& u, const Word& v) {
  return u.inverse() * v.inverse() * u * v;
}

namespace {

std::string render_letters(const std::vector<Letter>& letters, std::size_t begin,
                           std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i != begin) out += '*';
    out += letters[i].generator;
    if (letters[i].exponent != 1) out += "^" + std::to_string(letters[i].exponent);
  }
  return out;
}

}  // namespace

std::string render_word(const Word& w) {
  const auto& ls = w.letters();
  if (ls.empty()) return "1";
  const std::size_t n = ls.size();
  for (std::size_t p = 2; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = ls[i] == ls[i - p];
    if (periodic) return "(" + render_letters(ls, 0, p) + ")^" + std::to_string(n / p);
  }
  return render_letters(ls, 0, n);
}

Element evaluate_word(const GroupTable& g, const Assignment& assignment, const Word& w) {
  Element result = GroupTable::identity;
  for (const auto& l : w.letters()) {
    auto it = assignment.find(l.generator);
    if (it == assignment.end())
      throw Error(ErrorCode::UnboundGenerator, "no image for generator '" + l.generator + "'");
    result = g.mul(result, g.pow(it->second, l.exponent));
  }
  return result;
}

Assignment generator_assignment(const GroupTable& g) {
  Assignment a;
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    a.emplace(g.generator_names()[i], g.generators()[i]);
  return a;
}

Element evaluate_word(const GroupTable& g, const Word& w) {
  return evaluate_word(g, generator_assignment(g), w);
}

}  // namespace bv
