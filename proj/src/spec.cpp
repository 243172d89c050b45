#include "bv/spec.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

#include "bv/construct.hpp"
#include "bv/error.hpp"

namespace bv {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Int, Ident, Punct, Arrow, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t t = 0; t < k; ++t) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t len = 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + len < s.size() && std::isdigit(static_cast<unsigned char>(s[i + len]))) ++len;
      t.kind = Tok::Int;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i + len < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i + len])) || s[i + len] == '_'))
        ++len;
      t.kind = Tok::Ident;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      len = 2;
      t.kind = Tok::Arrow;
    } else if (std::string_view("()[],;*^-").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
    } else {
      throw ParseError(ErrorCode::SyntaxError, "unexpected character", line, col,
                       std::string(1, c));
    }
    t.text = std::string(s.substr(i, len));
    advance(len);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  end.text = "<end>";
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  GroupSpec parse() {
    GroupSpec s = spec();
    if (peek().kind != Tok::End) fail(ErrorCode::SyntaxError, "trailing input");
    return s;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool is_punct(const char* p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(code, msg, t.line, t.column, t.text);
  }
  void expect(const char* p) {
    if (!is_punct(p)) fail(ErrorCode::SyntaxError, std::string("expected '") + p + "'");
    ++pos_;
  }
  // Argument separator where a closing parenthesis means too few arguments.
  void expect_separator(const char* p) {
    if (is_punct(")")) fail(ErrorCode::ArityError, "too few arguments");
    expect(p);
  }
  void expect_close() {
    if (is_punct(",") || is_punct(";")) fail(ErrorCode::ArityError, "too many arguments");
    expect(")");
  }

  std::uint64_t integer(std::uint64_t min) {
    if (peek().kind != Tok::Int) fail(ErrorCode::SyntaxError, "expected integer");
    const std::string& text = peek().text;
    if (text.size() > 18) fail(ErrorCode::SyntaxError, "integer too large");
    const std::uint64_t v = std::stoull(text);
    if (v < min) fail(ErrorCode::ArityError, "parameter must be at least " + std::to_string(min));
    ++pos_;
    return v;
  }

  std::int64_t signed_integer() {
    bool neg = false;
    if (is_punct("-")) {
      neg = true;
      ++pos_;
    }
    auto v = static_cast<std::int64_t>(integer(0));
    return neg ? -v : v;
  }

  std::string name() {
    if (peek().kind != Tok::Ident) fail(ErrorCode::SyntaxError, "expected generator name");
    return toks_[pos_++].text;
  }

  GroupSpec spec() {
    GroupSpec left = term();
    while (peek().kind == Tok::Ident && peek().text == "x") {
      ++pos_;
      GroupSpec right = term();
      left = GroupSpec{DirectSpec{std::move(left), std::move(right)}};
    }
    return left;
  }

  GroupSpec term() {
    if (is_punct("(")) {
      ++pos_;
      GroupSpec s = spec();
      expect(")");
      return s;
    }
    if (peek().kind != Tok::Ident || !is_punct("(", 1))
      fail(ErrorCode::SyntaxError, "expected a group term");
    const std::string kw = peek().text;
    ++pos_;
    expect("(");
    if (kw == "C") {
      CyclicSpec c{integer(1)};
      expect_close();
      return GroupSpec{c};
    }
    if (kw == "perm") return GroupSpec{perm()};
    if (kw == "sd") return GroupSpec{semidirect()};
    if (kw == "fp") return GroupSpec{fp()};
    if (kw == "quot") return GroupSpec{quot()};
    --pos_;
    --pos_;
    fail(ErrorCode::SyntaxError, "unknown constructor");
  }

  PermSpec perm() {
    PermSpec p;
    p.degree = integer(1);
    expect_separator(";");
    do {
      std::vector<PermSpec::Cycle> gen;
      if (!is_punct("(")) fail(ErrorCode::SyntaxError, "expected cycle");
      while (is_punct("(")) {
        ++pos_;
        PermSpec::Cycle cycle;
        while (peek().kind == Tok::Int) {
          const Token& t = peek();
          const std::uint64_t v = integer(1);
          if (v > p.degree)
            throw ParseError(ErrorCode::ArityError, "point exceeds degree", t.line, t.column, t.text);
          cycle.push_back(v);
        }
        expect(")");
        gen.push_back(std::move(cycle));
      }
      p.generators.push_back(std::move(gen));
    } while (is_punct(",") && (++pos_, true));
    expect(")");
    return p;
  }

  SemidirectSpec semidirect() {
    GroupSpec base = spec();
    expect_separator(",");
    GroupSpec actor = spec();
    expect_separator(",");
    expect("[");
    std::vector<ActorAction> action;
    do {
      action.push_back(actor_action());
    } while (is_punct(";") && (++pos_, true));
    expect("]");
    expect_close();

    SemidirectSpec sd{std::move(base), std::move(actor), std::move(action)};
    if (auto names = static_generator_names(*sd.base)) {
      for (const auto& a : sd.action)
        if (const auto* images = std::get_if<ActorAction::Images>(&a.value))
          for (const auto& [lhs, w] : *images) {
            check_names(*names, Word::generator(lhs));
            check_names(*names, w);
          }
    }
    return sd;
  }

  ActorAction actor_action() {
    if (peek().kind == Tok::Int || is_punct("-")) return ActorAction{signed_integer()};
    ActorAction::Images images;
    do {
      std::string lhs = name();
      if (peek().kind != Tok::Arrow) fail(ErrorCode::SyntaxError, "expected '->'");
      ++pos_;
      images.emplace_back(std::move(lhs), word());
    } while (is_punct(",") && (++pos_, true));
    return ActorAction{std::move(images)};
  }

  FpSpec fp() {
    FpSpec f;
    do {
      const Token& t = peek();
      std::string n = name();
      if (std::find(f.generators.begin(), f.generators.end(), n) != f.generators.end())
        throw ParseError(ErrorCode::SyntaxError, "duplicate generator", t.line, t.column, t.text);
      f.generators.push_back(std::move(n));
    } while (is_punct(",") && (++pos_, true));
    expect_separator(";");
    f.relators = words(f.generators);
    expect(")");
    return f;
  }

  QuotientSpec quot() {
    GroupSpec inner = spec();
    expect_separator(";");
    auto names = static_generator_names(inner);
    std::vector<Word> seeds = words(names ? *names : std::vector<std::string>{}, names.has_value());
    if (seeds.empty()) fail(ErrorCode::ArityError, "quotient needs at least one word");
    expect(")");
    return QuotientSpec{std::move(inner), std::move(seeds)};
  }

  std::vector<Word> words(const std::vector<std::string>& names, bool check = true) {
    std::vector<Word> out;
    if (is_punct(")")) return out;
    do {
      const std::size_t start = pos_;
      Word w = word();
      if (check) check_names(names, w, start);
      out.push_back(std::move(w));
    } while (is_punct(",") && (++pos_, true));
    return out;
  }

  void check_names(const std::vector<std::string>& names, const Word& w,
                   std::size_t start = static_cast<std::size_t>(-1)) {
    for (const auto& l : w.letters()) {
      if (std::find(names.begin(), names.end(), l.generator) != names.end()) continue;
      // Point at the offending token when it can be found.
      std::size_t at = pos_ > 0 ? pos_ - 1 : 0;
      if (start != static_cast<std::size_t>(-1))
        for (std::size_t i = start; i < pos_; ++i)
          if (toks_[i].kind == Tok::Ident && toks_[i].text == l.generator) {
            at = i;
            break;
          }
      const Token& t = toks_[at];
      throw ParseError(ErrorCode::UnknownGenerator, "undeclared generator '" + l.generator + "'",
                       t.line, t.column, t.text);
    }
  }

  Word word() {
    Word w = factor();
    while (is_punct("*")) {
      ++pos_;
      w = w * factor();
    }
    return w;
  }

  Word factor() {
    Word a = atom();
    if (is_punct("^")) {
      ++pos_;
      a = a.power(signed_integer());
    }
    return a;
  }

  Word atom() {
    if (peek().kind == Tok::Ident) return Word::generator(name());
    if (peek().kind == Tok::Int) {
      if (peek().text != "1") fail(ErrorCode::SyntaxError, "only 1 may appear as a literal in words");
      ++pos_;
      return Word{};
    }
    if (is_punct("(")) {
      ++pos_;
      Word w = word();
      expect(")");
      return w;
    }
    if (is_punct("[")) {
      ++pos_;
      Word u = word();
      expect(",");
      Word v = word();
      expect("]");
      return Word::commutator(u, v);
    }
    fail(ErrorCode::SyntaxError, "expected word");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Rendering

std::string join_words(const std::vector<Word>& ws) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += ", ";
    out += render_word(ws[i]);
  }
  return out;
}

struct Renderer {
  std::string operator()(const CyclicSpec& c) const { return "C(" + std::to_string(c.n) + ")"; }

  std::string operator()(const DirectSpec& d) const {
    std::string right = render_spec(*d.right);
    if (std::holds_alternative<DirectSpec>(d.right->node)) right = "(" + right + ")";
    return render_spec(*d.left) + " x " + right;
  }

  std::string operator()(const SemidirectSpec& s) const {
    std::string out = "sd(" + render_spec(*s.base) + ", " + render_spec(*s.actor) + ", [";
    for (std::size_t j = 0; j < s.action.size(); ++j) {
      if (j) out += "; ";
      if (const auto* k = std::get_if<std::int64_t>(&s.action[j].value)) {
        out += std::to_string(*k);
      } else {
        const auto& images = std::get<ActorAction::Images>(s.action[j].value);
        for (std::size_t i = 0; i < images.size(); ++i) {
          if (i) out += ", ";
          out += images[i].first + " -> " + render_word(images[i].second);
        }
      }
    }
    return out + "])";
  }

  std::string operator()(const PermSpec& p) const {
    std::string out = "perm(" + std::to_string(p.degree) + "; ";
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      if (g) out += ", ";
      for (const auto& cycle : p.generators[g]) {
        out += "(";
        for (std::size_t i = 0; i < cycle.size(); ++i) {
          if (i) out += " ";
          out += std::to_string(cycle[i]);
        }
        out += ")";
      }
    }
    return out + ")";
  }

  std::string operator()(const FpSpec& f) const {
    std::string out = "fp(";
    for (std::size_t i = 0; i < f.generators.size(); ++i) {
      if (i) out += ", ";
      out += f.generators[i];
    }
    return out + "; " + join_words(f.relators) + ")";
  }

  std::string operator()(const QuotientSpec& q) const {
    return "quot(" + render_spec(*q.inner) + "; " + join_words(q.normal_seeds) + ")";
  }
};

// ---------------------------------------------------------------------------
// Building

GroupTable cyclic_group(std::uint64_t n, std::size_t max_order) {
  if (n > max_order)
    throw Error(ErrorCode::OrderCapExceeded,
                "cyclic group of order " + std::to_string(n) + " exceeds cap");
  const auto m = static_cast<std::size_t>(n);
  std::vector<Element> mult(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) mult[a * m + b] = static_cast<Element>((a + b) % m);
  std::vector<Element> gens{static_cast<Element>(m > 1 ? 1 : 0)};
  return GroupTable(m, std::move(mult), std::move(gens), {"a"}, "C(" + std::to_string(n) + ")");
}

std::size_t index_of_name(const GroupTable& g, const std::string& name) {
  const auto& names = g.generator_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw Error(ErrorCode::UnknownGenerator, "'" + name + "' is not a generator of " + g.label());
  return static_cast<std::size_t>(it - names.begin());
}

void require_names(const GroupTable& g, const Word& w) {
  for (const auto& l : w.letters()) index_of_name(g, l.generator);
}

struct Builder {
  const BuildOptions& opt;

  GroupTable operator()(const CyclicSpec& c) const { return cyclic_group(c.n, opt.max_order); }

  GroupTable operator()(const DirectSpec& d) const {
    return direct_product(build(*d.left, opt), build(*d.right, opt), opt.max_order);
  }

  GroupTable operator()(const SemidirectSpec& s) const {
    const GroupTable base = build(*s.base, opt);
    const GroupTable actor = build(*s.actor, opt);
    if (s.action.size() != actor.generators().size())
      throw Error(ErrorCode::ArityError,
                  "action lists " + std::to_string(s.action.size()) + " maps but the actor has " +
                      std::to_string(actor.generators().size()) + " generators");
    bool all_powers = true;
    std::vector<GeneratorImages> images;
    for (const auto& a : s.action) {
      GeneratorImages img(base.generators().begin(), base.generators().end());
      if (const auto* k = std::get_if<std::int64_t>(&a.value)) {
        for (auto& v : img) v = base.pow(v, *k);
      } else {
        all_powers = false;
        for (const auto& [lhs, w] : std::get<ActorAction::Images>(a.value)) {
          const std::size_t i = index_of_name(base, lhs);
          require_names(base, w);
          img[i] = evaluate_word(base, w);
        }
      }
      images.push_back(std::move(img));
    }
    try {
      return semidirect_product(base, actor, images, opt.max_order);
    } catch (const Error& e) {
      if (all_powers && (e.code() == ErrorCode::NotAnAutomorphism ||
                         e.code() == ErrorCode::ActionNotHomomorphic))
        throw Error(ErrorCode::SemidirectNonexistent,
                    "power action does not define a semidirect product (" + std::string(e.what()) +
                        ")");
      throw;
    }
  }

  GroupTable operator()(const PermSpec& p) const {
    std::vector<Permutation> gens;
    for (const auto& g : p.generators) gens.push_back(permutation_from_cycles(p.degree, g));
    return closure_from_permutations(p.degree, gens, opt.max_order);
  }

  GroupTable operator()(const FpSpec& f) const {
    const Presentation pres = presentation_of(f);
    const CosetTable table = todd_coxeter(pres, opt.max_cosets);
    if (table.size() > opt.max_order)
      throw Error(ErrorCode::OrderCapExceeded,
                  "presented group of order " + std::to_string(table.size()) + " exceeds cap");
    return realize(pres, table);
  }

  GroupTable operator()(const QuotientSpec& q) const {
    const GroupTable inner = build(*q.inner, opt);
    std::vector<Element> seeds;
    for (const auto& w : q.normal_seeds) {
      require_names(inner, w);
      seeds.push_back(evaluate_word(inner, w));
    }
    return quotient(inner, normal_closure(inner, seeds)).target;
  }
};

}  // namespace

GroupSpec parse_spec(std::string_view text) { return Parser(text).parse(); }

std::string render_spec(const GroupSpec& spec) { return std::visit(Renderer{}, spec.node); }

std::optional<std::vector<std::string>> static_generator_names(const GroupSpec& spec) {
  struct Visitor {
    std::optional<std::vector<std::string>> operator()(const CyclicSpec&) const {
      return std::vector<std::string>{"a"};
    }
    std::optional<std::vector<std::string>> operator()(const DirectSpec&) const {
      return std::nullopt;
    }
    std::optional<std::vector<std::string>> operator()(const SemidirectSpec& s) const {
      auto b = static_generator_names(*s.base);
      auto a = static_generator_names(*s.actor);
      if (!b || !a) return std::nullopt;
      return positional_generator_names(b->size() + a->size());
    }
    std::optional<std::vector<std::string>> operator()(const PermSpec& p) const {
      return positional_generator_names(p.generators.size());
    }
    std::optional<std::vector<std::string>> operator()(const FpSpec& f) const {
      return f.generators;
    }
    std::optional<std::vector<std::string>> operator()(const QuotientSpec& q) const {
      return static_generator_names(*q.inner);
    }
  };
  return std::visit(Visitor{}, spec.node);
}

Presentation presentation_of(const FpSpec& fp) { return Presentation{fp.generators, fp.relators}; }

GroupTable build(const GroupSpec& spec, const BuildOptions& options) {
  return std::visit(Builder{options}, spec.node).with_label(render_spec(spec));
}

}  // namespace bv
