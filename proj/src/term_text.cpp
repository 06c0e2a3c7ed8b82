// Canonical text syntax of terms:
//   Grid(Vec(12,?), black, [PosShape(?, Rectangle(?, ?, Full))])
//   Vec(layers[0].pos.i - layers[1].pos.i, zero)
//   Bitmap(101|010|101)

#include <cctype>
#include <charconv>

#include "arcmdl/term.hpp"

namespace arcmdl {

namespace {

void print(const Term& t, std::string& out);

void print_operand(const Term& t, std::string& out) {
  const bool paren = t.kind() == Term::Kind::Plus || t.kind() == Term::Kind::Minus;
  if (paren) out += '(';
  print(t, out);
  if (paren) out += ')';
}

void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Unknown: out += '?'; return;
    case Term::Kind::Nat: out += std::to_string(t.nat_value()); return;
    case Term::Kind::Color: out += color_name(t.color_value()); return;
    case Term::Kind::Bits: out += t.bits_value().to_string(); return;
    case Term::Kind::Var: out += t.var_path().to_string(); return;
    case Term::Kind::Zero: out += "zero"; return;
    case Term::Kind::Plus:
    case Term::Kind::Minus:
      print(t.args()[0], out);
      out += t.kind() == Term::Kind::Plus ? " + " : " - ";
      print_operand(t.args()[1], out);
      return;
    case Term::Kind::List:
      out += '[';
      for (std::size_t k = 0; k < t.args().size(); ++k) {
        if (k > 0) out += ", ";
        print(t.args()[k], out);
      }
      out += ']';
      return;
    case Term::Kind::Ctor:
      out += ctor_name(t.ctor());
      if (t.args().empty()) return;
      out += '(';
      for (std::size_t k = 0; k < t.args().size(); ++k) {
        if (k > 0) out += ", ";
        print(t.args()[k], out);
      }
      out += ')';
      return;
  }
}

class TermParser {
 public:
  explicit TermParser(std::string_view s) : s_(s) {}

  Term parse_all() {
    Term t = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ModelError("term syntax error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Term expr() {
    Term left = operand();
    for (;;) {
      if (eat('+'))
        left = Term::plus(left, operand());
      else if (eat('-'))
        left = Term::minus(left, operand());
      else
        return left;
    }
  }

  std::string_view word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Term operand() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '?') {
      ++pos_;
      return Term::unknown();
    }
    if (c == '(') {
      ++pos_;
      Term t = expr();
      expect(')');
      return t;
    }
    if (c == '[') {
      ++pos_;
      std::vector<Term> items;
      if (!eat(']')) {
        do items.push_back(expr());
        while (eat(','));
        expect(']');
      }
      return Term::list(std::move(items));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int v = 0;
      auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (res.ec != std::errc()) fail("bad number");
      pos_ = static_cast<std::size_t>(res.ptr - s_.data());
      return Term::nat(v);
    }
    const std::size_t start = pos_;
    std::string_view w = word();
    if (w.empty()) fail(std::string("unexpected character '") + c + "'");
    if (std::isupper(static_cast<unsigned char>(w.front()))) return constructor(w);
    if (w == "zero") return Term::zero();
    if (auto col = color_from_name(w)) return Term::color(*col);
    // A path: letters, digits, dots and layer brackets.
    pos_ = start;
    int open = 0;
    while (pos_ < s_.size()) {
      const char d = s_[pos_];
      if (d == '[')
        ++open;
      else if (d == ']' && open > 0)
        --open;
      else if (!std::isalnum(static_cast<unsigned char>(d)) && d != '.' && d != '_')
        break;
      ++pos_;
    }
    try {
      return Term::var(Path::parse(s_.substr(start, pos_ - start)));
    } catch (const PathError& e) {
      fail(e.what());
    }
  }

  Term constructor(std::string_view name) {
    auto ctor = ctor_from_name(name);
    if (!ctor) fail("unknown constructor " + std::string(name));
    const std::size_t arity = ctor_fields(*ctor).size();
    if (arity == 0) {
      // Tolerate "Full()".
      const std::size_t save = pos_;
      if (eat('(')) {
        if (!eat(')')) pos_ = save;
      }
      return Term::make(*ctor, {});
    }
    expect('(');
    std::vector<Term> args;
    if (*ctor == Ctor::Bitmap) {
      skip_ws();
      if (eat('?')) {
        args.push_back(Term::unknown());
      } else {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ')') ++pos_;
        try {
          args.push_back(Term::bits(Bitmap::parse(s_.substr(start, pos_ - start))));
        } catch (const Error& e) {
          fail(e.what());
        }
      }
    } else {
      do args.push_back(expr());
      while (eat(','));
    }
    expect(')');
    if (args.size() != arity) fail("wrong number of arguments for " + std::string(name));
    return Term::make(*ctor, std::move(args));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Term::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

Term parse_term(std::string_view text) { return TermParser(text).parse_all(); }

}  // namespace arcmdl
