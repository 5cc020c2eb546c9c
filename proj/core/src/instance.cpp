#include "mhlab/instance.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mhlab {

namespace {

// ---------------------------------------------------------------- lexer ---

enum class Tok {
  Number, // integer or decimal literal
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  Comma,
  Equals,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
public:
  Lexer(std::string_view text, int line, int col0)
      : text_(text), line_(line), col0_(col0) {}

  Token next() {
    skip_space();
    int col = col0_ + static_cast<int>(pos_);
    if (pos_ >= text_.size()) return {Tok::End, "", line_, col};
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.' && pos_ + 1 < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      }
      return {Tok::Number, std::string(text_.substr(start, pos_ - start)), line_, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), line_, col};
    }
    ++pos_;
    switch (c) {
      case '(': return {Tok::LParen, "(", line_, col};
      case ')': return {Tok::RParen, ")", line_, col};
      case '[': return {Tok::LBracket, "[", line_, col};
      case ']': return {Tok::RBracket, "]", line_, col};
      case '+': return {Tok::Plus, "+", line_, col};
      case '-': return {Tok::Minus, "-", line_, col};
      case '*': return {Tok::Star, "*", line_, col};
      case '/': return {Tok::Slash, "/", line_, col};
      case '^': return {Tok::Caret, "^", line_, col};
      case ',': return {Tok::Comma, ",", line_, col};
      case '=': return {Tok::Equals, "=", line_, col};
      default:
        throw ParseError(line_, col, std::string("unexpected character '") + c + "'");
    }
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  std::string_view text_;
  size_t pos_ = 0;
  int line_;
  int col0_;
};

// ----------------------------------------------- expression evaluation ---

// Working value: entire numerator over a polynomial denominator, exactness
// tracked through the numerator's exponent content.
struct Value {
  ExpPolySum num;
  Poly den = Poly::one();

  bool exact() const { return num.is_polynomial(); }
};

Value v_scalar(const GaussQ& c) { return {ExpPolySum(Poly(c)), Poly::one()}; }

Value v_add(const Value& a, const Value& b) {
  return {b.den * a.num + a.den * b.num, a.den * b.den};
}
Value v_sub(const Value& a, const Value& b) {
  return {b.den * a.num - a.den * b.num, a.den * b.den};
}
Value v_mul(const Value& a, const Value& b) { return {a.num * b.num, a.den * b.den}; }

class ExprParser {
public:
  ExprParser(std::string_view text, int line, int col0) : lex_(text, line, col0) {
    advance();
  }

  Value parse_expression() {
    Value v = parse_term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      bool add = tok_.kind == Tok::Plus;
      advance();
      Value rhs = parse_term();
      v = add ? v_add(v, rhs) : v_sub(v, rhs);
    }
    return v;
  }

  void expect_end() {
    if (tok_.kind != Tok::End)
      throw ParseError(tok_.line, tok_.col, "unexpected trailing '" + tok_.text + "'");
  }

  Token current() const { return tok_; }

private:
  void advance() { tok_ = lex_.next(); }

  bool starts_primary() const {
    return tok_.kind == Tok::Number || tok_.kind == Tok::Ident ||
           tok_.kind == Tok::LParen;
  }

  Value parse_term() {
    Value v = parse_factor();
    while (true) {
      if (tok_.kind == Tok::Star) {
        advance();
        v = v_mul(v, parse_factor());
      } else if (tok_.kind == Tok::Slash) {
        Token op = tok_;
        advance();
        Value rhs = parse_factor();
        if (rhs.num.is_zero())
          throw ParseError(op.line, op.col, "division by zero");
        if (!rhs.exact())
          throw ParseError(op.line, op.col,
                           "division by a transcendental expression");
        v = Value{rhs.den * v.num, v.den * rhs.num.as_polynomial()};
      } else if (starts_primary()) {
        // juxtaposition, e.g. "2z" or "1/2i"
        v = v_mul(v, parse_factor());
      } else {
        break;
      }
    }
    return v;
  }

  Value parse_factor() {
    if (tok_.kind == Tok::Minus) {
      advance();
      Value v = parse_factor();
      return v_sub(v_scalar(GaussQ()), v);
    }
    if (tok_.kind == Tok::Plus) {
      advance();
      return parse_factor();
    }
    return parse_power();
  }

  Value parse_power() {
    Value base = parse_primary();
    if (tok_.kind != Tok::Caret) return base;
    Token op = tok_;
    advance();
    bool negative = false;
    if (tok_.kind == Tok::Minus) {
      negative = true;
      advance();
    }
    if (tok_.kind != Tok::Number || tok_.text.find('.') != std::string::npos)
      throw ParseError(tok_.line, tok_.col, "exponent must be an integer");
    long e = std::stol(tok_.text);
    advance();
    if (negative) {
      if (!base.exact())
        throw ParseError(op.line, op.col,
                         "negative power of a transcendental expression");
      if (base.num.is_zero())
        throw ParseError(op.line, op.col, "negative power of zero");
      base = Value{ExpPolySum(base.den), base.num.as_polynomial()};
    }
    Value out = v_scalar(GaussQ(1L));
    for (long k = 0; k < e; ++k) out = v_mul(out, base);
    return out;
  }

  Value parse_primary() {
    Token t = tok_;
    switch (t.kind) {
      case Tok::Number: {
        advance();
        auto dot = t.text.find('.');
        if (dot == std::string::npos) return v_scalar(GaussQ(Rat(t.text)));
        std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
        size_t frac = t.text.size() - dot - 1;
        Rat r(digits);
        for (size_t k = 0; k < frac; ++k) r /= 10;
        return v_scalar(GaussQ(r));
      }
      case Tok::Ident: {
        if (t.text == "i") {
          advance();
          return v_scalar(GaussQ::unit_i());
        }
        if (t.text == "z") {
          advance();
          return Value{ExpPolySum(Poly::var()), Poly::one()};
        }
        if (t.text == "exp") {
          advance();
          if (tok_.kind != Tok::LParen)
            throw ParseError(tok_.line, tok_.col, "expected '(' after exp");
          advance();
          Value arg = parse_expression();
          if (tok_.kind != Tok::RParen)
            throw ParseError(tok_.line, tok_.col, "expected ')' closing exp");
          advance();
          if (!arg.exact() || !arg.den.is_one())
            throw ParseError(t.line, t.col, "exp argument must be a polynomial");
          Poly a = arg.num.as_polynomial();
          if (a.degree() > 1 || !a.coeff(0).is_zero())
            throw ParseError(t.line, t.col,
                             "exp argument must have the form mu*z with exact mu");
          if (a.is_zero()) return v_scalar(GaussQ(1L));
          return Value{ExpPolySum::exponential(a.coeff(1), Poly::one()), Poly::one()};
        }
        throw ParseError(t.line, t.col, "unknown identifier '" + t.text + "'");
      }
      case Tok::LParen: {
        advance();
        Value v = parse_expression();
        if (tok_.kind != Tok::RParen)
          throw ParseError(tok_.line, tok_.col, "expected ')'");
        advance();
        return v;
      }
      default:
        throw ParseError(t.line, t.col, "expected a value, found '" + t.text + "'");
    }
  }

  Lexer lex_;
  Token tok_{Tok::End, "", 0, 0};
};

Value eval_expression(std::string_view text, int line, int col0) {
  ExprParser p(text, line, col0);
  Value v = p.parse_expression();
  p.expect_end();
  return v;
}

RatFunc value_as_ratfunc(const Value& v, int line, int col) {
  if (!v.exact())
    throw ParseError(line, col, "expected an exact rational-function value");
  return RatFunc(v.num.as_polynomial(), v.den);
}

ExpPolySum value_as_entire(const Value& v, int line, int col) {
  MeroFunction m(v.num, v.den); // normalizes constants out of the denominator
  if (!m.is_entire())
    throw ParseError(line, col, "expected an entire (polynomial denominator-free) value");
  return m.num();
}

GaussQ value_as_scalar(const Value& v, int line, int col) {
  RatFunc f = value_as_ratfunc(v, line, col);
  if (!f.is_constant())
    throw ParseError(line, col, "expected a constant scalar");
  return f.num().coeff(0);
}

// ------------------------------------------------------- document parse ---

struct Line {
  int number;
  std::string text;
};

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

struct SectionHandlerState {
  InstanceDocument doc;
  std::string section_kind; // "", "curve", "target", "params"
  std::string section_name;
  // curve accumulation
  std::string curve_model;
  std::vector<Value> curve_components;
  int curve_line = 0;
  bool have_n = false;
  // target accumulation
  int target_degree = -1;
  std::vector<std::pair<MultiIndex, RatFunc>> target_coeffs;
  int target_line = 0;
};

} // namespace

InstanceDocument parse_instance(std::string_view text) {
  SectionHandlerState st;
  std::vector<Line> lines;
  {
    int num = 1;
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back({num++, cur});
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back({num, cur});
  }

  auto finish_curve = [&st]() {
    if (st.section_kind != "curve") return;
    if (st.curve_model.empty())
      throw ParseError(st.curve_line, 1, "curve section missing 'model'");
    if (st.curve_components.empty())
      throw ParseError(st.curve_line, 1, "curve section missing 'components'");
    Curve* slot = nullptr;
    std::optional<Curve> built;
    if (st.curve_model == "poly") {
      std::vector<Poly> comps;
      for (const auto& v : st.curve_components) {
        if (!v.exact() || !v.den.is_one())
          throw ParseError(st.curve_line, 1,
                           "poly-model component is not a polynomial");
        comps.push_back(v.num.as_polynomial());
      }
      try {
        built = Curve(reduce_representation(std::move(comps)));
      } catch (const Error& e) {
        throw ParseError(st.curve_line, 1, e.what());
      }
    } else {
      std::vector<ExpPolySum> comps;
      for (const auto& v : st.curve_components)
        comps.push_back(value_as_entire(v, st.curve_line, 1));
      try {
        built = Curve(make_exp_curve(std::move(comps)));
      } catch (const Error& e) {
        throw ParseError(st.curve_line, 1, e.what());
      }
    }
    (void)slot;
    if (st.section_name == "f")
      st.doc.f = built;
    else
      st.doc.g = built;
  };

  auto finish_target = [&st]() {
    if (st.section_kind != "target") return;
    if (st.target_degree < 1)
      throw ParseError(st.target_line, 1, "target section missing 'degree' >= 1");
    MovingHomPoly Q(st.doc.n, st.target_degree);
    for (auto& [I, c] : st.target_coeffs) Q.set_coeff(I, std::move(c));
    if (Q.is_zero())
      throw ParseError(st.target_line, 1, "target has no nonzero coefficient");
    st.doc.targets.names.push_back(st.section_name);
    st.doc.targets.targets.push_back(std::move(Q));
  };

  auto close_section = [&]() {
    finish_curve();
    finish_target();
    st.section_kind.clear();
    st.section_name.clear();
    st.curve_model.clear();
    st.curve_components.clear();
    st.target_degree = -1;
    st.target_coeffs.clear();
  };

  for (const Line& ln : lines) {
    std::string body = ln.text;
    if (auto hash = body.find('#'); hash != std::string::npos)
      body = body.substr(0, hash);
    size_t first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    size_t last = body.find_last_not_of(" \t\r");
    body = body.substr(first, last - first + 1);
    int col0 = static_cast<int>(first) + 1;

    if (body.front() == '[') {
      if (body.back() != ']')
        throw ParseError(ln.number, col0 + static_cast<int>(body.size()) - 1,
                         "section header missing ']'");
      close_section();
      std::istringstream hs(body.substr(1, body.size() - 2));
      std::string kind, name;
      hs >> kind >> name;
      if (kind == "params") {
        st.section_kind = "params";
      } else if (kind == "curve") {
        if (name != "f" && name != "g")
          throw ParseError(ln.number, col0, "curve name must be 'f' or 'g'");
        st.section_kind = "curve";
        st.section_name = name;
        st.curve_line = ln.number;
      } else if (kind == "target") {
        if (name.empty())
          throw ParseError(ln.number, col0, "target section needs a name");
        st.section_kind = "target";
        st.section_name = name;
        st.target_line = ln.number;
      } else {
        throw ParseError(ln.number, col0, "unknown section '" + kind + "'");
      }
      continue;
    }

    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ParseError(ln.number, col0, "expected 'key = value'");
    std::string key_part = body.substr(0, eq);
    std::string value_part = body.substr(eq + 1);
    int value_col = col0 + static_cast<int>(eq) + 1;
    // trim key
    size_t ke = key_part.find_last_not_of(" \t");
    key_part = key_part.substr(0, ke == std::string::npos ? 0 : ke + 1);
    if (key_part.empty())
      throw ParseError(ln.number, col0, "empty key");

    std::istringstream ks(key_part);
    std::string key;
    ks >> key;

    auto expr_value = [&](const std::string& text_piece, int col) {
      return eval_expression(text_piece, ln.number, col);
    };

    if (st.section_kind.empty()) {
      if (key == "version") {
        Value v = expr_value(value_part, value_col);
        GaussQ s = value_as_scalar(v, ln.number, value_col);
        if (!(s == GaussQ(1L)))
          throw ParseError(ln.number, value_col, "unsupported version (expected 1)");
        st.doc.version = 1;
      } else if (key == "n") {
        GaussQ s = value_as_scalar(expr_value(value_part, value_col), ln.number,
                                   value_col);
        if (!s.is_real() || s.re < 1 || s.re.get_den() != 1)
          throw ParseError(ln.number, value_col, "n must be an integer >= 1");
        st.doc.n = static_cast<int>(s.re.get_num().get_si());
        st.doc.targets.n = st.doc.n;
        st.have_n = true;
      } else {
        throw ParseError(ln.number, col0, "unknown top-level key '" + key + "'");
      }
      continue;
    }

    if (st.section_kind == "curve") {
      if (key == "model") {
        std::istringstream vs(value_part);
        std::string model;
        vs >> model;
        if (model != "poly" && model != "exppoly")
          throw ParseError(ln.number, value_col, "model must be poly or exppoly");
        st.curve_model = model;
      } else if (key == "components") {
        for (const auto& piece : split_top_level(value_part))
          st.curve_components.push_back(expr_value(piece, value_col));
        if (static_cast<int>(st.curve_components.size()) != st.doc.n + 1)
          throw ParseError(ln.number, value_col,
                           "expected n+1 = " + std::to_string(st.doc.n + 1) +
                               " components, found " +
                               std::to_string(st.curve_components.size()));
      } else {
        throw ParseError(ln.number, col0, "unknown curve key '" + key + "'");
      }
      continue;
    }

    if (st.section_kind == "target") {
      if (key == "degree") {
        GaussQ s = value_as_scalar(expr_value(value_part, value_col), ln.number,
                                   value_col);
        if (!s.is_real() || s.re < 1 || s.re.get_den() != 1)
          throw ParseError(ln.number, value_col, "degree must be an integer >= 1");
        st.target_degree = static_cast<int>(s.re.get_num().get_si());
      } else if (key == "coeff") {
        // key syntax: coeff (i_0,...,i_n)
        std::string idx_part;
        std::getline(ks, idx_part);
        size_t lp = idx_part.find('(');
        size_t rp = idx_part.find(')');
        if (lp == std::string::npos || rp == std::string::npos || rp < lp)
          throw ParseError(ln.number, col0, "coeff key needs a multi-index (i_0,...,i_n)");
        std::vector<int> entries;
        for (const auto& piece : split_top_level(idx_part.substr(lp + 1, rp - lp - 1))) {
          try {
            entries.push_back(std::stoi(piece));
          } catch (...) {
            throw ParseError(ln.number, col0, "bad multi-index entry '" + piece + "'");
          }
        }
        MultiIndex I(entries);
        if (I.size() != st.doc.n + 1)
          throw ParseError(ln.number, col0,
                           "multi-index must have n+1 = " +
                               std::to_string(st.doc.n + 1) + " entries");
        if (st.target_degree < 1)
          throw ParseError(ln.number, col0, "set 'degree' before coefficients");
        if (I.weight() != st.target_degree)
          throw ParseError(ln.number, col0,
                           "multi-index " + to_string(I) + " has weight " +
                               std::to_string(I.weight()) + ", expected " +
                               std::to_string(st.target_degree));
        RatFunc c = value_as_ratfunc(expr_value(value_part, value_col), ln.number,
                                     value_col);
        st.target_coeffs.emplace_back(I, std::move(c));
      } else {
        throw ParseError(ln.number, col0, "unknown target key '" + key + "'");
      }
      continue;
    }

    // params
    auto as_long = [&](long lo, long hi) {
      GaussQ s =
          value_as_scalar(expr_value(value_part, value_col), ln.number, value_col);
      if (!s.is_real() || s.re.get_den() != 1)
        throw ParseError(ln.number, value_col, key + " must be an integer");
      long v = s.re.get_num().get_si();
      if (v < lo || v > hi)
        throw ParseError(ln.number, value_col, key + " out of range");
      return v;
    };
    auto as_double = [&]() {
      GaussQ s =
          value_as_scalar(expr_value(value_part, value_col), ln.number, value_col);
      if (!s.is_real())
        throw ParseError(ln.number, value_col, key + " must be a real number");
      return s.re.get_d();
    };
    if (key == "p") {
      st.doc.params.p = static_cast<int>(as_long(1, 16));
    } else if (key == "variant") {
      std::istringstream vs(value_part);
      std::string v;
      vs >> v;
      if (v != "a" && v != "b")
        throw ParseError(ln.number, value_col, "variant must be a or b");
      st.doc.params.variant = v[0];
    } else if (key == "fixed_targets") {
      std::istringstream vs(value_part);
      std::string v;
      vs >> v;
      if (v == "true")
        st.doc.params.fixed_targets = true;
      else if (v == "false")
        st.doc.params.fixed_targets = false;
      else
        throw ParseError(ln.number, value_col, "fixed_targets must be true or false");
    } else if (key == "precision") {
      st.doc.params.precision = static_cast<prec_t>(as_long(32, 65536));
    } else if (key == "seed") {
      st.doc.params.seed = static_cast<std::uint64_t>(as_long(0, 0x7fffffffffffffffL));
    } else if (key == "rmax") {
      double v = as_double();
      if (!(v > 1.0))
        throw ParseError(ln.number, value_col, "rmax must exceed 1");
      st.doc.params.rmax = v;
    } else if (key == "quad_tol") {
      double v = as_double();
      if (!(v > 0))
        throw ParseError(ln.number, value_col, "quad_tol must be positive");
      st.doc.params.quad_tol = v;
    } else if (key == "radii") {
      std::vector<double> radii;
      for (const auto& piece : split_top_level(value_part)) {
        GaussQ s = value_as_scalar(expr_value(piece, value_col), ln.number, value_col);
        if (!s.is_real())
          throw ParseError(ln.number, value_col, "radii must be real numbers");
        radii.push_back(s.re.get_d());
      }
      if (radii.size() < 1)
        throw ParseError(ln.number, value_col, "radii list is empty");
      for (size_t k = 0; k < radii.size(); ++k) {
        if (radii[k] <= 1.0)
          throw ParseError(ln.number, value_col, "radii must exceed 1");
        if (k > 0 && radii[k] <= radii[k - 1])
          throw ParseError(ln.number, value_col, "radii must increase");
      }
      st.doc.params.radii = std::move(radii);
    } else if (key == "q") {
      st.doc.params.q = static_cast<int>(as_long(1, 4096));
    } else if (key == "degrees") {
      std::vector<int> degs;
      for (const auto& piece : split_top_level(value_part)) {
        GaussQ s = value_as_scalar(expr_value(piece, value_col), ln.number, value_col);
        if (!s.is_real() || s.re.get_den() != 1 || s.re < 1)
          throw ParseError(ln.number, value_col, "degrees must be integers >= 1");
        degs.push_back(static_cast<int>(s.re.get_num().get_si()));
      }
      st.doc.params.degrees = std::move(degs);
    } else if (key == "L") {
      std::istringstream vs(value_part);
      std::string v;
      vs >> v;
      if (v == "inf") {
        st.doc.params.truncation.reset();
      } else {
        long val = as_long(1, 0x7fffffffffffffffL);
        st.doc.params.truncation = Int(val);
      }
    } else if (key == "nondeg_degree_max") {
      st.doc.params.nondeg_degree_max = static_cast<int>(as_long(1, 8));
    } else if (key == "nondeg_deg_z_max") {
      st.doc.params.nondeg_deg_z_max = static_cast<int>(as_long(0, 16));
    } else {
      throw ParseError(ln.number, col0, "unknown params key '" + key + "'");
    }
  }
  close_section();

  // cross-validation
  if (st.doc.f && st.doc.f->dim() != st.doc.n)
    throw ParseError(1, 1, "curve f does not match n");
  if (st.doc.g && st.doc.g->dim() != st.doc.n)
    throw ParseError(1, 1, "curve g does not match n");
  return st.doc;
}

InstanceDocument parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::InvalidInput, "cannot open instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

GaussQ parse_scalar(std::string_view text) {
  Value v = eval_expression(text, 1, 1);
  return value_as_scalar(v, 1, 1);
}

RatFunc parse_ratfunc(std::string_view text) {
  Value v = eval_expression(text, 1, 1);
  return value_as_ratfunc(v, 1, 1);
}

ExpPolySum parse_entire(std::string_view text) {
  Value v = eval_expression(text, 1, 1);
  return value_as_entire(v, 1, 1);
}

} // namespace mhlab
