#include "idet/problem_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "idet/errors.hpp"

namespace idet {

namespace {

constexpr unsigned kMaxExponent = 64;

enum class Tok { Ident, Number, Symbol, Arrow, Newline, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1, depth = 0;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      if (depth == 0) out.push_back({Tok::Newline, "\\n", line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Arrow;
      t.text = "->";
      advance(2);
    } else if (std::string_view("=[](),+-*^/").find(c) != std::string_view::npos) {
      t.kind = Tok::Symbol;
      t.text = std::string(1, c);
      if (c == '[' || c == '(') ++depth;
      if ((c == ']' || c == ')') && depth > 0) --depth;
      advance(1);
    } else {
      throw InputError("syntax", std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "end of input", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool at_symbol(char c) const { return peek().kind == Tok::Symbol && peek().text[0] == c; }

  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw InputError("syntax", what + ", found '" + t.text + "'", t.line, t.col);
  }

  void expect(char c) {
    if (!at_symbol(c)) fail(peek(), std::string("expected '") + c + "'");
    next();
  }

  std::string expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), "expected " + what);
    return next().text;
  }

  void end_statement() {
    if (peek().kind == Tok::End) return;
    if (peek().kind != Tok::Newline) fail(peek(), "expected end of line");
    next();
  }

  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }

  // Polynomials over `names`.
  Polynomial expr(std::span<const std::string> names) {
    Polynomial acc = term(names);
    while (at_symbol('+') || at_symbol('-')) {
      bool minus = next().text[0] == '-';
      Polynomial t = term(names);
      if (minus) {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  // Comma-separated list enclosed in open/close.
  template <class F>
  void list(char open, char close, F&& item) {
    expect(open);
    if (at_symbol(close)) {
      next();
      return;
    }
    for (;;) {
      item();
      if (at_symbol(',')) {
        next();
        continue;
      }
      expect(close);
      return;
    }
  }

 private:
  Polynomial term(std::span<const std::string> names) {
    Polynomial acc = unary(names);
    while (at_symbol('*')) {
      next();
      acc = acc * unary(names);
    }
    return acc;
  }

  Polynomial unary(std::span<const std::string> names) {
    if (at_symbol('-')) {
      next();
      return -unary(names);
    }
    if (at_symbol('+')) {
      next();
      return unary(names);
    }
    Polynomial base = primary(names);
    if (at_symbol('^')) {
      next();
      const Token& e = peek();
      if (e.kind != Tok::Number) fail(e, "expected a nonnegative integer exponent");
      next();
      if (e.text.size() > 3 || std::stoul(e.text) > kMaxExponent) {
        throw InputError("exponent-too-large", "exponent " + e.text + " exceeds " +
                                                   std::to_string(kMaxExponent), e.line, e.col);
      }
      base = base.pow(static_cast<unsigned>(std::stoul(e.text)));
      if (at_symbol('^')) fail(peek(), "chained exponents need parentheses");
    }
    return base;
  }

  Polynomial primary(std::span<const std::string> names) {
    const Token& t = peek();
    const std::size_t n = names.size();
    if (t.kind == Tok::Number) {
      next();
      Rational value(mpz_class(t.text));
      if (at_symbol('/')) {
        next();
        const Token& d = peek();
        if (d.kind != Tok::Number) fail(d, "expected an integer denominator");
        next();
        mpz_class den(d.text);
        if (den == 0) throw InputError("division-by-zero", "zero denominator", d.line, d.col);
        value /= Rational(den);
      }
      return Polynomial::constant(n, value);
    }
    if (t.kind == Tok::Ident) {
      next();
      for (std::size_t i = 0; i < n; ++i)
        if (names[i] == t.text) return Polynomial::variable(n, i);
      throw InputError("unknown-variable", "'" + t.text + "' is not a declared variable", t.line,
                       t.col);
    }
    if (at_symbol('(')) {
      next();
      Polynomial inner = expr(names);
      expect(')');
      return inner;
    }
    fail(t, "expected a number, variable or '('");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

ChartMap parse_chart(Parser& ps, const std::string& label) {
  ChartMap chart;
  chart.label = label;
  const Token& start = ps.peek();
  ps.list('(', ')', [&] {
    const Token& t = ps.peek();
    std::string name = ps.expect_ident("a chart parameter");
    for (const auto& v : chart.params)
      if (v == name) {
        throw InputError("duplicate-name", "parameter '" + name + "' repeated", t.line, t.col);
      }
    chart.params.push_back(name);
  });
  if (chart.params.size() > kMaxVars) {
    throw InputError("too-many-vars", "chart has more than 8 parameters", start.line, start.col);
  }
  if (ps.peek().kind != Tok::Arrow) ps.fail(ps.peek(), "expected '->'");
  ps.next();
  ps.list('(', ')', [&] { chart.components.push_back(ps.expr(chart.params)); });
  return chart;
}

std::vector<ChartMap> parse_chart_list(Parser& ps, const std::string& prefix) {
  std::vector<ChartMap> charts;
  ps.list('[', ']', [&] {
    charts.push_back(parse_chart(ps, prefix + std::to_string(charts.size() + 1)));
  });
  return charts;
}

std::string join_poly(std::span<const Polynomial> ps, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ", ";
    out += ps[i].to_string(names);
  }
  return out;
}

std::string chart_text(const ChartMap& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.params.size(); ++i) {
    if (i) out += ", ";
    out += c.params[i];
  }
  out += ") -> (" + join_poly(c.components, c.params) + ")";
  return out;
}

std::string chart_list_text(const std::vector<ChartMap>& charts) {
  std::string out = "[";
  for (std::size_t i = 0; i < charts.size(); ++i) {
    if (i) out += ", ";
    out += chart_text(charts[i]);
  }
  return out + "]";
}

}  // namespace

ProblemSpec parse_problem(std::string_view text, std::string id) {
  Parser ps(tokenize(text));
  ProblemSpec spec;
  spec.id = std::move(id);
  std::map<std::string, Token> seen;
  std::optional<std::vector<std::vector<Polynomial>>> rows;

  ps.skip_newlines();
  while (ps.peek().kind != Tok::End) {
    const Token key = ps.peek();
    std::string name = ps.expect_ident("a statement name");
    if (seen.count(name)) {
      throw InputError("duplicate-statement", "'" + name + "' given twice", key.line, key.col);
    }
    static const char* known[] = {"vars", "psi", "H", "Y", "xcharts", "syzygies"};
    bool ok = false;
    for (const char* k : known) ok = ok || name == k;
    if (!ok) throw InputError("unknown-statement", "unknown statement '" + name + "'", key.line, key.col);
    if (name != "vars" && !seen.count("vars")) {
      throw InputError("vars-first", "'vars' must be declared before '" + name + "'", key.line,
                       key.col);
    }
    seen.emplace(name, key);
    ps.expect('=');

    const auto& vars = spec.varnames;
    if (name == "vars") {
      while (ps.peek().kind == Tok::Ident) {
        const Token& t = ps.peek();
        std::string v = ps.next().text;
        for (const auto& w : spec.varnames)
          if (w == v) throw InputError("duplicate-name", "variable '" + v + "' repeated", t.line, t.col);
        spec.varnames.push_back(v);
      }
      if (spec.varnames.empty()) {
        throw InputError("missing-vars", "at least one variable is required", key.line, key.col);
      }
      if (spec.varnames.size() > kMaxVars) {
        throw InputError("too-many-vars", "at most 8 variables are supported", key.line, key.col);
      }
    } else if (name == "psi") {
      ps.list('[', ']', [&] { spec.psi.push_back(ps.expr(vars)); });
    } else if (name == "H") {
      rows.emplace();
      ps.list('[', ']', [&] {
        rows->emplace_back();
        ps.list('[', ']', [&] { rows->back().push_back(ps.expr(vars)); });
      });
    } else if (name == "Y") {
      std::string kind = ps.expect_ident("'origin' or 'charts'");
      if (kind == "origin") {
        spec.Y.kind = YDescriptor::Kind::Origin;
      } else if (kind == "charts") {
        spec.Y.kind = YDescriptor::Kind::Charts;
        spec.Y.charts = parse_chart_list(ps, "Y");
      } else {
        throw InputError("syntax", "expected 'origin' or 'charts', found '" + kind + "'", key.line,
                         key.col);
      }
    } else if (name == "xcharts") {
      spec.xcharts = parse_chart_list(ps, "X");
    } else {
      ps.list('[', ']', [&] {
        std::vector<Polynomial> s;
        ps.list('(', ')', [&] { s.push_back(ps.expr(vars)); });
        spec.extra_syzygies.push_back(std::move(s));
      });
    }
    ps.end_statement();
    ps.skip_newlines();
  }

  if (!seen.count("vars")) throw InputError("missing-vars", "no 'vars' statement", 1, 1);
  if (!seen.count("psi")) throw InputError("missing-psi", "no 'psi' statement", 1, 1);
  if (!seen.count("H")) throw InputError("missing-H", "no 'H' statement", 1, 1);

  const Token& htok = seen.at("H");
  const std::size_t p = spec.psi.size();
  if (rows->size() != p) {
    throw InputError("H-shape", "H has " + std::to_string(rows->size()) + " rows, expected " +
                                    std::to_string(p), htok.line, htok.col);
  }
  std::vector<Polynomial> entries;
  for (std::size_t r = 0; r < rows->size(); ++r) {
    if ((*rows)[r].size() != p) {
      throw InputError("H-shape", "row " + std::to_string(r + 1) + " of H has " +
                                      std::to_string((*rows)[r].size()) + " entries, expected " +
                                      std::to_string(p), htok.line, htok.col);
    }
    for (auto& e : (*rows)[r]) entries.push_back(std::move(e));
  }
  spec.H = PolyMatrix(p, p, std::move(entries));
  if (p == 0) spec.H = PolyMatrix(0, 0, spec.n());

  try {
    validate(spec);
  } catch (const InputError& e) {
    // Attach the statement the failed invariant belongs to.
    const std::string& c = e.code();
    std::string stmt = "psi";
    if (c.rfind("H-", 0) == 0) stmt = "H";
    else if (c.rfind("syzygy", 0) == 0) stmt = "syzygies";
    else if (c.rfind("chart", 0) == 0 || c == "empty-charts")
      stmt = seen.count("xcharts") ? "xcharts" : "Y";
    else if (c == "missing-vars" || c == "too-many-vars") stmt = "vars";
    if (c.rfind("chart", 0) == 0 && e.what() && std::string(e.what()).find("'Y") != std::string::npos &&
        seen.count("Y")) {
      stmt = "Y";
    }
    auto it = seen.find(stmt);
    if (it == seen.end()) throw;
    throw InputError(c, e.what(), it->second.line, it->second.col);
  }
  return spec;
}

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> vars) {
  Parser ps(tokenize(text));
  ps.skip_newlines();
  Polynomial p = ps.expr(vars);
  ps.skip_newlines();
  if (ps.peek().kind != Tok::End) ps.fail(ps.peek(), "unexpected trailing input");
  return p;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("io", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), path.stem().string());
}

std::string serialize(const ProblemSpec& spec) {
  const auto& names = spec.varnames;
  std::ostringstream os;
  os << "vars =";
  for (const auto& v : names) os << ' ' << v;
  os << "\npsi = [" << join_poly(spec.psi, names) << "]\n";
  os << "H = [";
  for (std::size_t r = 0; r < spec.H.rows(); ++r) {
    if (r) os << ", ";
    os << "[";
    for (std::size_t c = 0; c < spec.H.cols(); ++c) {
      if (c) os << ", ";
      os << spec.H(r, c).to_string(names);
    }
    os << "]";
  }
  os << "]\n";
  if (spec.Y.is_origin()) {
    os << "Y = origin\n";
  } else {
    os << "Y = charts " << chart_list_text(spec.Y.charts) << "\n";
  }
  if (!spec.xcharts.empty()) os << "xcharts = " << chart_list_text(spec.xcharts) << "\n";
  if (!spec.extra_syzygies.empty()) {
    os << "syzygies = [";
    for (std::size_t k = 0; k < spec.extra_syzygies.size(); ++k) {
      if (k) os << ", ";
      os << "(" << join_poly(spec.extra_syzygies[k], names) << ")";
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace idet
