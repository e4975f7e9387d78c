#include "qpalg/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qpalg {

namespace {

std::string where(int line, int col) { return std::to_string(line) + ":" + std::to_string(col); }

bool is_symbol_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_symbol_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class ExprParser {
public:
  ExprParser(std::string_view text, int line, int col) : text_(text), line_(line), col_(col) {}

  Expr parse() {
    Expr e = sum();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("syntax error at " + where(line_, col_) + ": " + msg);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  Expr node(Expr::Kind k) const {
    Expr e;
    e.kind = k;
    e.line = line_;
    e.column = col_;
    return e;
  }

  Expr sum() {
    Expr first = product();
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) return first;
    Expr s = node(Expr::Kind::Sum);
    s.args.push_back(std::move(first));
    for (;;) {
      if (accept('+')) {
        s.args.push_back(product());
      } else if (accept('-')) {
        Expr neg = node(Expr::Kind::Negate);
        neg.args.push_back(product());
        s.args.push_back(std::move(neg));
      } else {
        break;
      }
    }
    return s;
  }

  Expr product() {
    Expr first = unary();
    if (!peek('*')) return first;
    Expr p = node(Expr::Kind::Product);
    p.args.push_back(std::move(first));
    while (accept('*')) p.args.push_back(unary());
    return p;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Expr unary() {
    if (accept('-')) {
      Expr neg = node(Expr::Kind::Negate);
      neg.args.push_back(unary());
      return neg;
    }
    Expr base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      if (start == pos_) fail("expected a non-negative integer exponent");
      Expr pw = node(Expr::Kind::Power);
      try {
        pw.exponent = std::stoi(std::string(text_.substr(start, pos_ - start)));
      } catch (const std::out_of_range&) {
        fail("exponent too large");
      }
      pw.args.push_back(std::move(base));
      return pw;
    }
    return base;
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      Expr inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Expr num = node(Expr::Kind::Number);
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        advance();
        const std::size_t d = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        if (d == pos_) fail("expected a denominator after '/'");
      }
      num.number = parse_rational(text_.substr(start, pos_ - start));
      return num;
    }
    if (is_symbol_start(c)) {
      Expr sym = node(Expr::Kind::Symbol);
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_symbol_char(text_[pos_])) advance();
      sym.symbol = std::string(text_.substr(start, pos_ - start));
      return sym;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
};

NCSeries power(const NCSeries& base, int k) {
  NCSeries result = NCSeries::unit(base.quiver_ptr(), base.truncation());
  for (int i = 0; i < k; ++i) {
    result = multiply(result, base);
    if (result.is_zero()) break;
  }
  return result;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct Statement {
  std::string text;
  int line;
};

// Splits on ';' and newlines, joining a line that ends with ',' to the next.
std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  std::string cur;
  int line = 1, startLine = 1;
  bool inComment = false;
  auto flush = [&]() {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back({t, startLine});
    cur.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      inComment = false;
      ++line;
      std::string t = trim(cur);
      if (!t.empty() && t.back() == ',') {
        cur += ' ';
        continue;
      }
      flush();
      startLine = line;
      continue;
    }
    if (inComment) continue;
    if (c == '#') {
      inComment = true;
      continue;
    }
    if (c == ';') {
      flush();
      startLine = line;
      continue;
    }
    if (trim(cur).empty()) startLine = line;
    cur += c;
  }
  flush();
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool starts_with_word(const std::string& s, const std::string& word) {
  return s.rfind(word, 0) == 0 && (s.size() == word.size() || std::isspace(static_cast<unsigned char>(s[word.size()])) ||
                                   s[word.size()] == ':');
}

} // namespace

Expr parse_expression(std::string_view text, int firstLine, int firstColumn) {
  return ExprParser(text, firstLine, firstColumn).parse();
}

NCSeries evaluate_series(const Expr& e, const QuiverPtr& q, int truncation) {
  switch (e.kind) {
    case Expr::Kind::Number: return NCSeries::unit(q, truncation) * e.number;
    case Expr::Kind::Symbol: {
      if (auto a = q->find_arrow(e.symbol)) return NCSeries::arrow(q, truncation, *a);
      if (e.symbol.rfind("e_", 0) == 0)
        if (auto v = q->find_vertex(e.symbol.substr(2))) return NCSeries::idempotent(q, truncation, *v);
      throw InputError("unknown label '" + e.symbol + "' at " + where(e.line, e.column));
    }
    case Expr::Kind::Sum: {
      NCSeries s(q, truncation);
      for (const auto& a : e.args) s += evaluate_series(a, q, truncation);
      return s;
    }
    case Expr::Kind::Product: {
      NCSeries s = evaluate_series(e.args.front(), q, truncation);
      for (std::size_t i = 1; i < e.args.size(); ++i) s = multiply(s, evaluate_series(e.args[i], q, truncation));
      return s;
    }
    case Expr::Kind::Negate: return -evaluate_series(e.args.front(), q, truncation);
    case Expr::Kind::Power: return power(evaluate_series(e.args.front(), q, truncation), e.exponent);
  }
  throw Error("unreachable expression kind");
}

NCSeries parse_series(std::string_view text, const QuiverPtr& q, int truncation) {
  return evaluate_series(parse_expression(text), q, truncation);
}

QPFile parse_qp(std::string_view text) {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  bool haveVertices = false;
  QPFile file;
  file.potential = "0";
  std::vector<std::tuple<std::string, std::string, std::string, int>> pendingArrows;

  for (const auto& st : split_statements(text)) {
    const std::string& s = st.text;
    const std::string at = " (line " + std::to_string(st.line) + ")";
    if (starts_with_word(s, "vertices")) {
      if (haveVertices) throw InputError("vertices declared twice" + at);
      haveVertices = true;
      for (auto& v : split_commas(trim(s.substr(8)))) {
        if (!valid_id(v)) throw InputError("syntax error: bad vertex id '" + v + "'" + at);
        vertices.push_back(v);
      }
    } else if (starts_with_word(s, "arrows")) {
      if (!haveVertices) throw InputError("arrows declared before vertices" + at);
      for (auto& item : split_commas(trim(s.substr(6)))) {
        const auto colon = item.find(':');
        const auto arrow = item.find("->");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
          throw InputError("syntax error: expected <label>:<id>-><id>, got '" + item + "'" + at);
        std::string label = trim(item.substr(0, colon));
        std::string src = trim(item.substr(colon + 1, arrow - colon - 1));
        std::string tgt = trim(item.substr(arrow + 2));
        if (label.empty() || !is_symbol_start(label[0]))
          throw InputError("syntax error: bad arrow label '" + label + "'" + at);
        for (char c : label)
          if (!is_symbol_char(c)) throw InputError("syntax error: bad arrow label '" + label + "'" + at);
        pendingArrows.emplace_back(label, src, tgt, st.line);
      }
    } else if (starts_with_word(s, "potential")) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) throw InputError("syntax error: expected 'potential:'" + at);
      file.potential = trim(s.substr(colon + 1));
      file.potentialLine = st.line;
    } else if (starts_with_word(s, "differential")) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) throw InputError("syntax error: expected 'differential <label>:'" + at);
      file.differentials.emplace_back(trim(s.substr(12, colon - 12)), trim(s.substr(colon + 1)));
    } else {
      throw InputError("syntax error: unknown statement '" + s + "'" + at);
    }
  }
  if (!haveVertices) throw InputError("missing 'vertices' declaration");

  auto vertexIndex = [&](const std::string& id, int line) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == id) return static_cast<VertexId>(i);
    throw InputError("dangling vertex reference '" + id + "' (line " + std::to_string(line) + ")");
  };
  for (const auto& [label, src, tgt, line] : pendingArrows) {
    if (label.rfind("e_", 0) == 0) throw InputError("arrow label '" + label + "' clashes with idempotent names");
    arrows.push_back({label, vertexIndex(src, line), vertexIndex(tgt, line), 0});
  }
  file.quiver = std::make_shared<const Quiver>(std::move(vertices), std::move(arrows));
  return file;
}

Quiver parse_quiver(std::string_view text) { return *parse_qp(text).quiver; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QPFile load_qp(const std::string& path) { return parse_qp(read_file(path)); }

} // namespace qpalg
