#include "exoform/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

#include "exoform/error.hpp"

namespace exoform {

namespace {

enum class Tok : std::uint8_t { ident, integer, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = Tok::ident;
      tok.text = text.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = Tok::integer;
      tok.text = text.substr(i, j - i);
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tok.kind = Tok::punct;
      tok.text = "->";
      advance(2);
    } else if (std::string(";,=(){}[]^+-*/:").find(c) != std::string::npos) {
      tok.kind = Tok::punct;
      tok.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Tok::end;
  end.text = "<end>";
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Document parse() {
    while (peek().kind != Tok::end) statement();
    return std::move(doc_);
  }

  // Entry points for the standalone helpers.
  Expr expression_only(const ChartPtr& chart) {
    Expr e = parse_expr(chart);
    expect_end();
    return simplify(e);
  }

  Form form_only(int degree, const ChartPtr& chart) {
    Form f = parse_form_literal(chart, degree);
    expect_end();
    return f;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Document doc_;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t at = pos_ + ahead;
    return at < tokens_.size() ? tokens_[at] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::end) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& at, const std::string& message,
                         ErrorKind kind = ErrorKind::parse) const {
    throw ParseError(at.line, at.col, message, kind);
  }
  bool is_punct(const Token& t, const char* text) const {
    return t.kind == Tok::punct && t.text == text;
  }
  void expect_punct(const char* text) {
    const Token& t = next();
    if (!is_punct(t, text)) fail(t, std::string("expected '") + text + "', found '" + t.text + "'");
  }
  std::string expect_ident(const char* what) {
    const Token& t = next();
    if (t.kind != Tok::ident) fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
    return t.text;
  }
  int expect_int(const char* what) {
    const Token& t = next();
    if (t.kind != Tok::integer) fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
    try {
      return std::stoi(t.text);
    } catch (const std::exception&) {
      fail(t, "integer out of range");
    }
  }
  void expect_end() {
    const Token& t = peek();
    if (t.kind != Tok::end) fail(t, "trailing input after expression: '" + t.text + "'");
  }

  const ChartPtr& require_chart(const Token& at) const {
    if (!doc_.chart) fail(at, "declare a chart first", ErrorKind::chart);
    return doc_.chart;
  }

  template <typename T>
  void check_fresh(const std::vector<std::pair<std::string, T>>& list, const std::string& name,
                   const Token& at, const char* category) {
    for (const auto& [existing, value] : list)
      if (existing == name)
        fail(at, std::string("duplicate ") + category + " name '" + name + "'", ErrorKind::name);
  }

  // --- statements ---

  void statement() {
    const Token& head = peek();
    if (head.kind != Tok::ident)
      fail(head, "expected a statement keyword, found '" + head.text + "'");
    if (head.text == "chart") return chart_statement();
    if (head.text == "form") return form_statement();
    if (head.text == "pseudostructure") return pseudostructure_statement();
    if (head.text == "connection") return connection_statement();
    if (head.text == "metric") return metric_statement();
    if (head.text == "relation") return relation_statement();
    if (head.text == "canonical") return canonical_statement();
    if (head.text == "balance") return balance_statement();
    fail(head, "unknown statement '" + head.text + "'");
  }

  void chart_statement() {
    const Token& kw = next();
    if (doc_.chart) fail(kw, "a document declares a single chart", ErrorKind::chart);
    std::vector<std::string> names;
    names.push_back(expect_ident("a chart variable name"));
    while (is_punct(peek(), ",")) {
      next();
      names.push_back(expect_ident("a chart variable name"));
    }
    expect_punct(";");
    try {
      doc_.chart = make_chart(names);
    } catch (const Error& e) {
      fail(kw, e.what(), ErrorKind::chart);
    }
  }

  void form_statement() {
    const Token& kw = next();
    const ChartPtr& chart = require_chart(kw);
    const Token& name_tok = peek();
    std::string name = expect_ident("a form name");
    check_fresh(doc_.forms, name, name_tok, "form");
    expect_punct("=");
    Form f = parse_form_literal(chart, -1);
    expect_punct(";");
    doc_.forms.emplace_back(std::move(name), std::move(f));
  }

  void pseudostructure_statement() {
    const Token& kw = next();
    const ChartPtr& chart = require_chart(kw);
    const Token& name_tok = peek();
    std::string name = expect_ident("a pseudostructure name");
    check_fresh(doc_.pseudostructures, name, name_tok, "pseudostructure");
    expect_punct("=");
    expect_punct("{");
    std::map<int, Expr> constraints;
    if (!is_punct(peek(), "}")) {
      while (true) {
        const Token& var_tok = peek();
        std::string var = expect_ident("a chart variable");
        int idx = chart->index_of(var);
        if (idx < 0) fail(var_tok, "unknown chart variable '" + var + "'", ErrorKind::name);
        if (constraints.count(idx))
          fail(var_tok, "variable '" + var + "' constrained twice", ErrorKind::name);
        expect_punct("=");
        const Token& val_tok = peek();
        Expr value = simplify(parse_expr(chart));
        if (max_variable(value) >= 0)
          fail(val_tok, "constraint value must be constant on the chart", ErrorKind::chart);
        constraints.emplace(idx, std::move(value));
        if (is_punct(peek(), ",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect_punct("}");
    expect_punct(";");
    try {
      doc_.pseudostructures.emplace_back(std::move(name),
                                         Pseudostructure(chart, std::move(constraints)));
    } catch (const Error& e) {
      fail(kw, e.what(), ErrorKind::chart);
    }
  }

  void connection_statement() {
    const Token& kw = next();
    const ChartPtr& chart = require_chart(kw);
    const Token& name_tok = peek();
    std::string name = expect_ident("a connection name");
    check_fresh(doc_.connections, name, name_tok, "connection");
    expect_punct("{");
    Connection conn(chart);
    const int n = chart->dimension();
    while (!is_punct(peek(), "}")) {
      const Token& entry_tok = peek();
      std::string key = expect_ident("a coefficient entry 'G[s][a][b]'");
      if (key != "G") fail(entry_tok, "connection entries are written G[s][a][b]");
      int idx[3];
      for (int& component : idx) {
        expect_punct("[");
        const Token& int_tok = peek();
        component = expect_int("a 1-based index");
        if (component < 1 || component > n)
          fail(int_tok, "index outside the chart dimension", ErrorKind::dimension);
        expect_punct("]");
      }
      expect_punct("=");
      const Token& val_tok = peek();
      Expr value = parse_expr(chart);
      expect_punct(";");
      try {
        conn.set_gamma(idx[0] - 1, idx[1] - 1, idx[2] - 1, value);
      } catch (const Error& e) {
        fail(val_tok, e.what(), ErrorKind::chart);
      }
    }
    expect_punct("}");
    doc_.connections.emplace_back(std::move(name), std::move(conn));
  }

  void metric_statement() {
    const Token& kw = next();
    const ChartPtr& chart = require_chart(kw);
    const Token& name_tok = peek();
    std::string name = expect_ident("a metric name");
    check_fresh(doc_.metrics, name, name_tok, "metric");
    expect_punct("=");
    const Token& body_tok = peek();
    std::string body = expect_ident("'euclidean', 'diagonal' or 'matrix'");
    const int n = chart->dimension();
    try {
      if (body == "euclidean") {
        expect_punct(";");
        doc_.metrics.emplace_back(std::move(name), Metric::euclidean(chart));
        return;
      }
      if (body == "diagonal") {
        expect_punct("(");
        std::vector<Expr> entries;
        entries.push_back(parse_expr(chart));
        while (is_punct(peek(), ",")) {
          next();
          entries.push_back(parse_expr(chart));
        }
        expect_punct(")");
        expect_punct(";");
        if (static_cast<int>(entries.size()) != n)
          fail(body_tok, "need one diagonal entry per chart variable", ErrorKind::dimension);
        doc_.metrics.emplace_back(std::move(name), Metric::diagonal(chart, std::move(entries)));
        return;
      }
      if (body == "matrix") {
        expect_punct("[");
        std::vector<std::vector<Expr>> rows;
        while (true) {
          expect_punct("[");
          std::vector<Expr> row;
          row.push_back(parse_expr(chart));
          while (is_punct(peek(), ",")) {
            next();
            row.push_back(parse_expr(chart));
          }
          expect_punct("]");
          rows.push_back(std::move(row));
          if (is_punct(peek(), ",")) {
            next();
            continue;
          }
          break;
        }
        expect_punct("]");
        expect_punct(";");
        if (static_cast<int>(rows.size()) != n)
          fail(body_tok, "need one matrix row per chart variable", ErrorKind::dimension);
        for (const auto& row : rows)
          if (static_cast<int>(row.size()) != n)
            fail(body_tok, "metric rows must match the chart dimension", ErrorKind::dimension);
        doc_.metrics.emplace_back(std::move(name), Metric(chart, std::move(rows)));
        return;
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(body_tok, e.what(), e.kind());
    }
    fail(body_tok, "unknown metric form '" + body + "'");
  }

  void relation_statement() {
    const Token& kw = next();
    require_chart(kw);
    const Token& name_tok = peek();
    std::string name = expect_ident("a relation name");
    for (const auto& r : doc_.relations)
      if (r.name == name) fail(name_tok, "duplicate relation name '" + name + "'", ErrorKind::name);
    expect_punct(":");
    const Token& d_tok = peek();
    if (expect_ident("'d'") != "d") fail(d_tok, "a relation reads d(psi) = omega");
    expect_punct("(");
    const Token& lhs_tok = peek();
    std::string lhs = expect_ident("a form name or '_'");
    expect_punct(")");
    expect_punct("=");
    const Token& rhs_tok = peek();
    std::string rhs = expect_ident("a form name");
    expect_punct(";");

    const Form* rhs_form = doc_.find_form(rhs);
    if (!rhs_form) fail(rhs_tok, "unknown form '" + rhs + "'", ErrorKind::name);
    RelationDecl decl{std::move(name), {}, std::move(rhs)};
    if (lhs != "_") {
      const Form* lhs_form = doc_.find_form(lhs);
      if (!lhs_form) fail(lhs_tok, "unknown form '" + lhs + "'", ErrorKind::name);
      if (lhs_form->degree() != rhs_form->degree() - 1)
        fail(lhs_tok, "potential degree must be one below the right side", ErrorKind::dimension);
      decl.lhs = std::move(lhs);
    }
    doc_.relations.push_back(std::move(decl));
  }

  void canonical_statement() {
    const Token& kw = next();
    const ChartPtr& chart = require_chart(kw);
    CanonicalDecl decl;
    if (is_punct(peek(), "(")) {
      decl.name = "canonical";
    } else {
      const Token& name_tok = peek();
      decl.name = expect_ident("a transformation name");
      (void)name_tok;
      expect_punct(":");
    }
    for (const auto& c : doc_.canonicals)
      if (c.name == decl.name)
        fail(kw, "duplicate canonical name '" + decl.name + "'", ErrorKind::name);

    const Token& split_tok = peek();
    expect_punct("(");
    decl.split.push_back(expect_ident("a chart variable"));
    while (is_punct(peek(), ",")) {
      next();
      decl.split.push_back(expect_ident("a chart variable"));
    }
    expect_punct(")");
    if (decl.split != chart->names())
      fail(split_tok, "the split must list the chart variables in order", ErrorKind::chart);
    if (chart->dimension() % 2 != 0)
      fail(split_tok, "a canonical split needs an even-dimensional chart", ErrorKind::dimension);

    expect_punct("->");
    expect_punct("(");
    std::vector<Expr> targets;
    while (true) {
      decl.target_names.push_back(expect_ident("a target coordinate name"));
      expect_punct("=");
      targets.push_back(simplify(parse_expr(chart)));
      if (is_punct(peek(), ",")) {
        next();
        continue;
      }
      break;
    }
    expect_punct(")");
    expect_punct(";");
    if (static_cast<int>(targets.size()) != chart->dimension())
      fail(split_tok, "need one target per chart variable", ErrorKind::dimension);
    const int m = chart->dimension() / 2;
    decl.map.Q.assign(targets.begin(), targets.begin() + m);
    decl.map.P.assign(targets.begin() + m, targets.end());
    doc_.canonicals.push_back(std::move(decl));
  }

  void balance_statement() {
    const Token& kw = next();
    const Token& name_tok = peek();
    std::string name = expect_ident("a balance-system name");
    for (const auto& b : doc_.balances)
      if (b.name == name) fail(name_tok, "duplicate balance name '" + name + "'", ErrorKind::name);
    expect_punct("{");

    BalanceDecl decl;
    decl.name = std::move(name);
    std::map<int, Expr> actions;
    bool saw_action = false;
    while (!is_punct(peek(), "}")) {
      const Token& entry_tok = peek();
      std::string key = expect_ident("a balance entry");
      if (key == "xi") {
        if (decl.chart) fail(entry_tok, "xi declared twice");
        if (saw_action) fail(entry_tok, "declare xi before the action entries");
        const Token& n_tok = peek();
        int n = expect_int("the accompanying dimension");
        expect_punct(";");
        if (n < 1 || n > 8)
          fail(n_tok, "accompanying dimension must be between 1 and 8", ErrorKind::dimension);
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back("xi" + std::to_string(i));
        decl.chart = make_chart(names);
      } else if (key == "A") {
        if (!decl.chart) decl.chart = require_chart(entry_tok);
        saw_action = true;
        expect_punct("[");
        const Token& idx_tok = peek();
        int mu = expect_int("a 1-based action index");
        expect_punct("]");
        if (mu < 1 || mu > decl.chart->dimension())
          fail(idx_tok, "action index outside the chart", ErrorKind::dimension);
        if (actions.count(mu)) fail(idx_tok, "action entry declared twice", ErrorKind::name);
        expect_punct("=");
        actions.emplace(mu, simplify(parse_expr(decl.chart)));
        expect_punct(";");
      } else if (key == "degree") {
        const Token& d_tok = peek();
        decl.degree = expect_int("the balance degree");
        expect_punct(";");
        if (decl.degree < 1 || decl.degree > 3)
          fail(d_tok, "balance degree must be 1, 2 or 3", ErrorKind::degree);
      } else if (key == "connection") {
        const Token& c_tok = peek();
        std::string cname = expect_ident("a connection name");
        expect_punct(";");
        if (!doc_.find_connection(cname))
          fail(c_tok, "unknown connection '" + cname + "'", ErrorKind::name);
        decl.connection = std::move(cname);
      } else if (key == "omega") {
        const Token& o_tok = peek();
        std::string oname = expect_ident("a form name");
        expect_punct(";");
        if (!doc_.find_form(oname)) fail(o_tok, "unknown form '" + oname + "'", ErrorKind::name);
        decl.omega = std::move(oname);
      } else {
        fail(entry_tok, "unknown balance entry '" + key + "'");
      }
    }
    expect_punct("}");
    if (!decl.chart) decl.chart = require_chart(kw);

    if (decl.degree == 1) {
      if (decl.omega) fail(kw, "degree-1 balance forms are assembled from the actions");
      const int n = decl.chart->dimension();
      for (int mu = 1; mu <= n; ++mu)
        if (!actions.count(mu))
          fail(kw, "missing action entry A[" + std::to_string(mu) + "]", ErrorKind::dimension);
      for (auto& [mu, expr] : actions) decl.actions.push_back(std::move(expr));
    } else {
      if (!actions.empty()) fail(kw, "action entries only assemble a degree-1 form");
      if (!decl.omega) fail(kw, "degree-2 and degree-3 balance systems name their form (omega)");
      const Form* f = doc_.find_form(*decl.omega);
      if (!same_chart(f->chart(), decl.chart))
        fail(kw, "the supplied form lives on the document chart", ErrorKind::chart);
      if (f->degree() != decl.degree)
        fail(kw, "supplied form degree does not match the declared degree", ErrorKind::dimension);
    }
    if (decl.connection && !same_chart(doc_.find_connection(*decl.connection)->chart(), decl.chart))
      fail(kw, "the named connection lives on a different chart", ErrorKind::chart);
    doc_.balances.push_back(std::move(decl));
  }

  // --- expressions ---

  bool is_function(const Token& t) const {
    return t.kind == Tok::ident &&
           (t.text == "sin" || t.text == "cos" || t.text == "exp" || t.text == "log") &&
           is_punct(peek(1), "(");
  }

  bool is_differential(const Token& t, const ChartPtr& chart) const {
    return t.kind == Tok::ident && t.text.size() > 1 && t.text[0] == 'd' &&
           chart->index_of(t.text.substr(1)) >= 0;
  }

  Expr parse_expr(const ChartPtr& chart) {
    Expr acc = parse_term(chart);
    while (is_punct(peek(), "+") || is_punct(peek(), "-")) {
      bool minus = next().text == "-";
      Expr rhs = parse_term(chart);
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Expr parse_term(const ChartPtr& chart) {
    Expr acc = parse_factor(chart);
    while (is_punct(peek(), "*") || is_punct(peek(), "/")) {
      bool divide = next().text == "/";
      Expr rhs = parse_factor(chart);
      acc = divide ? acc / rhs : acc * rhs;
    }
    return acc;
  }

  Expr parse_factor(const ChartPtr& chart) {
    if (is_punct(peek(), "-")) {
      next();
      return -parse_factor(chart);
    }
    Expr base = parse_primary(chart);
    if (is_punct(peek(), "^")) {
      next();
      long long e = parse_exponent();
      return pow(base, e);
    }
    return base;
  }

  long long parse_exponent() {
    if (is_punct(peek(), "(")) {
      next();
      expect_punct("-");
      long long e = expect_int("an integer exponent");
      expect_punct(")");
      return -e;
    }
    return expect_int("an integer exponent");
  }

  Expr parse_primary(const ChartPtr& chart) {
    const Token& t = peek();
    if (t.kind == Tok::integer) {
      next();
      try {
        return Expr::constant(Rational(Integer(t.text)));
      } catch (const std::exception&) {
        fail(t, "malformed integer literal");
      }
    }
    if (is_punct(t, "(")) {
      next();
      Expr inner = parse_expr(chart);
      expect_punct(")");
      return inner;
    }
    if (is_function(t)) {
      std::string fn = next().text;
      expect_punct("(");
      Expr arg = parse_expr(chart);
      expect_punct(")");
      Func f = fn == "sin"   ? Func::sin
               : fn == "cos" ? Func::cos
               : fn == "exp" ? Func::exp
                             : Func::log;
      return Expr::call(f, arg);
    }
    if (t.kind == Tok::ident) {
      if (is_differential(t, chart))
        fail(t, "differential '" + t.text + "' cannot appear inside a coefficient");
      next();
      int idx = chart->index_of(t.text);
      if (idx >= 0) return Expr::variable(idx);
      return Expr::parameter(t.text);
    }
    fail(t, "expected an expression, found '" + t.text + "'");
  }

  // --- form literals ---

  // degree < 0 means "infer from the literal".
  Form parse_form_literal(const ChartPtr& chart, int degree) {
    const Token& start = peek();
    if (start.kind == Tok::ident && start.text == "zero" && is_punct(peek(1), "(")) {
      next();
      expect_punct("(");
      int p = expect_int("the form degree");
      expect_punct(")");
      if (p < 0) fail(start, "form degree cannot be negative", ErrorKind::dimension);
      if (degree >= 0 && p != degree)
        fail(start, "zero-form degree does not match the expected degree", ErrorKind::dimension);
      return Form(chart, p);
    }

    struct Piece {
      int sign;
      Expr coefficient;
      std::vector<int> diffs;
      Token at;
    };
    std::vector<Piece> pieces;
    int sign = 1;
    if (is_punct(peek(), "-")) {
      next();
      sign = -1;
    }
    while (true) {
      Piece piece{sign, Expr::integer(1), {}, peek()};
      bool has_coefficient = false;
      if (!is_differential(peek(), chart)) {
        piece.coefficient = parse_expr(chart);
        has_coefficient = true;
      }
      while (is_differential(peek(), chart)) {
        const Token& d = next();
        piece.diffs.push_back(chart->index_of(d.text.substr(1)));
        if (is_punct(peek(), "^") && is_differential(peek(1), chart)) {
          next();
          continue;
        }
        break;
      }
      if (!has_coefficient && piece.diffs.empty())
        fail(piece.at, "expected a form term, found '" + piece.at.text + "'");
      pieces.push_back(std::move(piece));
      if (is_punct(peek(), "+") || is_punct(peek(), "-")) {
        sign = next().text == "-" ? -1 : 1;
        continue;
      }
      break;
    }

    int literal_degree = static_cast<int>(pieces.front().diffs.size());
    for (const auto& piece : pieces)
      if (static_cast<int>(piece.diffs.size()) != literal_degree)
        fail(piece.at, "mixed degrees in one form literal", ErrorKind::dimension);
    if (degree >= 0 && literal_degree != degree)
      fail(pieces.front().at, "form literal degree does not match the expected degree",
           ErrorKind::dimension);

    Form out(chart, literal_degree);
    for (const auto& piece : pieces) {
      auto sorted = MultiIndex::from_unsorted(piece.diffs);
      if (!sorted) continue;  // repeated differential: the term is zero
      Expr coeff = piece.sign * sorted->second < 0 ? -piece.coefficient : piece.coefficient;
      out.add_term(sorted->first, coeff);
    }
    return out;
  }
};

// --- printing ---

std::string expr_text(const Expr& e, const ChartPtr& chart) {
  return to_string(e, chart.get());
}

std::string form_text(const Form& f) {
  if (f.empty() && f.degree() > 0) return "zero(" + std::to_string(f.degree()) + ")";
  return f.to_string();
}

bool is_euclidean(const Metric& m) {
  if (!m.is_diagonal()) return false;
  for (int i = 0; i < m.dimension(); ++i) {
    auto c = as_rational(m.entry(i, i));
    if (!c || *c != 1) return false;
  }
  return true;
}

}  // namespace

const Form* Document::find_form(const std::string& name) const {
  for (const auto& [n, v] : forms)
    if (n == name) return &v;
  return nullptr;
}
const Pseudostructure* Document::find_pseudostructure(const std::string& name) const {
  for (const auto& [n, v] : pseudostructures)
    if (n == name) return &v;
  return nullptr;
}
const Connection* Document::find_connection(const std::string& name) const {
  for (const auto& [n, v] : connections)
    if (n == name) return &v;
  return nullptr;
}
const Metric* Document::find_metric(const std::string& name) const {
  for (const auto& [n, v] : metrics)
    if (n == name) return &v;
  return nullptr;
}
const RelationDecl* Document::find_relation(const std::string& name) const {
  for (const auto& r : relations)
    if (r.name == name) return &r;
  return nullptr;
}
const CanonicalDecl* Document::find_canonical(const std::string& name) const {
  for (const auto& c : canonicals)
    if (c.name == name) return &c;
  return nullptr;
}
const BalanceDecl* Document::find_balance(const std::string& name) const {
  for (const auto& b : balances)
    if (b.name == name) return &b;
  return nullptr;
}

Document parse_document(const std::string& text) {
  return Parser(tokenize(text)).parse();
}

std::string print_document(const Document& document) {
  std::ostringstream out;
  if (document.chart) {
    out << "chart ";
    const auto& names = document.chart->names();
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
    out << ";\n";
  }
  for (const auto& [name, form] : document.forms)
    out << "form " << name << " = " << form_text(form) << ";\n";
  for (const auto& [name, pi] : document.pseudostructures) {
    out << "pseudostructure " << name << " = { ";
    bool first = true;
    for (const auto& [var, value] : pi.constraints()) {
      if (!first) out << ", ";
      first = false;
      out << pi.chart()->name(var) << " = " << expr_text(value, pi.chart());
    }
    out << (pi.constraints().empty() ? "};\n" : " };\n");
  }
  for (const auto& [name, conn] : document.connections) {
    out << "connection " << name << " {";
    for (const auto& [key, value] : conn.entries())
      out << " G[" << key.sigma + 1 << "][" << key.alpha + 1 << "][" << key.beta + 1
          << "] = " << expr_text(value, conn.chart()) << ";";
    out << " }\n";
  }
  for (const auto& [name, metric] : document.metrics) {
    out << "metric " << name << " = ";
    if (is_euclidean(metric)) {
      out << "euclidean;\n";
    } else if (metric.is_diagonal()) {
      out << "diagonal(";
      for (int i = 0; i < metric.dimension(); ++i)
        out << (i ? ", " : "") << expr_text(metric.entry(i, i), metric.chart());
      out << ");\n";
    } else {
      out << "matrix [";
      for (int i = 0; i < metric.dimension(); ++i) {
        out << (i ? ", [" : "[");
        for (int j = 0; j < metric.dimension(); ++j)
          out << (j ? ", " : "") << expr_text(metric.entry(i, j), metric.chart());
        out << "]";
      }
      out << "];\n";
    }
  }
  for (const auto& r : document.relations)
    out << "relation " << r.name << ": d(" << (r.lhs ? *r.lhs : "_") << ") = " << r.rhs << ";\n";
  for (const auto& c : document.canonicals) {
    out << "canonical " << c.name << ": (";
    for (std::size_t i = 0; i < c.split.size(); ++i) out << (i ? ", " : "") << c.split[i];
    out << ") -> (";
    const std::size_t m = c.map.Q.size();
    for (std::size_t i = 0; i < c.target_names.size(); ++i) {
      const Expr& value = i < m ? c.map.Q[i] : c.map.P[i - m];
      out << (i ? ", " : "") << c.target_names[i] << " = " << expr_text(value, document.chart);
    }
    out << ");\n";
  }
  for (const auto& b : document.balances) {
    out << "balance " << b.name << " {";
    if (!document.chart || !same_chart(b.chart, document.chart))
      out << " xi " << b.chart->dimension() << ";";
    for (std::size_t mu = 0; mu < b.actions.size(); ++mu)
      out << " A[" << mu + 1 << "] = " << expr_text(b.actions[mu], b.chart) << ";";
    if (b.degree != 1) out << " degree " << b.degree << ";";
    if (b.connection) out << " connection " << *b.connection << ";";
    if (b.omega) out << " omega " << *b.omega << ";";
    out << " }\n";
  }
  return out.str();
}

namespace {

bool same_expr_list(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_tree(a[i], b[i])) return false;
  return true;
}

bool same_pseudostructure(const Pseudostructure& a, const Pseudostructure& b) {
  if (!same_chart(a.chart(), b.chart())) return false;
  if (a.constraints().size() != b.constraints().size()) return false;
  auto ia = a.constraints().begin();
  for (const auto& [var, value] : b.constraints()) {
    if (ia->first != var || !same_tree(ia->second, value)) return false;
    ++ia;
  }
  return true;
}

bool same_connection(const Connection& a, const Connection& b) {
  if (!same_chart(a.chart(), b.chart())) return false;
  if (a.entries().size() != b.entries().size()) return false;
  auto ia = a.entries().begin();
  for (const auto& [key, value] : b.entries()) {
    if (ia->first.sigma != key.sigma || ia->first.alpha != key.alpha ||
        ia->first.beta != key.beta || !same_tree(ia->second, value))
      return false;
    ++ia;
  }
  return true;
}

bool same_metric(const Metric& a, const Metric& b) {
  if (!same_chart(a.chart(), b.chart())) return false;
  for (int i = 0; i < a.dimension(); ++i)
    for (int j = 0; j < a.dimension(); ++j)
      if (!same_tree(a.entry(i, j), b.entry(i, j))) return false;
  return true;
}

}  // namespace

bool same_document(const Document& a, const Document& b) {
  if (static_cast<bool>(a.chart) != static_cast<bool>(b.chart)) return false;
  if (a.chart && !same_chart(a.chart, b.chart)) return false;

  if (a.forms.size() != b.forms.size()) return false;
  for (std::size_t i = 0; i < a.forms.size(); ++i)
    if (a.forms[i].first != b.forms[i].first || !same_form(a.forms[i].second, b.forms[i].second))
      return false;

  if (a.pseudostructures.size() != b.pseudostructures.size()) return false;
  for (std::size_t i = 0; i < a.pseudostructures.size(); ++i)
    if (a.pseudostructures[i].first != b.pseudostructures[i].first ||
        !same_pseudostructure(a.pseudostructures[i].second, b.pseudostructures[i].second))
      return false;

  if (a.connections.size() != b.connections.size()) return false;
  for (std::size_t i = 0; i < a.connections.size(); ++i)
    if (a.connections[i].first != b.connections[i].first ||
        !same_connection(a.connections[i].second, b.connections[i].second))
      return false;

  if (a.metrics.size() != b.metrics.size()) return false;
  for (std::size_t i = 0; i < a.metrics.size(); ++i)
    if (a.metrics[i].first != b.metrics[i].first ||
        !same_metric(a.metrics[i].second, b.metrics[i].second))
      return false;

  if (a.relations.size() != b.relations.size()) return false;
  for (std::size_t i = 0; i < a.relations.size(); ++i) {
    const auto& ra = a.relations[i];
    const auto& rb = b.relations[i];
    if (ra.name != rb.name || ra.lhs != rb.lhs || ra.rhs != rb.rhs) return false;
  }

  if (a.canonicals.size() != b.canonicals.size()) return false;
  for (std::size_t i = 0; i < a.canonicals.size(); ++i) {
    const auto& ca = a.canonicals[i];
    const auto& cb = b.canonicals[i];
    if (ca.name != cb.name || ca.split != cb.split || ca.target_names != cb.target_names ||
        !same_expr_list(ca.map.Q, cb.map.Q) || !same_expr_list(ca.map.P, cb.map.P))
      return false;
  }

  if (a.balances.size() != b.balances.size()) return false;
  for (std::size_t i = 0; i < a.balances.size(); ++i) {
    const auto& ba = a.balances[i];
    const auto& bb = b.balances[i];
    if (ba.name != bb.name || !same_chart(ba.chart, bb.chart) ||
        !same_expr_list(ba.actions, bb.actions) || ba.degree != bb.degree ||
        ba.connection != bb.connection || ba.omega != bb.omega)
      return false;
  }
  return true;
}

Expr parse_expression(const std::string& text, const ChartPtr& chart) {
  if (!chart) throw Error(ErrorKind::chart, "expression parsing requires a chart");
  return Parser(tokenize(text)).expression_only(chart);
}

Form parse_form(const std::string& text, int degree, const ChartPtr& chart) {
  if (!chart) throw Error(ErrorKind::chart, "form parsing requires a chart");
  return Parser(tokenize(text)).form_only(degree < 0 ? -1 : degree, chart);
}

}  // namespace exoform
