#include "exoform/form.hpp"

#include <algorithm>

#include "exoform/error.hpp"
#include "poly.hpp"

namespace exoform {

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) throw Error(ErrorKind::dimension, "negative index in multi-index");
    if (i > 0 && indices_[i - 1] >= indices_[i])
      throw Error(ErrorKind::dimension, "multi-index is not strictly increasing");
  }
}

std::optional<std::pair<MultiIndex, int>> MultiIndex::from_unsorted(std::vector<int> indices) {
  int sign = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && indices[j - 1] > indices[j]) {
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
      --j;
    }
  }
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i - 1] == indices[i]) return std::nullopt;
  return std::make_pair(MultiIndex(std::move(indices)), sign);
}

bool MultiIndex::contains(int var) const {
  return std::binary_search(indices_.begin(), indices_.end(), var);
}

MultiIndex MultiIndex::complement(int dimension) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(dimension) - indices_.size());
  for (int v = 0; v < dimension; ++v)
    if (!contains(v)) out.push_back(v);
  return MultiIndex(std::move(out));
}

int MultiIndex::complement_sign(int dimension) const {
  // Sign of the permutation (I, I^c) of (0..n-1): count inversions, i.e.
  // pairs i in I, j in I^c with i > j. Entries above max(I) contribute no
  // inversion, so the count does not depend on the dimension.
  (void)dimension;
  long long inversions = 0;
  for (int i : indices_) {
    long long smaller_outside = 0;
    for (int j = 0; j < i; ++j)
      if (!contains(j)) ++smaller_outside;
    inversions += smaller_outside;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

MultiIndex MultiIndex::erased(int position) const {
  std::vector<int> out = indices_;
  out.erase(out.begin() + position);
  return MultiIndex(std::move(out));
}

bool MultiIndex::operator<(const MultiIndex& other) const {
  if (indices_.size() != other.indices_.size()) return indices_.size() < other.indices_.size();
  return indices_ < other.indices_;
}

std::optional<std::pair<MultiIndex, int>> merge_indices(const MultiIndex& a, const MultiIndex& b) {
  std::vector<int> out;
  out.reserve(a.indices().size() + b.indices().size());
  int sign = 1;
  std::size_t i = 0, j = 0;
  const auto& ia = a.indices();
  const auto& ib = b.indices();
  while (i < ia.size() && j < ib.size()) {
    if (ia[i] == ib[j]) return std::nullopt;
    if (ia[i] < ib[j]) {
      out.push_back(ia[i++]);
    } else {
      // b[j] moves past the remaining entries of a.
      if ((ia.size() - i) % 2 != 0) sign = -sign;
      out.push_back(ib[j++]);
    }
  }
  for (; i < ia.size(); ++i) out.push_back(ia[i]);
  for (; j < ib.size(); ++j) out.push_back(ib[j]);
  return std::make_pair(MultiIndex(std::move(out)), sign);
}

// ---------------------------------------------------------------------------
// Form

Form::Form(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (!chart_) throw Error(ErrorKind::chart, "form requires a chart");
  if (degree_ < 0) throw Error(ErrorKind::degree, "negative form degree");
}

Form Form::zero(ChartPtr chart, int degree) { return Form(std::move(chart), degree); }

Expr Form::coefficient(const MultiIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Expr() : it->second;
}

void Form::add_term(const MultiIndex& index, const Expr& coefficient) {
  if (index.degree() != degree_)
    throw Error(ErrorKind::degree, "multi-index degree does not match the form degree");
  if (!index.indices().empty() && index.indices().back() >= dimension())
    throw Error(ErrorKind::dimension, "multi-index outside the chart");
  if (max_variable(coefficient) >= dimension())
    throw Error(ErrorKind::chart, "coefficient references a variable off the chart");
  auto it = terms_.find(index);
  Expr next = it == terms_.end() ? simplify(coefficient) : simplify(it->second + coefficient);
  // Drop coefficients that are exactly zero; probable zeros must stay.
  bool drop = false;
  if (auto c = as_rational(next)) {
    drop = *c == 0;
  } else {
    ZeroVerdict v = is_zero(next);
    drop = v.is_zero_exact();
  }
  if (drop) {
    if (it != terms_.end()) terms_.erase(it);
    return;
  }
  if (it == terms_.end())
    terms_.emplace(index, std::move(next));
  else
    it->second = std::move(next);
}

void Form::set_coefficient(const MultiIndex& index, const Expr& coefficient) {
  terms_.erase(index);
  add_term(index, coefficient);
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [index, coeff] : terms_) {
    std::string body;
    for (std::size_t i = 0; i < index.indices().size(); ++i) {
      if (i) body += '^';
      body += 'd';
      body += chart_->name(index.indices()[i]);
    }
    std::string text;
    if (index.degree() == 0) {
      text = exoform::to_string(coeff, chart_.get());
    } else if (auto c = as_rational(coeff)) {
      if (*c == 1)
        text = body;
      else if (*c == -1)
        text = "-" + body;
      else
        text = exoform::to_string(coeff, chart_.get()) + " " + body;
    } else {
      std::string ct = exoform::to_string(coeff, chart_.get());
      if (coeff.kind() == NodeKind::sum) ct = "(" + ct + ")";
      text = ct + " " + body;
    }
    if (first) {
      out = text;
      first = false;
    } else if (!text.empty() && text[0] == '-') {
      out += " - " + text.substr(1);
    } else {
      out += " + " + text;
    }
  }
  return out;
}

Form operator+(const Form& a, const Form& b) {
  require_same_chart(a.chart(), b.chart(), "form addition");
  if (a.degree() != b.degree())
    throw Error(ErrorKind::degree, "cannot add forms of different degrees");
  Form out = a;
  for (const auto& [index, coeff] : b.terms()) out.add_term(index, coeff);
  return out;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator*(const Expr& scalar, const Form& form) {
  Form out(form.chart(), form.degree());
  for (const auto& [index, coeff] : form.terms()) out.add_term(index, scalar * coeff);
  return out;
}

Form operator-(const Form& form) {
  Form out(form.chart(), form.degree());
  for (const auto& [index, coeff] : form.terms()) out.add_term(index, -coeff);
  return out;
}

bool same_form(const Form& a, const Form& b) {
  if (!same_chart(a.chart(), b.chart()) || a.degree() != b.degree()) return false;
  if (a.terms().size() != b.terms().size()) return false;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return false;
    if (!same_tree(ia->second, ib->second)) return false;
  }
  return true;
}

ZeroVerdict form_is_zero(const Form& form, const ZeroTestOptions& options) {
  ZeroVerdict acc = ZeroVerdict::exact_zero();
  for (const auto& [index, coeff] : form.terms()) {
    (void)index;
    acc = combine_all_zero(acc, is_zero(coeff, options));
    if (acc.is_nonzero()) return acc;
  }
  return acc;
}

Form wedge(const Form& a, const Form& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  Form out(a.chart(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      auto merged = merge_indices(ia, ib);
      if (!merged) continue;
      Expr coeff = ca * cb;
      if (merged->second < 0) coeff = -coeff;
      out.add_term(merged->first, coeff);
    }
  }
  return out;
}

Form exterior_derivative(const Form& form) {
  Form out(form.chart(), form.degree() + 1);
  const int n = form.dimension();
  for (const auto& [index, coeff] : form.terms()) {
    for (int v = 0; v < n; ++v) {
      if (index.contains(v)) continue;
      Expr d = differentiate(coeff, v);
      if (auto c = as_rational(d); c && *c == 0) continue;
      auto merged = merge_indices(MultiIndex({v}), index);
      Expr signed_d = merged->second < 0 ? -d : d;
      out.add_term(merged->first, signed_d);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metric

static Expr det_expr(const std::vector<std::vector<Expr>>& m, std::vector<int> cols, int row) {
  if (cols.empty()) return Expr::integer(1);
  Expr acc;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<int> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) rest.push_back(cols[j]);
    Expr term = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(cols[k])] *
                det_expr(m, rest, row + 1);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Metric::Metric(ChartPtr chart, std::vector<std::vector<Expr>> entries)
    : chart_(std::move(chart)), entries_(std::move(entries)) {
  if (!chart_) throw Error(ErrorKind::chart, "metric requires a chart");
  const std::size_t n = static_cast<std::size_t>(chart_->dimension());
  if (entries_.size() != n)
    throw Error(ErrorKind::dimension, "metric table does not match the chart dimension");
  for (auto& row : entries_) {
    if (row.size() != n)
      throw Error(ErrorKind::dimension, "metric table is not square");
    for (auto& e : row) e = simplify(e);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!same_tree(entries_[i][j], entries_[j][i]))
        throw Error(ErrorKind::dimension, "metric table is not symmetric");

  diagonal_ = true;
  for (std::size_t i = 0; i < n && diagonal_; ++i)
    for (std::size_t j = 0; j < n && diagonal_; ++j) {
      if (i == j) continue;
      auto c = as_rational(entries_[i][j]);
      if (!c || *c != 0) diagonal_ = false;
    }

  std::vector<int> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = static_cast<int>(i);
  determinant_ = simplify(det_expr(entries_, cols, 0));

  // Nondegeneracy spot-check at (1, ..., 1).
  std::map<int, Expr> ones;
  for (std::size_t i = 0; i < n; ++i) ones[static_cast<int>(i)] = Expr::integer(1);
  Expr at_ones = substitute(determinant_, ones);
  if (auto c = as_rational(at_ones); c && *c == 0)
    throw Error(ErrorKind::unsupported_metric, "metric is degenerate at the spot-check point");
}

Metric Metric::euclidean(ChartPtr chart) {
  const int n = chart->dimension();
  std::vector<Expr> diag(static_cast<std::size_t>(n), Expr::integer(1));
  return diagonal(std::move(chart), std::move(diag));
}

Metric Metric::diagonal(ChartPtr chart, std::vector<Expr> diagonal_entries) {
  const std::size_t n = static_cast<std::size_t>(chart->dimension());
  if (diagonal_entries.size() != n)
    throw Error(ErrorKind::dimension, "diagonal metric needs one entry per variable");
  std::vector<std::vector<Expr>> table(n, std::vector<Expr>(n, Expr()));
  for (std::size_t i = 0; i < n; ++i) table[i][i] = diagonal_entries[i];
  return Metric(std::move(chart), std::move(table));
}

const Expr& Metric::entry(int i, int j) const {
  return entries_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

Rational Metric::diagonal_rational(int i) const {
  if (!diagonal_)
    throw Error(ErrorKind::unsupported_metric, "metric is not diagonal");
  auto c = as_rational(entry(i, i));
  if (!c)
    throw Error(ErrorKind::unsupported_metric, "metric entry is not a rational constant");
  if (*c == 0)
    throw Error(ErrorKind::unsupported_metric, "metric has a zero signature entry");
  return *c;
}

Rational Metric::inverse_entry(int i) const { return Rational(1) / diagonal_rational(i); }

static std::optional<Integer> exact_sqrt(const Integer& v) {
  if (v < 0) return std::nullopt;
  Integer r = boost::multiprecision::sqrt(v);
  if (r * r == v) return r;
  return std::nullopt;
}

Rational Metric::volume_factor() const {
  Rational det(1);
  for (int i = 0; i < dimension(); ++i) det *= diagonal_rational(i);
  if (det < 0) det = -det;
  Integer num = boost::multiprecision::numerator(det);
  Integer den = boost::multiprecision::denominator(det);
  auto sn = exact_sqrt(num);
  auto sd = exact_sqrt(den);
  if (!sn || !sd)
    throw Error(ErrorKind::unsupported_metric,
                "metric volume factor sqrt|det g| is not rational");
  return Rational(*sn, *sd);
}

Form hodge_star(const Form& form, const Metric& metric) {
  require_same_chart(form.chart(), metric.chart(), "hodge star");
  const int n = form.dimension();
  if (form.degree() > n)
    throw Error(ErrorKind::degree, "cannot star a form of degree above the dimension");
  const Rational vol = metric.volume_factor();
  Form out(form.chart(), n - form.degree());
  for (const auto& [index, coeff] : form.terms()) {
    Rational factor = vol;
    for (int i : index.indices()) factor *= metric.inverse_entry(i);
    if (index.complement_sign(n) < 0) factor = -factor;
    out.add_term(index.complement(n), Expr::constant(factor) * coeff);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pseudostructure and pullback

Pseudostructure::Pseudostructure(ChartPtr chart, std::map<int, Expr> constraints)
    : chart_(std::move(chart)), constraints_(std::move(constraints)) {
  if (!chart_) throw Error(ErrorKind::chart, "pseudostructure requires a chart");
  for (auto& [var, value] : constraints_) {
    if (var < 0 || var >= chart_->dimension())
      throw Error(ErrorKind::chart, "constrained variable outside the chart");
    value = simplify(value);
    if (max_variable(value) >= 0)
      throw Error(ErrorKind::chart,
                  "pseudostructure constraint value must be constant on the chart");
  }
  std::vector<std::string> names;
  for (int v = 0; v < chart_->dimension(); ++v) {
    if (constraints_.count(v)) continue;
    kept_.push_back(v);
    names.push_back(chart_->name(v));
  }
  induced_ = std::make_shared<Chart>(std::move(names));
}

int Pseudostructure::dimension() const {
  return chart_->dimension() - static_cast<int>(constraints_.size());
}

std::string Pseudostructure::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : constraints_) {
    if (!first) out += ", ";
    first = false;
    out += chart_->name(var) + " = " + exoform::to_string(value, chart_.get());
  }
  out += "}";
  return out;
}

static std::map<int, Expr> pullback_bindings(const Pseudostructure& pi) {
  std::map<int, Expr> bindings;
  for (const auto& [var, value] : pi.constraints()) bindings[var] = value;
  const auto& kept = pi.kept_variables();
  for (std::size_t pos = 0; pos < kept.size(); ++pos)
    bindings[kept[pos]] = Expr::variable(static_cast<int>(pos));
  return bindings;
}

Expr pullback_to(const Expr& e, const Pseudostructure& pi) {
  return substitute(e, pullback_bindings(pi));
}

Form pullback_to(const Form& form, const Pseudostructure& pi) {
  require_same_chart(form.chart(), pi.chart(), "pullback");
  Form out(pi.induced_chart(), form.degree());
  const auto bindings = pullback_bindings(pi);
  const auto& kept = pi.kept_variables();
  for (const auto& [index, coeff] : form.terms()) {
    bool dropped = false;
    std::vector<int> mapped;
    mapped.reserve(index.indices().size());
    for (int i : index.indices()) {
      if (pi.constrains(i)) {
        dropped = true;
        break;
      }
      auto pos = std::lower_bound(kept.begin(), kept.end(), i);
      mapped.push_back(static_cast<int>(pos - kept.begin()));
    }
    if (dropped) continue;
    out.add_term(MultiIndex(std::move(mapped)), substitute(coeff, bindings));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homotopy antiderivative (Poincare lemma, star-shaped at the origin)

Form homotopy_antiderivative(const Form& form) {
  const int p = form.degree();
  if (p < 1)
    throw Error(ErrorKind::degree, "antiderivative needs a form of degree at least 1");
  for (const auto& [index, coeff] : form.terms()) {
    (void)index;
    if (!detail::polynomial_in_variables(detail::normalize(coeff)))
      throw Error(ErrorKind::unsupported_integrand,
                  "antiderivative needs polynomial coefficients");
  }
  if (!exterior_derivative(form).empty())
    throw Error(ErrorKind::not_closed, "form is not closed");

  // For a monomial coefficient mu of chart-degree d on the index I:
  //   K(mu dx^I) = sum_m (-1)^(m-1) x^{i_m} mu / (p + d)  dx^{I \ i_m}.
  Form out(form.chart(), p - 1);
  for (const auto& [index, coeff] : form.terms()) {
    detail::Poly poly = detail::normalize(coeff);
    // Split into chart-degree-homogeneous parts.
    std::map<long long, detail::Poly> parts;
    for (const auto& [mono, c] : poly.terms)
      parts[detail::variable_grade(mono)].terms.emplace(mono, c);
    for (int posn = 0; posn < p; ++posn) {
      const int xi = index.at(posn);
      for (const auto& [d, part] : parts) {
        detail::Poly scaled = detail::mul_scalar(part, Rational(1) / Rational(p + d));
        detail::Poly with_x = detail::mul(
            scaled, detail::poly_atom(std::make_shared<detail::Atom>(detail::Atom::variable(xi))));
        Expr term = detail::render(with_x);
        if (posn % 2 != 0) term = -term;
        out.add_term(index.erased(posn), term);
      }
    }
  }
  return out;
}

}  // namespace exoform
