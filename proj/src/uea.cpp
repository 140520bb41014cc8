#include "poisson/uea.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace poisson {
namespace {

std::size_t first_nonzero(const Monomial& m) {
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] != 0) return i;
  }
  return m.nvars();
}

// y_i * y^beta for a pure y-monomial.
UEAElement y_times_y_monomial(const PoissonStructure& P, std::size_t i, const Monomial& beta) {
  const std::size_t n = P.nvars();
  const std::size_t k = first_nonzero(beta);
  if (k >= i) {
    Monomial b = beta;
    b[i] += 1;
    return UEAElement::term(Monomial(n), b, 1);
  }
  // y_i y_k y^rest = y_k (y_i y^rest) + [y_i, y_k] y^rest,
  // [y_i, y_k] = H_{pi(i,k)} = sum_m (d pi(i,k)/dx_m) y_m.
  Monomial rest = beta;
  rest[k] -= 1;
  UEAElement out = left_multiply(P, Letter::Y(static_cast<std::uint32_t>(k)),
                                 y_times_y_monomial(P, i, rest));
  for (std::size_t m = 0; m < n; ++m) {
    const Polynomial& a = P.dpi(i, k, m);
    if (a.is_zero()) continue;
    out += a * y_times_y_monomial(P, m, rest);
  }
  return out;
}

bool letter_before(const Letter& a, const Letter& b) {
  if (a.kind != b.kind) return a.kind == Letter::Kind::x;
  return a.index <= b.index;
}

// Position p such that (w[p], w[p+1]) is out of order, or npos.
std::size_t reducible_position(const Word& w, RewriteStrategy strategy) {
  if (w.size() < 2) return Word::size_type(-1);
  if (strategy == RewriteStrategy::leftmost) {
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (!letter_before(w[p], w[p + 1])) return p;
    }
  } else {
    for (std::size_t p = w.size() - 1; p-- > 0;) {
      if (!letter_before(w[p], w[p + 1])) return p;
    }
  }
  return Word::size_type(-1);
}

Word splice(const Word& w, std::size_t pos, const Word& middle) {
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), middle.begin(), middle.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end());
  return out;
}

Word x_letters(const Monomial& m) {
  Word out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    for (Exponent e = 0; e < m[i]; ++e) out.push_back(Letter::X(static_cast<std::uint32_t>(i)));
  }
  return out;
}

// Pending words ordered so that each word is rewritten only after every word
// that can produce it: the rules lower either the number of y letters or,
// keeping it, the number of out-of-order pairs. Largest key is processed first.
struct PendingKey {
  std::size_t y_count = 0;
  std::size_t inversions = 0;
  Word word;
  friend auto operator<=>(const PendingKey&, const PendingKey&) = default;
};

PendingKey pending_key(Word w) {
  PendingKey k;
  for (std::size_t a = 0; a < w.size(); ++a) {
    k.y_count += w[a].kind == Letter::Kind::y;
    for (std::size_t b = a + 1; b < w.size(); ++b) k.inversions += !letter_before(w[a], w[b]);
  }
  k.word = std::move(w);
  return k;
}

using PendingPool = std::map<PendingKey, Rational, std::greater<>>;

void accumulate(PendingPool& pool, Word w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = pool.try_emplace(pending_key(std::move(w)), c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) pool.erase(it);
  }
}

std::string uea_term(const Monomial& a, const Monomial& b, const Rational& mag,
                     std::span<const std::string> vars) {
  std::ostringstream out;
  bool need_star = false;
  if ((a.is_one() && b.is_one()) || mag != 1) {
    out << mag.get_str();
    need_star = true;
  }
  auto emit = [&](const Monomial& m, const std::string& prefix) {
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) out << '*';
      out << prefix << vars[i];
      if (m[i] > 1) out << '^' << m[i];
      need_star = true;
    }
  };
  emit(a, "");
  emit(b, "h_");
  return out.str();
}

}  // namespace

Word parse_word(std::string_view text, std::span<const std::string> vars) {
  Word w;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (text.substr(pos) == "1") return w;
  while (skip(), pos < text.size()) {
    const char head = text[pos];
    if (head != 'M' && head != 'H') {
      throw ParseError("expected 'M(' or 'H('", pos);
    }
    ++pos;
    skip();
    if (pos >= text.size() || text[pos] != '(') throw ParseError("expected '('", pos);
    ++pos;
    skip();
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    const std::string_view name = text.substr(start, pos - start);
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw ParseError("unknown variable '" + std::string(name) + "'", start);
    skip();
    if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
    ++pos;
    const auto idx = static_cast<std::uint32_t>(it - vars.begin());
    w.push_back(head == 'M' ? Letter::X(idx) : Letter::Y(idx));
  }
  return w;
}

UEAElement UEAElement::one(std::size_t nvars) {
  return term(Monomial(nvars), Monomial(nvars), 1);
}

UEAElement UEAElement::from_polynomial(const Polynomial& f) {
  UEAElement u(f.nvars());
  for (const auto& [m, c] : f.terms()) u.add_term(m, Monomial(f.nvars()), c);
  return u;
}

UEAElement UEAElement::y(std::size_t nvars, std::size_t i) {
  return term(Monomial(nvars), Monomial::unit(nvars, i), 1);
}

UEAElement UEAElement::term(const Monomial& alpha, const Monomial& beta, const Rational& c) {
  UEAElement u(alpha.nvars());
  u.add_term(alpha, beta, c);
  return u;
}

std::uint64_t UEAElement::y_degree() const {
  std::uint64_t d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.second.total_degree());
  return d;
}

Polynomial UEAElement::x_part() const {
  Polynomial f(nvars_);
  for (const auto& [key, c] : terms_) {
    if (key.second.is_one()) f.add_term(key.first, c);
  }
  return f;
}

void UEAElement::add_term(const Monomial& alpha, const Monomial& beta, const Rational& raw) {
  Rational scratch;
  const Rational& c = canonical(raw, scratch);
  if (alpha.nvars() != nvars_ || beta.nvars() != nvars_) {
    throw std::invalid_argument("enveloping algebra context mismatch");
  }
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace({alpha, beta}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

UEAElement& UEAElement::operator+=(const UEAElement& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("enveloping algebra context mismatch");
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, c);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("enveloping algebra context mismatch");
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, -c);
  return *this;
}

UEAElement& UEAElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  Rational scratch;
  const Rational& k = canonical(c, scratch);
  for (auto& [key, coeff] : terms_) coeff *= k;
  return *this;
}

UEAElement operator*(const Polynomial& f, const UEAElement& u) {
  if (f.nvars() != u.nvars_) throw std::invalid_argument("enveloping algebra context mismatch");
  UEAElement out(u.nvars_);
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [key, d] : u.terms_) out.add_term(key.first * m, key.second, c * d);
  }
  return out;
}

std::string to_string(const UEAElement& u, std::span<const std::string> vars) {
  if (vars.size() != u.nvars()) throw std::invalid_argument("variable name count mismatch");
  if (u.is_zero()) return "0";
  std::vector<std::pair<const UEAElement::Key*, const Rational*>> order;
  for (const auto& [key, c] : u.terms()) order.emplace_back(&key, &c);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    const auto& [aa, ab] = *a.first;
    const auto& [ba, bb] = *b.first;
    const auto da = aa.total_degree() + ab.total_degree();
    const auto db = ba.total_degree() + bb.total_degree();
    if (da != db) return da > db;
    if (ab != bb) return GrlexGreater{}(ab, bb);
    return GrlexGreater{}(aa, ba);
  });
  std::string out;
  bool first = true;
  for (const auto& [key, c] : order) {
    const bool negative = sgn(*c) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += uea_term(key->first, key->second, abs(*c), vars);
  }
  return out;
}

UEAElement left_multiply(const PoissonStructure& P, Letter letter, const UEAElement& u) {
  const std::size_t n = P.nvars();
  if (u.nvars() != n || letter.index >= n) {
    throw std::invalid_argument("enveloping algebra context mismatch");
  }
  UEAElement out(n);
  if (letter.kind == Letter::Kind::x) {
    const Monomial e = Monomial::unit(n, letter.index);
    for (const auto& [key, c] : u.terms()) out.add_term(key.first * e, key.second, c);
    return out;
  }
  // y_i x^alpha y^beta = x^alpha (y_i y^beta) + {x_i, x^alpha} y^beta
  const std::size_t i = letter.index;
  for (const auto& [key, c] : u.terms()) {
    const auto& [alpha, beta] = key;
    const Polynomial xa = Polynomial::term(alpha, c);
    out += xa * y_times_y_monomial(P, i, beta);
    const Polynomial br = -bracket_with_generator(P, xa, i);
    for (const auto& [m, d] : br.terms()) out.add_term(m, beta, d);
  }
  return out;
}

UEAElement multiply(const PoissonStructure& P, const UEAElement& u, const UEAElement& v) {
  if (u.nvars() != P.nvars() || v.nvars() != P.nvars()) {
    throw std::invalid_argument("enveloping algebra context mismatch");
  }
  UEAElement out(P.nvars());
  for (const auto& [key, c] : u.terms()) {
    const Word w = to_word(key.first, key.second);
    UEAElement acc = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) acc = left_multiply(P, *it, acc);
    out += c * acc;
  }
  return out;
}

Word to_word(const Monomial& alpha, const Monomial& beta) {
  Word w = x_letters(alpha);
  for (std::size_t i = 0; i < beta.nvars(); ++i) {
    for (Exponent e = 0; e < beta[i]; ++e) w.push_back(Letter::Y(static_cast<std::uint32_t>(i)));
  }
  return w;
}

UEAElement normal_form(const PoissonStructure& P, const Word& w, RewriteStrategy strategy) {
  const std::size_t n = P.nvars();
  for (const auto& l : w) {
    if (l.index >= n) throw std::invalid_argument("word letter index out of range");
  }
  PendingPool pending;
  accumulate(pending, w, 1);
  UEAElement out(n);
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& cur = node.key().word;
    const Rational& c = node.mapped();
    const std::size_t p = reducible_position(cur, strategy);
    if (p == Word::size_type(-1)) {
      Monomial alpha(n), beta(n);
      for (const auto& l : cur) (l.kind == Letter::Kind::x ? alpha : beta)[l.index] += 1;
      out.add_term(alpha, beta, c);
      continue;
    }
    const Letter a = cur[p];
    const Letter b = cur[p + 1];
    if (a.kind == Letter::Kind::x) {
      // x_j x_i -> x_i x_j
      accumulate(pending, splice(cur, p, {b, a}), c);
    } else if (b.kind == Letter::Kind::x) {
      // y_i x_j -> x_j y_i + {x_i, x_j}
      accumulate(pending, splice(cur, p, {b, a}), c);
      for (const auto& [m, d] : P.pi(a.index, b.index).terms()) {
        accumulate(pending, splice(cur, p, x_letters(m)), c * d);
      }
    } else {
      // y_j y_i -> y_i y_j - sum_k (d{x_i, x_j}/dx_k) y_k, here j = a, i = b
      accumulate(pending, splice(cur, p, {b, a}), c);
      for (std::uint32_t k = 0; k < n; ++k) {
        for (const auto& [m, d] : P.dpi(b.index, a.index, k).terms()) {
          Word mid = x_letters(m);
          mid.push_back(Letter::Y(k));
          accumulate(pending, splice(cur, p, mid), -c * d);
        }
      }
    }
  }
  return out;
}

std::string RelationWitness::describe(std::span<const std::string> vars) const {
  std::string rel = relation == Relation::y_x
                        ? "[H(" + vars[i] + "), M(" + vars[j] + ")] = M({" + vars[i] + "," + vars[j] + "})"
                        : "[H(" + vars[i] + "), H(" + vars[j] + ")] = H({" + vars[i] + "," + vars[j] + "})";
  return rel + " is not preserved; residual " + to_string(residual, vars);
}

UEAElement UEAAutomorphism::image_of_y(std::size_t i) const {
  return UEAElement::y(sigma_.nvars(), i) + UEAElement::from_polynomial(sigma_[i]);
}

UEAElement UEAAutomorphism::apply(const PoissonStructure& P, const UEAElement& u) const {
  const std::size_t n = P.nvars();
  UEAElement out(n);
  for (const auto& [key, c] : u.terms()) {
    const auto& [alpha, beta] = key;
    UEAElement acc = UEAElement::one(n);
    for (std::size_t i = n; i-- > 0;) {
      for (Exponent e = 0; e < beta[i]; ++e) {
        acc = left_multiply(P, Letter::Y(static_cast<std::uint32_t>(i)), acc) + sigma_[i] * acc;
      }
    }
    out += Polynomial::term(alpha, c) * acc;
  }
  return out;
}

std::optional<RelationWitness> relation_witness(const PoissonStructure& P,
                                                const PDerivation& sigma) {
  const std::size_t n = P.nvars();
  if (sigma.nvars() != n) throw std::invalid_argument("derivation context mismatch");
  auto phi_y = [&](std::size_t i) {
    return UEAElement::y(n, i) + UEAElement::from_polynomial(sigma[i]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // phi(y_i) x_j - x_j phi(y_i) - {x_i, x_j}
      const UEAElement xj = UEAElement::from_polynomial(P.generator(j));
      UEAElement r = multiply(P, phi_y(i), xj) - multiply(P, xj, phi_y(i)) -
                     UEAElement::from_polynomial(P.pi(i, j));
      if (!r.is_zero()) return RelationWitness{RelationWitness::Relation::y_x, i, j, std::move(r)};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // phi(y_i) phi(y_j) - phi(y_j) phi(y_i) - sum_k (d pi(i,j)/dx_k) phi(y_k)
      UEAElement r = multiply(P, phi_y(i), phi_y(j)) - multiply(P, phi_y(j), phi_y(i));
      for (std::size_t k = 0; k < n; ++k) r -= P.dpi(i, j, k) * phi_y(k);
      if (!r.is_zero()) return RelationWitness{RelationWitness::Relation::y_y, i, j, std::move(r)};
    }
  }
  return std::nullopt;
}

UEAAutomorphism make_automorphism(const PoissonStructure& P, const PDerivation& sigma) {
  if (auto w = relation_witness(P, sigma)) {
    const std::string what = "not a Poisson derivation: " + w->describe(P.vars());
    throw AutomorphismError(std::move(*w), what);
  }
  return UEAAutomorphism(sigma);
}

NakayamaReport nakayama(const PoissonStructure& P) {
  const PDerivation delta = modular_derivation(P);
  UEAAutomorphism aut = make_automorphism(P, Rational(2) * delta);
  const bool identity = aut.is_identity();
  return {std::move(aut), identity, delta.is_zero()};
}

Polynomial ext_top_reduce(const PoissonStructure& P, const UEAElement& u) {
  return ext_top_reduce(P, modular_derivation(P), u);
}

Polynomial ext_top_reduce(const PoissonStructure& P, const PDerivation& delta,
                          const UEAElement& u) {
  const std::size_t n = P.nvars();
  if (u.nvars() != n || delta.nvars() != n) {
    throw std::invalid_argument("enveloping algebra context mismatch");
  }
  Polynomial result(n);
  UEAElement cur = u;
  while (!cur.is_zero()) {
    UEAElement next(n);
    for (const auto& [key, c] : cur.terms()) {
      const auto& [alpha, beta] = key;
      if (beta.is_one()) {
        result.add_term(alpha, c);
        continue;
      }
      // x^a y^b = y_i (x^a y^{b-e_i}) - {x_i, x^a} y^{b-e_i}, and y_i v = delta(x_i) v
      // modulo the image.
      const std::size_t i = first_nonzero(beta);
      Monomial rest = beta;
      rest[i] -= 1;
      const Polynomial xa = Polynomial::term(alpha, c);
      const Polynomial coeff = delta[i] * xa + bracket_with_generator(P, xa, i);
      for (const auto& [m, d] : coeff.terms()) next.add_term(m, rest, d);
    }
    cur = std::move(next);
  }
  return result;
}

ExtCheckResult ext_module_check(const PoissonStructure& P, const ExtCheckOptions& options) {
  const std::size_t n = P.nvars();
  const PDerivation delta = modular_derivation(P);
  Rng rng(options.seed);
  ExtCheckResult result;
  auto fail = [&](const std::string& msg) {
    result.pass = false;
    result.failure = msg;
    return result;
  };

  for (std::size_t t = 0; t < options.image_witnesses; ++t) {
    const UEAElement u = random_element(rng, n, options.max_degree, 2, options.coeff_bound);
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    const UEAElement gen = UEAElement::y(n, i) - UEAElement::from_polynomial(delta[i]);
    const Polynomial r = ext_top_reduce(P, delta, multiply(P, gen, u));
    ++result.image_checked;
    if (!r.is_zero()) {
      return fail("reduce((h_" + P.vars()[i] + " - delta(" + P.vars()[i] + ")) * (" +
                  to_string(u, P.vars()) + ")) = " + P.format(r) + ", expected 0");
    }
  }
  for (std::size_t t = 0; t < options.bracket_witnesses; ++t) {
    const Polynomial f = random_polynomial(rng, n, options.max_degree, options.coeff_bound);
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    const Polynomial got = ext_top_reduce(P, delta, multiply(P, UEAElement::from_polynomial(f),
                                                             UEAElement::y(n, j)));
    const Polynomial want = f * delta[j] + bracket_with_generator(P, f, j);
    ++result.bracket_checked;
    if (got != want) {
      return fail("reduce(f * h_" + P.vars()[j] + ") = " + P.format(got) + " but f*delta + {f," +
                  P.vars()[j] + "} = " + P.format(want) + " for f = " + P.format(f));
    }
    // The class of u * y_j must equal the twisted right action on the class of u.
    const UEAElement u = random_element(rng, n, options.max_degree, 2, options.coeff_bound);
    const Polynomial ru = ext_top_reduce(P, delta, u);
    const Polynomial lhs = ext_top_reduce(P, delta, multiply(P, u, UEAElement::y(n, j)));
    const Polynomial rhs = ru * delta[j] + bracket_with_generator(P, ru, j);
    ++result.action_checked;
    if (lhs != rhs) {
      return fail("right action of h_" + P.vars()[j] + " on the class of " +
                  to_string(u, P.vars()) + " is " + P.format(lhs) + ", expected " + P.format(rhs));
    }
  }
  return result;
}

Polynomial gr_leading(const UEAElement& u) {
  if (u.is_zero()) throw std::invalid_argument("gr_leading of zero");
  const std::size_t n = u.nvars();
  const auto top = u.y_degree();
  Polynomial out(2 * n);
  for (const auto& [key, c] : u.terms()) {
    if (key.second.total_degree() != top) continue;
    Monomial m(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = key.first[i];
      m[n + i] = key.second[i];
    }
    out.add_term(m, c);
  }
  return out;
}

UEAElement random_element(Rng& rng, std::size_t nvars, std::uint32_t max_x_degree,
                          std::uint32_t max_y_degree, std::int64_t coeff_bound,
                          std::size_t max_terms) {
  UEAElement u(nvars);
  const auto terms = rng.uniform(1, static_cast<std::int64_t>(max_terms));
  for (std::int64_t t = 0; t < terms; ++t) {
    Monomial a(nvars), b(nvars);
    const auto n = static_cast<std::int64_t>(nvars) - 1;
    for (auto d = rng.uniform(0, max_x_degree); d > 0; --d) a[static_cast<std::size_t>(rng.uniform(0, n))] += 1;
    for (auto d = rng.uniform(0, max_y_degree); d > 0; --d) b[static_cast<std::size_t>(rng.uniform(0, n))] += 1;
    u.add_term(a, b, Rational(rng.nonzero(coeff_bound)));
  }
  return u;
}

Word random_word(Rng& rng, std::size_t nvars, std::size_t max_length) {
  Word w;
  const auto len = rng.uniform(0, static_cast<std::int64_t>(max_length));
  for (std::int64_t t = 0; t < len; ++t) {
    const auto i = static_cast<std::uint32_t>(rng.uniform(0, static_cast<std::int64_t>(nvars) - 1));
    w.push_back(rng.coin() ? Letter::X(i) : Letter::Y(i));
  }
  return w;
}

}  // namespace poisson
