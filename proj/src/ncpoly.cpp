#include "qlab/ncpoly.hpp"

#include <algorithm>

#include "qlab/error.hpp"

namespace qlab {

NCPolynomial NCPolynomial::constant(ExactComplex c) { return word({}, std::move(c)); }

NCPolynomial NCPolynomial::X(int i) {
  if (i < 1) throw ContractError("NCPolynomial::X: indices start at 1");
  return word({Generator{Generator::Kind::X, i}});
}

NCPolynomial NCPolynomial::P(int i) {
  if (i < 1) throw ContractError("NCPolynomial::P: indices start at 1");
  return word({Generator{Generator::Kind::P, i}});
}

NCPolynomial NCPolynomial::word(Word w, ExactComplex c) {
  NCPolynomial out;
  out.add_term(w, c);
  return out;
}

bool NCPolynomial::x_only() const {
  for (const auto& [w, c] : terms_) {
    for (const auto& g : w) {
      if (g.kind == Generator::Kind::P) return false;
    }
  }
  return true;
}

int NCPolynomial::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

void NCPolynomial::add_term(const Word& w, const ExactComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPolynomial operator-(const NCPolynomial& a) {
  NCPolynomial out;
  for (const auto& [w, c] : a.terms_) out.add_term(w, -c);
  return out;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

NCPolynomial operator*(const ExactComplex& c, const NCPolynomial& a) {
  NCPolynomial out;
  for (const auto& [w, v] : a.terms_) out.add_term(w, c * v);
  return out;
}

std::string NCPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string coeff;
    bool negative = false;
    if (c.is_real()) {
      negative = c.re() < 0;
      const Rational mag = negative ? Rational(-c.re()) : c.re();
      if (!(mag == 1) || w.empty()) coeff = mag.str();
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body = coeff;
    for (const auto& g : w) {
      if (!body.empty()) body += " ";
      body += (g.kind == Generator::Kind::X ? "X" : "P") + std::to_string(g.index);
    }
    out += body;
  }
  return out;
}

bool is_normal_word(const Word& w) { return std::is_sorted(w.begin(), w.end()); }

namespace {

// Positions j with w[j] > w[j+1]; each is a redex of exactly one rule.
std::vector<std::size_t> descents(const Word& w) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) {
    if (w[j + 1] < w[j]) out.push_back(j);
  }
  return out;
}

}  // namespace

NCPolynomial nc_normal_form(const NCPolynomial& e, RewriteOrder order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  NCPolynomial result;
  std::map<Word, ExactComplex> pending = e.terms();
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const ExactComplex c = node.mapped();
    const auto redexes = descents(w);
    if (redexes.empty()) {
      result.add_term(w, c);
      continue;
    }
    std::size_t j = redexes.front();
    if (order == RewriteOrder::Rightmost) {
      j = redexes.back();
    } else if (order == RewriteOrder::Random) {
      j = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(rng)];
    }
    const Generator left = w[j];
    const Generator right = w[j + 1];

    auto push = [&pending](Word word, const ExactComplex& coeff) {
      auto [it, inserted] = pending.try_emplace(std::move(word), coeff);
      if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) pending.erase(it);
      }
    };

    Word swapped = w;
    std::swap(swapped[j], swapped[j + 1]);
    push(std::move(swapped), c);
    // P_j X_i = X_i P_j - delta_ij
    if (left.kind == Generator::Kind::P && right.kind == Generator::Kind::X && left.index == right.index) {
      Word contracted;
      contracted.reserve(w.size() - 2);
      contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
      contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(j) + 2, w.end());
      push(std::move(contracted), -c);
    }
  }
  return result;
}

NCPolynomial nc_commutator(const NCPolynomial& a, const NCPolynomial& b) { return nc_normal_form(a * b - b * a); }

NCPolynomial partial_x(const NCPolynomial& f, int i) { return nc_commutator(f, NCPolynomial::P(i)); }

NCPolynomial partial_p(const NCPolynomial& f, int i) { return nc_commutator(NCPolynomial::X(i), f); }

namespace {

NCPolynomial formal_partial(const NCPolynomial& f, Generator target) {
  NCPolynomial out;
  const NCPolynomial normal = nc_normal_form(f);
  for (const auto& [w, c] : normal.terms()) {
    const auto count = std::count(w.begin(), w.end(), target);
    if (count == 0) continue;
    Word reduced = w;
    reduced.erase(std::find(reduced.begin(), reduced.end(), target));
    out.add_term(reduced, ExactComplex(Rational(count)) * c);
  }
  return out;
}

}  // namespace

NCPolynomial formal_partial_x(const NCPolynomial& f, int i) {
  return formal_partial(f, Generator{Generator::Kind::X, i});
}

NCPolynomial formal_partial_p(const NCPolynomial& f, int i) {
  return formal_partial(f, Generator{Generator::Kind::P, i});
}

NCPolynomial random_nc_polynomial(std::mt19937_64& rng, int dims, int max_degree, int terms, bool x_only) {
  std::uniform_int_distribution<int> len_dist(0, max_degree);
  std::uniform_int_distribution<int> idx_dist(1, dims);
  std::uniform_int_distribution<int> kind_dist(0, x_only ? 0 : 1);
  std::uniform_int_distribution<int> num_dist(-5, 5);
  std::uniform_int_distribution<int> den_dist(1, 4);
  NCPolynomial out;
  for (int t = 0; t < terms; ++t) {
    Word w(static_cast<std::size_t>(len_dist(rng)));
    for (auto& g : w) {
      g.kind = kind_dist(rng) == 0 ? Generator::Kind::X : Generator::Kind::P;
      g.index = idx_dist(rng);
    }
    const int num = num_dist(rng);
    const int den = den_dist(rng);
    out.add_term(w, ExactComplex(Rational(num, den)));
  }
  return out;
}

}  // namespace qlab
