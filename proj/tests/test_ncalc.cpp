#include <doctest.h>

#include <cmath>

#include "qlab/error.hpp"
#include "qlab/jseries.hpp"
#include "qlab/ncalc.hpp"
#include "qlab/ncpoly.hpp"
#include "qlab/rng.hpp"

using namespace qlab;

using RSeries = TimeSeries<Rational>;
using RJ = JSeries<Rational>;

namespace {

RSeries series(const Rational& tau, int first, std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return RSeries(tau, first, out);
}

RSeries random_series(std::mt19937_64& rng, const Rational& tau, int first, int n) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Rational> v(static_cast<std::size_t>(n));
  for (auto& e : v) e = d(rng);
  return RSeries(tau, first, v);
}

NCPolynomial nf(const NCPolynomial& p) { return nc_normal_form(p); }

NCPolynomial c(long long n, long long d = 1) { return NCPolynomial::constant(ExactComplex(Rational(n, d))); }

const NCPolynomial X1 = NCPolynomial::X(1);
const NCPolynomial X2 = NCPolynomial::X(2);
const NCPolynomial P1 = NCPolynomial::P(1);
const NCPolynomial P2 = NCPolynomial::P(2);

}  // namespace

TEST_CASE("nabla_matrix") {
  auto rng = stream_for(41, 0);
  const ComplexMatrix n = random_matrix(rng, 4);
  CHECK(max_abs(nabla_matrix(ComplexMatrix::Identity(4, 4), n)) == 0.0);
  const ComplexMatrix d1 = ComplexMatrix(Eigen::VectorXcd::Random(4).asDiagonal());
  const ComplexMatrix d2 = ComplexMatrix(Eigen::VectorXcd::Random(4).asDiagonal());
  CHECK(max_abs(nabla_matrix(d1, d2)) == 0.0);
  for (int t = 0; t < 20; ++t) {
    auto r = stream_for(41, t + 1);
    const ComplexMatrix f = random_matrix(r, 4);
    const ComplexMatrix g = random_matrix(r, 4);
    const ComplexMatrix m = random_matrix(r, 4);
    const ComplexMatrix res = nabla_matrix(f * g, m) - nabla_matrix(f, m) * g - f * nabla_matrix(g, m);
    CHECK(max_abs(res) <= 1e-12 * scale_of(f) * scale_of(g) * scale_of(m));
  }
  CHECK_THROWS_AS(nabla_matrix(random_matrix(rng, 3), random_matrix(rng, 4)), ShapeError);
}

TEST_CASE("J-series product rule") {
  const Rational tau(1);
  const auto f = series(tau, 0, {1, 2, 3, 4});
  // f J = J f~
  const RJ fj = RJ(f) * RJ::monomial(1, series(tau, -5, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  const RJ jf = RJ::monomial(1, f.shifted(1));
  CHECK(fj == jf);

  // (J a)(J b) = J^2 (a shifted by one) b
  const auto a = series(tau, 0, {1, 2, 3});
  const auto b = series(tau, 0, {5, 7, 11});
  const RJ prod = RJ::monomial(1, a) * RJ::monomial(1, b);
  CHECK(prod.degree() == 2);
  CHECK(prod.coefficient(2) == series(tau, 0, {2 * 5, 3 * 7}));

  const auto g = series(tau, 0, {4, -1, 0, 2});
  CHECK((RJ(f) * RJ(g) - RJ(g) * RJ(f)).is_zero());
  CHECK_THROWS_AS(RJ::monomial(2, a) * RJ(series(tau, 10, {1, 2})), WindowError);
}

TEST_CASE("J-series associativity") {
  for (int t = 0; t < 50; ++t) {
    auto rng = stream_for(42, t);
    const Rational tau(1, 1 + t % 3);
    const RJ a = RJ::monomial(t % 2, random_series(rng, tau, 0, 12)) + RJ(random_series(rng, tau, 0, 12));
    const RJ b = RJ::monomial(1, random_series(rng, tau, 0, 12));
    const RJ c = RJ::monomial(2, random_series(rng, tau, 0, 12)) + RJ(random_series(rng, tau, 0, 12));
    CHECK((a * b) * c == a * (b * c));
  }
  for (int t = 0; t < 20; ++t) {
    auto rng = stream_for(43, t);
    std::vector<double> va(10), vb(10), vc(10);
    for (int i = 0; i < 10; ++i) {
      va[i] = gaussian(rng);
      vb[i] = gaussian(rng);
      vc[i] = gaussian(rng);
    }
    using DJ = JSeries<double>;
    const DJ a = DJ::monomial(1, TimeSeries<double>(0.1, 0, va));
    const DJ b = DJ(TimeSeries<double>(0.1, 0, vb)) + DJ::monomial(1, TimeSeries<double>(0.1, 0, vb));
    const DJ c = DJ::monomial(1, TimeSeries<double>(0.1, 0, vc));
    const DJ l = (a * b) * c;
    const DJ r = a * (b * c);
    for (const auto& [k, coeff] : l.terms()) {
      const auto& other = r.coefficient(k);
      REQUIRE(other.first_index() == coeff.first_index());
      for (int i = coeff.first_index(); i <= coeff.last_index(); ++i) {
        CHECK(std::abs(coeff.at(i) - other.at(i)) <= 1e-12 * (1.0 + std::abs(coeff.at(i))));
      }
    }
  }
}

TEST_CASE("discrete nabla") {
  const Rational tau(1);
  CHECK(discrete_nabla(series(tau, 0, {3, 3, 3})).is_zero());
  const RJ d = discrete_nabla(series(tau, 0, {0, 1, 2, 3}));
  CHECK(d == RJ::monomial(1, series(tau, 0, {1, 1, 1})));
  CHECK_THROWS_AS(discrete_nabla(series(tau, 0, {1})), WindowError);

  auto rng = stream_for(44, 0);
  const auto x = random_series(rng, Rational(1, 2), 0, 8);
  const auto y = random_series(rng, Rational(1, 2), 0, 8);
  const Rational a(3), b(-2, 7);
  const RJ lhs = discrete_nabla(scaled(x, a) + scaled(y, b));
  const RJ rhs = RJ::monomial(1, scaled(forward_diff(x), a) + scaled(forward_diff(y), b));
  CHECK(lhs == rhs);
}

TEST_CASE("restored Leibniz rule") {
  for (int t = 0; t < 200; ++t) {
    auto rng = stream_for(45, t);
    const Rational tau(1 + t % 4, 1 + t % 3);
    const auto f = random_series(rng, tau, t % 5 - 2, 6);
    const auto g = random_series(rng, tau, t % 5 - 2, 6);
    CHECK(jseries_leibniz_check(f, g).is_zero());
  }
  CHECK(jseries_leibniz_check(series(1, 0, {2, 2, 2}), series(1, 0, {5, 5, 5})).is_zero());
  CHECK_THROWS_AS(jseries_leibniz_check(series(1, 0, {1, 2, 3}), series(1, 1, {1, 2, 3})), WindowError);

  const auto f = series(1, 0, {1, 4, 9, 16});
  const auto g = series(1, 0, {2, 3, 5, 8});
  const auto d = plain_leibniz_defects(f, g);
  for (const auto& v : d.shifted_rule.values()) CHECK(v == 0);
  bool nonzero = false;
  for (const auto& v : d.naive_rule.values()) nonzero = nonzero || v != 0;
  CHECK(nonzero);
}

TEST_CASE("observation commutator") {
  CHECK(observation_commutator(series(1, 0, {4, 4, 4, 4})).is_zero());
  const RJ walk = observation_commutator(series(1, 0, {0, 2, 0, -2, -4, -2}));
  CHECK(walk == RJ::monomial(1, series(1, 0, {4, 4, 4, 4, 4})));
  CHECK(observation_commutator(series(1, 0, {0, 1, 3})) == RJ::monomial(1, series(1, 0, {1, 4})));
  for (int t = 0; t < 50; ++t) {
    auto rng = stream_for(46, t);
    const auto x = random_series(rng, Rational(2, 1 + t % 5), -3, 2 + t % 9);
    CHECK(observation_commutator(x) == squared_increment_series(x));
  }
}

TEST_CASE("brownian check") {
  const auto res = brownian_check(std::vector<int>{1, -1, -1, 1, 1, 1}, 2.0, 0.5);
  CHECK(res.pass);
  for (double k : res.observed_k) CHECK(std::abs(k - 2.0) <= 2e-12);
  CHECK(brownian_check(std::vector<int>{1, -1, 1, -1}, 1.0, 1.0).pass);

  const auto bad = brownian_check(TimeSeries<double>(1.0, 0, {0.0, 1.0, 3.0, 4.0}), 1.0);
  CHECK_FALSE(bad.pass);
  CHECK(bad.failing_ticks == std::vector<int>{1});
  CHECK_THROWS_AS(brownian_check(std::vector<int>{}, 1.0, 1.0), ContractError);

  for (int t = 0; t < 100; ++t) {
    auto rng = stream_for(47, t);
    const double k = uniform(rng, 0.1, 4.0);
    const double tau = uniform(rng, 0.01, 2.0);
    std::vector<int> signs(30);
    for (auto& s : signs) s = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
    const double delta = std::sqrt(k * tau);
    const auto r = brownian_check(signs, k, tau);
    CHECK(r.pass);
    for (double v : r.observed_k) CHECK(std::abs(v - delta * delta / tau) <= 1e-12 * k);
  }
}

TEST_CASE("heisenberg check") {
  auto rng = stream_for(48, 0);
  const ComplexMatrix h = random_hermitian(rng, 3);
  CHECK(heisenberg_check(ComplexMatrix::Identity(3, 3), h, 0.1, 1.0).value == 0.0);
  const ComplexMatrix psi = random_matrix(rng, 3);
  CHECK(heisenberg_check(psi, h, 0.1, 1.0).within(1e-12));
  CHECK(heisenberg_check(psi, ComplexMatrix::Zero(3, 3), 0.1, 1.0).value == 0.0);
  for (int t = 0; t < 100; ++t) {
    auto r = stream_for(48, t + 1);
    const int n = 1 + t % 8;
    CHECK(heisenberg_check(random_matrix(r, n), random_hermitian(r, n), uniform(r, 0.01, 1.0), uniform(r, 0.5, 2.0))
              .within(1e-12));
  }
}

TEST_CASE("normal form examples") {
  CHECK(nf(P1 * X1) == X1 * P1 - c(1));
  CHECK(nf(X1 * X2 - X2 * X1).is_zero());
  CHECK(nf(P1 * X1 * X1) == X1 * X1 * P1 - c(2) * X1);
  CHECK(nf(P2 * X1) == X1 * P2);
  CHECK(nf(P2 * P1) == P1 * P2);
  CHECK(nf(X1 * P1) == X1 * P1);
  CHECK(nc_commutator(X1, P1) == c(1));
}

TEST_CASE("normal form is idempotent and confluent") {
  for (int t = 0; t < 1000; ++t) {
    auto rng = stream_for(49, t);
    const NCPolynomial w = random_nc_polynomial(rng, 1 + t % 3, 4, 1, false);
    const NCPolynomial left = nc_normal_form(w, RewriteOrder::Leftmost);
    CHECK(nc_normal_form(w, RewriteOrder::Rightmost) == left);
    CHECK(nc_normal_form(w, RewriteOrder::Random, static_cast<std::uint64_t>(t)) == left);
    CHECK(nc_normal_form(left) == left);
    for (const auto& [word, coeff] : left.terms()) CHECK(is_normal_word(word));
  }
}

TEST_CASE("commutator Jacobi identity") {
  for (int t = 0; t < 50; ++t) {
    auto rng = stream_for(50, t);
    const auto a = random_nc_polynomial(rng, 2, 2, 3, false);
    const auto b = random_nc_polynomial(rng, 2, 2, 3, false);
    const auto d = random_nc_polynomial(rng, 2, 2, 3, false);
    const auto jac = nc_commutator(nc_commutator(a, b), d) + nc_commutator(nc_commutator(b, d), a) +
                     nc_commutator(nc_commutator(d, a), b);
    CHECK(nf(jac).is_zero());
  }
}

TEST_CASE("derivatives as commutators") {
  CHECK(partial_x(X1 * X1, 1) == c(2) * X1);
  CHECK(partial_x(X2, 1).is_zero());
  CHECK(partial_p(P1 * P2, 2) == P1);

  // every X-only monomial of degree <= 5 in two coordinates
  for (int deg = 0; deg <= 5; ++deg) {
    for (int mask = 0; mask < (1 << deg); ++mask) {
      NCPolynomial m = c(1);
      for (int k = 0; k < deg; ++k) m = m * ((mask >> k) & 1 ? X2 : X1);
      for (int i = 1; i <= 2; ++i) CHECK(partial_x(m, i) == formal_partial_x(m, i));
      NCPolynomial mp = c(1);
      for (int k = 0; k < deg; ++k) mp = mp * ((mask >> k) & 1 ? P2 : P1);
      for (int i = 1; i <= 2; ++i) CHECK(partial_p(mp, i) == formal_partial_p(mp, i));
    }
  }
}

TEST_CASE("Hamilton equations") {
  const auto kinetic = hamilton_check(c(1, 2) * P1 * P1, 1);
  CHECK(kinetic.dx_dt == P1);
  CHECK(kinetic.dp_dt.is_zero());
  CHECK(kinetic.x_equation);
  CHECK(kinetic.p_equation);

  const auto linear = hamilton_check(X1, 1);
  CHECK(linear.dx_dt.is_zero());
  CHECK(linear.dp_dt == c(-1));

  const auto constant = hamilton_check(c(7), 1);
  CHECK(constant.dx_dt.is_zero());
  CHECK(constant.dp_dt.is_zero());

  for (int t = 0; t < 50; ++t) {
    auto rng = stream_for(51, t);
    const int d = 1 + t % 3;
    const auto h = random_nc_polynomial(rng, d, 3, 5, false);
    for (int i = 1; i <= d; ++i) {
      const auto r = hamilton_check(h, i);
      CHECK(r.x_equation);
      CHECK(r.p_equation);
    }
  }
}

TEST_CASE("gauge curvature") {
  CHECK(gauge_curvature({c(3), c(-2)}, 1, 2).is_zero());
  CHECK(gauge_curvature({X2, NCPolynomial()}, 1, 2) == c(-1));
  CHECK_THROWS_AS(gauge_curvature({P1, X1}, 1, 2), ContractError);

  for (int t = 0; t < 50; ++t) {
    auto rng = stream_for(52, t);
    std::vector<NCPolynomial> a;
    for (int k = 0; k < 3; ++k) a.push_back(random_nc_polynomial(rng, 3, 2, 3, true));
    const auto f = random_nc_polynomial(rng, 3, 2, 3, false);
    for (int i = 1; i <= 3; ++i) {
      for (int j = i + 1; j <= 3; ++j) CHECK(curvature_identity_check(a, f, i, j).is_zero());
    }
  }
}
