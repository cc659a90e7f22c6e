#include <doctest.h>

#include "qlab/error.hpp"
#include "qlab/fiber.hpp"
#include "qlab/rng.hpp"

using namespace qlab;

using G = GrassmannElement;

namespace {

const G one = G::scalar(XPolynomial::constant(ExactComplex(1)));
const G th1 = G::generator(Odd::Theta1);
const G th2 = G::generator(Odd::Theta2);
const G tb1 = G::generator(Odd::ThetaBar1);
const G tb2 = G::generator(Odd::ThetaBar2);

G times(const ExactComplex& c, const G& e) { return XPolynomial::constant(c) * e; }

G xcoord(int mu) { return G::scalar(XPolynomial::coordinate(mu)); }

}  // namespace

TEST_CASE("Grassmann product") {
  CHECK((th1 * th1).is_zero());
  CHECK((th1 * th2 + th2 * th1).is_zero());
  CHECK((one + th1) * (one + th2) == one + th1 + th2 + th1 * th2);
  CHECK(th2 * th1 == -(th1 * th2));
  for (const G& a : {th1, th2, tb1, tb2}) {
    CHECK((a * a).is_zero());
    for (const G& b : {th1, th2, tb1, tb2}) CHECK((a * b + b * a).is_zero());
  }
}

TEST_CASE("Grassmann associativity and grading") {
  for (int t = 0; t < 100; ++t) {
    auto rng = stream_for(61, t);
    const G a = random_grassmann(rng, 4, 2);
    const G b = random_grassmann(rng, 4, 2);
    const G c = random_grassmann(rng, 4, 2);
    CHECK((a * b) * c == a * (b * c));
    for (int pa = 0; pa < 2; ++pa) {
      for (int pb = 0; pb < 2; ++pb) {
        const G prod = a.parity_part(pa) * b.parity_part(pb);
        CHECK(prod.parity_part((pa + pb) % 2) == prod);
      }
    }
  }
}

TEST_CASE("Berezin derivative examples") {
  CHECK(berezin_partial(th1, 1) == one);
  CHECK(berezin_partial(th2 * th1, 1) == -th2);
  CHECK(berezin_partial(th1, 2).is_zero());
  CHECK(berezin_partial(tb1 * th1, 1) == -tb1);
  CHECK(berezin_partial_right(tb1 * th1, 1) == tb1);
  CHECK(berezin_partial_right(th1 * th2, 1) == -th2);
  CHECK(berezin_partial(tb1, 1).is_zero());
}

TEST_CASE("graded Leibniz rule") {
  for (int t = 0; t < 200; ++t) {
    auto rng = stream_for(62, t);
    const G a = random_grassmann(rng, 5, 2);
    const G b = random_grassmann(rng, 5, 2);
    for (int alpha = 1; alpha <= 2; ++alpha) {
      const G db = berezin_partial(b, alpha);
      CHECK(berezin_partial(a * b, alpha) ==
            berezin_partial(a, alpha) * b + a.parity_part(0) * db - a.parity_part(1) * db);
    }
  }
}

TEST_CASE("x polynomials") {
  const XPolynomial x0 = XPolynomial::coordinate(0);
  const XPolynomial x2 = XPolynomial::coordinate(2);
  const XPolynomial p = x0 * x0 * x2 + ExactComplex(3) * x2;
  CHECK(p.partial(0) == ExactComplex(2) * (x0 * x2));
  CHECK(p.partial(2) == x0 * x0 + XPolynomial::constant(3));
  CHECK(p.partial(1).is_zero());
  CHECK(p.degree() == 3);
  CHECK_THROWS_AS(XPolynomial::coordinate(4), ContractError);
}

TEST_CASE("coordinates from spinors") {
  const GammaSet g = pauli_gamma_set();
  CHECK(x_from_theta(g, 0) == tb1 * th1 + tb2 * th2);
  // gamma^1 = sigma_1: dx/dtheta^1 reads column 1 of sigma_1 against theta-bar'
  CHECK(berezin_partial_right(x_from_theta(g, 1), 1) == tb2);
  CHECK(berezin_partial_right(x_from_theta(g, 1), 2) == tb1);
  CHECK(berezin_partial(x_from_theta(g, 0), 1) == -tb1);
  CHECK(berezin_partial_right(x_from_theta(g, 0), 1) == tb1);
  CHECK(berezin_partial_right(x_from_theta(g, 2), 1) == times(ExactComplex::i(), tb2));

  for (int mu = 0; mu < 4; ++mu) {
    for (int alpha = 1; alpha <= 2; ++alpha) {
      CHECK(jacobian_check(g, mu, alpha).is_zero());
      CHECK(jacobian_check(g, mu, alpha, DerivativeSide::Right).is_zero());
      CHECK(berezin_partial(x_from_theta(g, mu), alpha) == -berezin_partial_right(x_from_theta(g, mu), alpha));
    }
  }
  const GammaSet z = zero_gamma_set();
  for (int mu = 0; mu < 4; ++mu) {
    CHECK(x_from_theta(z, mu).is_zero());
    for (int alpha = 1; alpha <= 2; ++alpha) CHECK(jacobian_check(z, mu, alpha).is_zero());
  }
}

TEST_CASE("superfields and the covariant derivative") {
  const GammaSet g = pauli_gamma_set();
  CHECK_THROWS_AS(Superfield(tb1 * th1), ContractError);

  const Superfield constant(one);
  CHECK(covariant_D(constant, 1, g).is_zero());
  CHECK(covariant_D(constant, 2, g).is_zero());
  CHECK(covariant_D(Superfield(th1), 1, g) == one);

  for (int mu = 0; mu < 4; ++mu) {
    const Superfield coord(xcoord(mu));
    for (int alpha = 1; alpha <= 2; ++alpha) {
      CHECK(covariant_D(coord, alpha, g) == -connection_form(g, mu, alpha));
    }
  }
  // gamma^0 = identity: the connection form is i theta^alpha
  CHECK(connection_form(g, 0, 1) == times(ExactComplex::i(), th1));
  CHECK(connection_form(g, 1, 1) == times(ExactComplex::i(), th2));

  const Superfield built(XPolynomial::constant(2), XPolynomial::coordinate(1), XPolynomial(),
                         XPolynomial::coordinate(3));
  CHECK(built.element() == G::scalar(XPolynomial::constant(2)) + XPolynomial::coordinate(1) * th1 +
                               XPolynomial::coordinate(3) * (th1 * th2));
}

TEST_CASE("two routes to the covariant derivative") {
  const GammaSet g = pauli_gamma_set();
  for (const G& phi : {th1 * th2, xcoord(1) * th1, G(), xcoord(0) * xcoord(2) * th2 + th1}) {
    const auto res = nabla_superfield_check(Superfield(phi), g);
    CHECK(res[0].is_zero());
    CHECK(res[1].is_zero());
  }
  for (int t = 0; t < 50; ++t) {
    auto rng = stream_for(63, t);
    G e = random_grassmann(rng, 6, 3);
    G theta_part;
    for (const auto& [m, c] : e.terms()) {
      if ((m & 0b1100) == 0) theta_part.add_term(m, c);
    }
    const auto res = nabla_superfield_check(Superfield(theta_part), g);
    CHECK(res[0].is_zero());
    CHECK(res[1].is_zero());
  }
}
