#include "tilespec/cyclotomic.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "test_util.hpp"
#include "tilespec/numeric.hpp"

using tilespec::Cyc;
using tilespec::Field;
using tilespec::Rat;
using tilespec_test::SplitMix64;

namespace {

const Field* penrose_field() { return Field::of_order(5); }

Cyc golden_ratio(const Field* f) {
  // phi = 1 + zeta^2 - zeta^3.
  return Cyc::from_rat(f, 1) + Cyc::zeta_pow(f, 2) - Cyc::zeta_pow(f, 3);
}

}  // namespace

TEST_CASE("fifth power of the primitive root is minus one") {
  const Field* f = penrose_field();
  Cyc z = Cyc::zeta_pow(f, 1);
  Cyc acc = Cyc::from_rat(f, 1);
  for (int i = 0; i < 5; ++i) acc = acc * z;
  CHECK(acc == Cyc::from_rat(f, -1));
  Cyc full = acc * acc;
  CHECK(full == Cyc::from_rat(f, 1));
}

TEST_CASE("degree and reduction rule of the order-5 field") {
  const Field* f = penrose_field();
  CHECK(f->deg() == 4);
  // zeta^4 = zeta^3 - zeta^2 + zeta - 1.
  Cyc z4 = Cyc::zeta_pow(f, 1).pow(4);
  Cyc expect = Cyc::zeta_pow(f, 3) - Cyc::zeta_pow(f, 2) +
               Cyc::zeta_pow(f, 1) - Cyc::from_rat(f, 1);
  CHECK(z4 == expect);
}

TEST_CASE("golden ratio element evaluates to (1+sqrt 5)/2") {
  const Field* f = penrose_field();
  Cyc phi = golden_ratio(f);
  double expect = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(phi.to_complex().real() - expect) < 1e-12);
  CHECK(std::abs(phi.to_complex().imag()) < 1e-15);
  CHECK(phi.is_real());
}

TEST_CASE("golden ratio satisfies phi*(phi-1) = 1") {
  const Field* f = penrose_field();
  Cyc phi = golden_ratio(f);
  CHECK(phi * (phi - Cyc::from_rat(f, 1)) == Cyc::from_rat(f, 1));
}

TEST_CASE("exact inverse of the scale unit") {
  const Field* f = penrose_field();
  Cyc lambda = golden_ratio(f);
  Cyc inv = lambda.inverse();
  CHECK(lambda * inv == Cyc::from_rat(f, 1));
  // lambda^-1 = lambda - 1 for the golden ratio.
  CHECK(inv == lambda - Cyc::from_rat(f, 1));
}

TEST_CASE("conjugation fixes reals and inverts the root") {
  const Field* f = penrose_field();
  Cyc z = Cyc::zeta_pow(f, 1);
  CHECK(z.conj() == Cyc::zeta_pow(f, 9));
  CHECK(z * z.conj() == Cyc::from_rat(f, 1));
  CHECK(golden_ratio(f).conj() == golden_ratio(f));
}

TEST_CASE("order-2 field is the Gaussian rationals") {
  const Field* f = Field::of_order(2);
  CHECK(f->deg() == 2);
  Cyc i = Cyc::zeta_pow(f, 1);
  CHECK(i * i == Cyc::from_rat(f, -1));
  CHECK(i.pow(4) == Cyc::from_rat(f, 1));
  CHECK(i.conj() == -i);
}

TEST_CASE("mixed-field arithmetic is rejected") {
  Cyc a = Cyc::from_rat(Field::of_order(5), 1);
  Cyc b = Cyc::from_rat(Field::of_order(2), 1);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("float evaluation tracks exact products") {
  const Field* f = penrose_field();
  SplitMix64 rng(0x5eedf00d);
  for (int iter = 0; iter < 10000; ++iter) {
    Cyc a = tilespec_test::random_cyc(f, rng);
    Cyc b = tilespec_test::random_cyc(f, rng);
    std::complex<double> lhs = (a * b).to_complex();
    std::complex<double> rhs = a.to_complex() * b.to_complex();
    double scale = std::max(1.0, std::abs(rhs));
    CHECK(std::abs(lhs - rhs) / scale < 1e-10);
  }
}

TEST_CASE("long products keep relative float accuracy") {
  const Field* f = penrose_field();
  SplitMix64 rng(0xabcdef12);
  for (int trial = 0; trial < 20; ++trial) {
    Cyc acc = Cyc::from_rat(f, 1);
    std::complex<double> approx(1.0, 0.0);
    for (int k = 0; k < 100; ++k) {
      // Unit-modulus factors keep magnitudes bounded over 100 factors.
      Cyc u = Cyc::zeta_pow(f, static_cast<int>(rng.range(0, 9)));
      acc = acc * u;
      approx *= u.to_complex();
    }
    std::complex<double> exact = acc.to_complex();
    CHECK(std::abs(exact - approx) / std::abs(approx) < 1e-12);
  }
}

TEST_CASE("random inverses round trip") {
  const Field* f = penrose_field();
  SplitMix64 rng(0x13572468);
  int tested = 0;
  while (tested < 200) {
    Cyc a = tilespec_test::random_cyc(f, rng);
    if (a.is_zero()) continue;
    ++tested;
    CHECK(a * a.inverse() == Cyc::from_rat(f, 1));
  }
}

TEST_CASE("exact sign evaluation of real elements") {
  const Field* f = penrose_field();
  Cyc phi = golden_ratio(f);
  CHECK(tilespec::sign_real(phi) == 1);
  CHECK(tilespec::sign_real(-phi) == -1);
  CHECK(tilespec::sign_real(phi - phi) == 0);
  // phi - phi^2 + 1 = 0 exactly; the sign test must see exact zero.
  CHECK(tilespec::sign_real(phi - phi * phi + Cyc::from_rat(f, 1)) == 0);
  Cyc z = Cyc::zeta_pow(f, 1);
  CHECK(tilespec::sign_imag(z) == 1);
  CHECK(tilespec::sign_imag(z.conj()) == -1);
  CHECK(tilespec::sign_imag(phi) == 0);
}

TEST_CASE("rational extraction") {
  const Field* f = penrose_field();
  Cyc half = Cyc::from_rat(f, Rat(1, 2));
  REQUIRE(half.as_rational().has_value());
  CHECK(*half.as_rational() == Rat(1, 2));
  CHECK(!Cyc::zeta_pow(f, 1).as_rational().has_value());
}
