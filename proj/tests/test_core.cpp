#include "halfspace/core.hpp"
#include "halfspace/io.hpp"

#include <doctest.h>

#include "support.hpp"

#include <array>
#include <sstream>

using namespace halfspace;

namespace {

Halfspace hs3(double a, double b, double c, double tau) {
  Vector v(3);
  v << a, b, c;
  return Halfspace(std::move(v), tau);
}

LabeledSet full_cube_labeled_by(const Halfspace& f) {
  const Index d = f.dim();
  LabeledSet out(d);
  for (std::uint64_t m = 0; m < (1ULL << d); ++m) {
    CubePoint p(d);
    for (Index i = 0; i < d; ++i) p.set(i, (m >> i) & 1ULL ? 1 : -1);
    out.push_back(p, f.predict(p));
  }
  return out;
}

}  // namespace

TEST_CASE("predict follows sign(v·x + tau) with sign(0) = +1") {
  const std::array<int, 3> a{+1, +1, -1};
  CHECK(predict(hs3(1, 1, 1, 0), CubePoint::from_signs(a)) == 1);

  Vector v2(2);
  v2 << 1, 1;
  const std::array<int, 2> b{+1, -1};
  CHECK(predict(Halfspace(v2, 0.0), CubePoint::from_signs(b)) == 1);  // tie goes +1

  Vector v3(2);
  v3 << 1, -2;
  const std::array<int, 2> c{+1, +1};
  CHECK(predict(Halfspace(v3, 0.5), CubePoint::from_signs(c)) == -1);

  CHECK_THROWS_AS(predict(hs3(1, 1, 1, 0), CubePoint(2)), std::invalid_argument);
}

TEST_CASE("predict is invariant under positive rescaling") {
  SeededRng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Index d = 1 + static_cast<Index>(rng.uniform_int(8));
    Vector v(d);
    for (Index i = 0; i < d; ++i) v[i] = rng.normal();
    const double tau = rng.normal();
    if (v.isZero(0.0) && tau == 0.0) continue;
    const double lambda = std::exp(rng.uniform(-3.0, 3.0));
    CubePoint x(d);
    for (Index i = 0; i < d; ++i) x.set(i, rng.rademacher());
    const Halfspace h(v, tau);
    const Halfspace hl(lambda * v, lambda * tau);
    CHECK(h.predict(x) == hl.predict(x));
  }
}

TEST_CASE("empirical_error basics") {
  const Halfspace dictator = hs3(1, 0, 0, 0);
  const LabeledSet realizable = full_cube_labeled_by(dictator);
  CHECK(empirical_error(dictator, realizable) == 0.0);

  const Halfspace maj = hs3(1, 1, 1, 0);
  const LabeledSet by_dictator = full_cube_labeled_by(dictator);
  CHECK(empirical_error(maj, by_dictator) == doctest::Approx(0.25));

  // complement law holds when no margin ties the decision boundary
  const Halfspace odd = hs3(2, 1, 1, 0.5);
  CHECK(empirical_error(odd, by_dictator) + empirical_error(negate(odd), by_dictator) ==
        doctest::Approx(1.0));

  CHECK_THROWS_AS(empirical_error(dictator, LabeledSet(3)), std::invalid_argument);
}

TEST_CASE("regularity_ratio") {
  Vector e1 = Vector::Zero(4);
  e1[0] = 1.0;
  CHECK(regularity_ratio(e1) == doctest::Approx(1.0));

  Vector quarter = Vector::Constant(4, 0.5);
  CHECK(regularity_ratio(quarter) == doctest::Approx(0.5));

  const Index d = 37;
  Vector ones = Vector::Ones(d);
  CHECK(regularity_ratio(ones) == doctest::Approx(1.0 / std::sqrt(static_cast<double>(d))));

  SeededRng rng(5);
  for (int t = 0; t < 50; ++t) {
    Vector v(6);
    for (Index i = 0; i < 6; ++i) v[i] = rng.normal();
    const double lambda = std::exp(rng.uniform(-2.0, 2.0)) * (rng.rademacher() > 0 ? 1.0 : -1.0);
    CHECK(regularity_ratio(lambda * v) == doctest::Approx(regularity_ratio(v)));
  }

  CHECK_THROWS_AS(regularity_ratio(Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("restrict and embed") {
  Vector v(3);
  v << 3, 1, 2;
  const std::array<Index, 2> h02{0, 2};
  const Vector r = restrict(v, h02);
  CHECK(r.size() == 2);
  CHECK(r[0] == 3.0);
  CHECK(r[1] == 2.0);

  CHECK(restrict(v, std::span<const Index>{}).size() == 0);

  Vector u(1);
  u << 5;
  const std::array<Index, 1> h1{1};
  const Vector e = embed(u, h1, 3);
  CHECK(e[0] == 0.0);
  CHECK(e[1] == 5.0);
  CHECK(e[2] == 0.0);

  const std::array<Index, 1> bad{7};
  CHECK_THROWS_AS(restrict(v, bad), std::out_of_range);

  SeededRng rng(3);
  for (int t = 0; t < 50; ++t) {
    Vector w(8);
    for (Index i = 0; i < 8; ++i) w[i] = rng.normal();
    const std::array<Index, 3> hh{1, 4, 6};
    const Vector back = embed(restrict(w, hh), hh, 8);
    for (Index i = 0; i < 8; ++i) {
      const bool in_h = i == 1 || i == 4 || i == 6;
      CHECK(back[i] == (in_h ? w[i] : 0.0));
    }
  }
}

TEST_CASE("CubePoint packed storage and dot products") {
  CubePoint p(130);
  CHECK(p.dim() == 130);
  for (Index i = 0; i < 130; ++i) CHECK(p.get(i) == -1);
  p.set(0, 1);
  p.set(64, 1);
  p.set(129, 1);
  CHECK(p.get(64) == 1);
  p.flip(64);
  CHECK(p.get(64) == -1);
  p.flip(64);

  SeededRng rng(7);
  Vector v(130);
  for (Index i = 0; i < 130; ++i) v[i] = rng.normal();
  double manual = 0.0;
  for (Index i = 0; i < 130; ++i) manual += v[i] * p.get(i);
  CHECK(p.dot(v) == doctest::Approx(manual).epsilon(1e-12));

  CubePoint w(130);
  for (Index i = 0; i < 130; ++i) w.set(i, rng.rademacher());
  std::int64_t manual_pm = 0;
  for (Index i = 0; i < 130; ++i) manual_pm += p.get(i) * w.get(i);
  CHECK(p.dot_pm1(w) == manual_pm);
}

TEST_CASE("CubePoint scales to the megabit dimension") {
  const Index d = 1 << 20;
  CubePoint p(d);
  p.set(0, 1);
  p.set(d - 1, 1);
  CHECK(p.get(0) == 1);
  CHECK(p.get(1) == -1);
  CHECK(p.get(d - 1) == 1);
  Vector v = Vector::Zero(d);
  v[0] = 2.0;
  v[d - 1] = 3.0;
  v[5] = 7.0;
  CHECK(p.dot(v) == doctest::Approx(2.0 + 3.0 - 7.0));
}

TEST_CASE("Halfspace construction guards") {
  CHECK_THROWS_AS(Halfspace(Vector::Zero(3), 0.0), std::invalid_argument);
  const Halfspace c = Halfspace::constant_plus_one(4);
  CubePoint p(4);
  CHECK(c.predict(p) == 1);
}

TEST_CASE("SeededRng determinism and splitting") {
  SeededRng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
    all_equal = all_equal && x == y;
    any_diff = any_diff || x != z;
  }
  CHECK(all_equal);
  CHECK(any_diff);

  SeededRng root(9);
  SeededRng s1 = root.split(1), s2 = root.split(2), s1_again = root.split(1);
  CHECK(s1.next_u64() == s1_again.next_u64());
  CHECK(s1.next_u64() != s2.next_u64());
}

TEST_CASE("LearnerConfig resolve records formulas and clamps") {
  LearnerConfig cfg;
  cfg.epsilon = 0.1;
  cfg.c_const = 4.0;
  cfg.cap_k = 6;
  cfg.cap_samples = 20000;
  const auto rp = cfg.resolve(50);

  const double lg = std::log(10.0);
  CHECK(rp.k.formula ==
        doctest::Approx(std::pow(4.0, 0.1) * std::pow(lg, 16.0) / std::pow(0.1, 8.0)));
  CHECK(rp.k.applied == 6.0);
  CHECK(rp.eta.formula == doctest::Approx(std::pow(0.1, 25.0) / 4.0));
  CHECK(rp.s1.applied == 20000.0);
  CHECK(rp.s1.formula > 1e40);  // eta^{-2} blows up at the nominal constants
  CHECK(rp.eps_reg.applied == doctest::Approx(0.1 / std::pow(4.0, 0.01)));
  CHECK(rp.eps_hv.applied <= 0.5);
  CHECK(rp.u_max.applied <= 1e300);
  CHECK(rp.ellipsoid_tol == doctest::Approx(0.1 / 8.0));

  cfg.s3 = 1234;
  CHECK(cfg.resolve(50).s3.applied == 1234.0);

  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.resolve(50), std::invalid_argument);
}

TEST_CASE("dataset file format round-trips bit-exactly") {
  SeededRng rng(13);
  LabeledSet s(17, {Provenance::Kind::LabelNoise, 0.05});
  for (int i = 0; i < 40; ++i) {
    CubePoint p(17);
    for (Index c = 0; c < 17; ++c) p.set(c, rng.rademacher());
    s.push_back(p, rng.rademacher());
  }
  std::stringstream buf;
  write_labeled_set(buf, s);
  const std::string first = buf.str();
  const LabeledSet back = read_labeled_set(buf);
  CHECK(back.size() == s.size());
  CHECK(back.dim() == s.dim());
  CHECK(back.provenance() == s.provenance());
  for (Index i = 0; i < s.size(); ++i) {
    CHECK(back.label(i) == s.label(i));
    CHECK(back.point(i) == s.point(i));
  }
  std::stringstream buf2;
  write_labeled_set(buf2, back);
  CHECK(buf2.str() == first);
}

TEST_CASE("halfspace file format round-trips full precision") {
  Vector v(3);
  v << 0.1, -2.0 / 3.0, 1e-17;
  const Halfspace h(v, 0.30000000000000004);
  std::stringstream buf;
  write_halfspace(buf, h);
  const Halfspace back = read_halfspace(buf);
  CHECK(back.dim() == 3);
  for (Index i = 0; i < 3; ++i) CHECK(back.weights()[i] == h.weights()[i]);
  CHECK(back.bias() == h.bias());
}

TEST_CASE("DatasetOracle resamples deterministically") {
  SeededRng rng(21);
  LabeledSet s(5);
  for (int i = 0; i < 20; ++i) {
    CubePoint p(5);
    for (Index c = 0; c < 5; ++c) p.set(c, rng.rademacher());
    s.push_back(p, rng.rademacher());
  }
  const DatasetOracle oracle(s);
  SeededRng r1(77), r2(77);
  const LabeledSet a = oracle.draw(15, r1);
  const LabeledSet b = oracle.draw(15, r2);
  REQUIRE(a.size() == 15);
  for (Index i = 0; i < 15; ++i) {
    CHECK(a.point(i) == b.point(i));
    CHECK(a.label(i) == b.label(i));
  }
}
