#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "wecp/error.hpp"
#include "wecp/quantum_state.hpp"

using namespace wecp;

namespace {

Ket one(const char* mode) { return Ket{{ModeLabel(mode)}}; }

PureState w3(double scale = 1.0) {
  const double a = scale / std::sqrt(3.0);
  return PureState({{one("a1"), a}, {one("b1"), a}, {one("c1"), a}});
}

PureState three_term(double wa, double wb, double wc) {
  return PureState({{one("a1"), std::sqrt(wa)},
                    {one("b1"), std::sqrt(wb)},
                    {one("c1"), std::sqrt(wc)}});
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected wecp::Error");
  return ErrorKind::kInvalidState;
}

}  // namespace

TEST_CASE("mode label stem strips trailing digits") {
  CHECK(ModeLabel("a12").stem() == "a");
  CHECK(ModeLabel("alice").stem() == "alice");
  CHECK(ModeLabel("p3_1").stem() == "p3_");
  CHECK(kind_of([] { ModeLabel(""); }) == ErrorKind::kBadWiring);
}

TEST_CASE("ket canonicalization is order independent") {
  std::mt19937_64 rng(7);
  std::vector<Photon> photons{{ModeLabel("c1"), Polarization::kV},
                              {ModeLabel("a2"), Polarization::kH},
                              {ModeLabel("b1"), Polarization::kV},
                              {ModeLabel("a10"), Polarization::kV}};
  const Ket reference(photons);
  for (int i = 0; i < 50; ++i) {
    std::shuffle(photons.begin(), photons.end(), rng);
    CHECK(Ket(photons) == reference);
    CHECK(Ket(photons).to_string() == reference.to_string());
  }
}

TEST_CASE("ket rejects double occupancy and mixed tags") {
  CHECK(kind_of([] {
          Ket{{ModeLabel("a1"), Polarization::kH},
              {ModeLabel("a1"), Polarization::kV}};
        }) == ErrorKind::kModeCollision);
  CHECK(kind_of([] {
          Ket{{ModeLabel("a1"), Polarization::kH},
              {ModeLabel("b1"), Polarization::kNone}};
        }) == ErrorKind::kWrongConvention);
  CHECK(one("a1").moved(ModeLabel("a1"), ModeLabel("a1")) == one("a1"));
  const Ket two{{ModeLabel("a1")}, {ModeLabel("b1")}};
  CHECK(kind_of([&] { two.moved(ModeLabel("a1"), ModeLabel("b1")); }) ==
        ErrorKind::kModeCollision);
}

TEST_CASE("norm_squared") {
  CHECK(norm_squared(w3()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm_squared(PureState({{one("a1"), 0.6}})) ==
        doctest::Approx(0.36).epsilon(1e-15));

  // alpha^2 t1 + beta^2 + gamma^2 with 0.5, 0.3, 0.2 and t1 = 0.4.
  const PureState kept({{one("a2"), std::sqrt(0.5) * std::sqrt(0.4)},
                        {one("b1"), std::sqrt(0.3)},
                        {one("c1"), std::sqrt(0.2)}});
  CHECK(std::abs(norm_squared(kept) - 0.7) < 1e-12);
}

TEST_CASE("state construction sums duplicates and prunes") {
  const PureState s({{one("a1"), 0.3}, {one("a1"), 0.3}, {one("b1"), 1e-9}});
  CHECK(s.size() == 1);
  CHECK(s.amplitude(one("a1")) == Amplitude(0.6));
  CHECK(s.has_mode(ModeLabel("b1")));  // registered even though pruned
  CHECK(norm_squared(s) == doctest::Approx(0.36));

  CHECK(kind_of([] { PureState({{one("a1"), 1.1}}); }) ==
        ErrorKind::kInvalidState);
  CHECK(kind_of([] {
          PureState({{one("a1"), 0.5},
                     {Ket{{ModeLabel("a1")}, {ModeLabel("b1")}}, 0.5}});
        }) == ErrorKind::kInvalidState);
  CHECK(kind_of([] {
          PureState({{one("a1"), 0.5},
                     {Ket{{ModeLabel("b1"), Polarization::kH}}, 0.5}});
        }) == ErrorKind::kWrongConvention);
  CHECK(kind_of([] { PureState(std::vector<std::pair<Ket, Amplitude>>{}); }) ==
        ErrorKind::kInvalidState);
}

TEST_CASE("fresh labels skip registered names") {
  const PureState s({{one("a1"), 0.6}, {one("a3"), 0.8}});
  const auto labels = s.fresh_labels("a", 3);
  REQUIRE(labels.size() == 3);
  CHECK(labels[0].name() == "a2");
  CHECK(labels[1].name() == "a4");
  CHECK(labels[2].name() == "a5");
}

TEST_CASE("normalize") {
  SUBCASE("already normalized is unchanged") {
    const PureState s = w3();
    const PureState n = normalize(s);
    for (const auto& [ket, amp] : s.terms()) {
      CHECK(std::abs(n.amplitude(ket) - amp) < 1e-15);
    }
  }
  SUBCASE("global scale is removed") {
    const PureState n = normalize(w3(0.5));
    CHECK(std::abs(norm_squared(n) - 1.0) < 1e-12);
    for (const auto& [ket, amp] : n.terms()) {
      CHECK(std::abs(amp - Amplitude(1.0 / std::sqrt(3.0))) < 1e-12);
    }
  }
  SUBCASE("attenuated W state becomes equal weight") {
    // gamma|100> + beta sqrt(t2)|010> + gamma|001>, gamma^2 = 0.2,
    // beta^2 = 0.3, t2 = 2/3.
    const double g = std::sqrt(0.2);
    const PureState s({{one("a2"), g},
                       {one("b2"), std::sqrt(0.3) * std::sqrt(2.0 / 3.0)},
                       {one("c1"), g}});
    const PureState n = normalize(s);
    for (const auto& [ket, amp] : n.terms()) {
      CHECK(std::abs(amp - Amplitude(1.0 / std::sqrt(3.0))) < 1e-12);
    }
  }
  SUBCASE("zero state throws") {
    const PureState empty({}, {}, Encoding::kModeOccupation);
    CHECK(kind_of([&] { normalize(empty); }) == ErrorKind::kZeroState);
  }
}

TEST_CASE("fidelity") {
  CHECK(std::abs(fidelity(w3(), w3()) - 1.0) < 1e-12);
  CHECK(fidelity(PureState({{one("a1"), 1.0}}),
                 PureState({{one("b1"), 1.0}})) == 0.0);
  const double expected =
      std::pow(std::sqrt(0.5) + std::sqrt(0.3) + std::sqrt(0.2), 2) / 3.0;
  CHECK(std::abs(fidelity(w3(), three_term(0.5, 0.3, 0.2)) - expected) < 1e-12);
  CHECK(expected == doctest::Approx(0.9657).epsilon(1e-4));

  const PureState pol({{Ket{{ModeLabel("a1"), Polarization::kH}}, 1.0}});
  CHECK(kind_of([&] { fidelity(pol, w3()); }) ==
        ErrorKind::kIncompatibleStates);
}

TEST_CASE("property: fidelity symmetry and normalize idempotence") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const char* modes[] = {"a1", "b1", "c1", "d1", "e1"};
  for (int trial = 0; trial < 300; ++trial) {
    auto random_state = [&] {
      std::vector<std::pair<Ket, Amplitude>> terms;
      for (const char* m : modes) {
        if (u(rng) > -0.5) terms.emplace_back(one(m), Amplitude(u(rng), u(rng)));
      }
      if (terms.empty()) terms.emplace_back(one("a1"), 1.0);
      double n = 0;
      for (auto& [k, a] : terms) n += std::norm(a);
      for (auto& [k, a] : terms) a /= std::sqrt(n) * 1.0000001;
      return PureState(terms);
    };
    const PureState a = random_state();
    const PureState b = random_state();
    CHECK(fidelity(a, b) == fidelity(b, a));
    CHECK(std::abs(fidelity(a, a) - 1.0) < 1e-12);
    const PureState na = normalize(a);
    const PureState nna = normalize(na);
    CHECK(std::abs(norm_squared(na) - 1.0) < 1e-12);
    for (const auto& [ket, amp] : na.terms()) {
      CHECK(std::abs(nna.amplitude(ket) - amp) < 1e-12);
    }
  }
}
