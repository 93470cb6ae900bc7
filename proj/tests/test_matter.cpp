#include <doctest.h>

#include <cmath>
#include <numbers>

#include "density.hpp"
#include "matter.hpp"
#include "optics.hpp"
#include "test_helpers.hpp"

using namespace ifm;
using namespace ifm::matter;
using optics::PolarizationSpec;
using optics::Port;
using testing::Rng;

namespace {

const double kInv2 = 1.0 / std::numbers::sqrt2;
const complexd kI(0.0, 1.0);

template <typename A, typename B>
bool near(const A& a, const B& b, double tol) {
  return std::abs(a - b) <= tol;
}

// alpha*a + beta*b over identical registers.
JointState combine(complexd alpha, const JointState& a, complexd beta, const JointState& b) {
  JointState::AmplitudeMap amps;
  for (const auto& [tuple, amp] : a.amplitudes()) amps[tuple] += alpha * amp;
  for (const auto& [tuple, amp] : b.amplitudes()) amps[tuple] += beta * amp;
  return JointState(a.registers(), std::move(amps), a.prune_threshold());
}

AtomModel lower_half() { return AtomModel::half_absorber("atom", Arm::lower); }

}  // namespace

TEST_CASE("half_absorber absorbs the resonant branch and passes the other") {
  JointState::AmplitudeMap amps;
  amps[{"l+", "m+"}] = kInv2;
  amps[{"l+", "m-"}] = kInv2;
  const JointState s({optics::photon_register(), atom_register("atom")}, amps);
  const JointState t = interact(s, lower_half());

  CHECK(near(t.amplitude({"S+", "g"}), complexd(kInv2, 0.0), 1e-15));
  CHECK(near(t.amplitude({"l+", "m-"}), complexd(kInv2, 0.0), 1e-15));
  CHECK(t.amplitudes().size() == 2);
  CHECK(near(t.norm(), 1.0, 1e-15));
}

TEST_CASE("half_absorber in the lower arm ignores upper-arm photons") {
  JointState::AmplitudeMap amps;
  amps[{"u+", "m+"}] = 1.0;
  const JointState s({optics::photon_register(), atom_register("atom")}, amps);
  const JointState t = interact(s, lower_half());
  CHECK(testing::max_amplitude_diff(s, t) <= 1e-15);
}

TEST_CASE("ground-state atoms are transparent") {
  JointState::AmplitudeMap amps;
  amps[{"l+", "g"}] = 1.0;
  const JointState s({optics::photon_register(), atom_register("atom")}, amps);
  const JointState t = interact(s, lower_half());
  CHECK(testing::max_amplitude_diff(s, t) <= 1e-15);
}

TEST_CASE("two_level absorbs only its resonant polarization") {
  const AtomModel model =
      AtomModel::two_level("atom", Arm::lower, PolarizationSpec::Kind::sigma_plus);
  JointState::AmplitudeMap amps;
  amps[{"l+", "m+"}] = 0.5;
  amps[{"l-", "m-"}] = 0.5;
  amps[{"l+", "m-"}] = 0.5;
  amps[{"l-", "m+"}] = 0.5;
  const JointState s({optics::photon_register(), atom_register("atom")}, amps);
  const JointState t = interact(s, model);
  CHECK(near(t.amplitude({"S+", "g"}), complexd(0.5, 0.0), 1e-15));
  CHECK(near(t.amplitude({"l-", "m-"}), complexd(0.5, 0.0), 1e-15));
  CHECK(near(t.amplitude({"l+", "m-"}), complexd(0.5, 0.0), 1e-15));
  CHECK(near(t.amplitude({"l-", "m+"}), complexd(0.5, 0.0), 1e-15));
}

TEST_CASE("classical_opaque scatters both polarizations without an atom register") {
  JointState::AmplitudeMap amps;
  amps[{"u+"}] = kInv2;
  amps[{"l+"}] = kI * kInv2;
  const JointState s({optics::photon_register()}, amps);
  const JointState t = interact(s, AtomModel::classical_opaque(Arm::lower));
  CHECK(near(t.amplitude({"u+"}), complexd(kInv2, 0.0), 1e-15));
  CHECK(near(t.amplitude({"S+"}), kI * kInv2, 1e-15));
  CHECK(t.amplitudes().size() == 2);
}

TEST_CASE("spectators are never touched and see no signaling") {
  Rng rng(8381);
  const std::vector<RegisterDecl> regs{optics::photon_register(), atom_register("atom1"),
                                       atom_register("atom2")};
  const AtomModel probe = AtomModel::half_absorber("atom1", Arm::lower);
  const AtomModel spectator = AtomModel::spectator("atom2");
  for (int i = 0; i < 50; ++i) {
    const JointState s = rng.unscattered_state(regs);
    CHECK(testing::max_amplitude_diff(s, interact(s, spectator)) == 0.0);

    // The spectator's reduced state is untouched by the probe interaction.
    const JointState t = interact(s, probe);
    const DensityMatrix before = to_density(s).partial_trace({"atom2"});
    const DensityMatrix after = to_density(t).partial_trace({"atom2"});
    CHECK(testing::max_entry_diff(before, after) <= 1e-12);
  }
}

TEST_CASE("property: interact is an isometry on unscattered states") {
  Rng rng(177013);
  const std::vector<RegisterDecl> regs{optics::photon_register(), atom_register("atom")};
  const std::vector<AtomModel> models{
      lower_half(), AtomModel::half_absorber("atom", Arm::upper),
      AtomModel::two_level("atom", Arm::lower, PolarizationSpec::Kind::sigma_plus),
      AtomModel::two_level("atom", Arm::upper, PolarizationSpec::Kind::sigma_minus)};
  for (int i = 0; i < 1000; ++i) {
    const JointState s = rng.unscattered_state(regs);
    const JointState t = interact(s, models[static_cast<std::size_t>(i) % models.size()]);
    CHECK(near(t.norm(), 1.0, 1e-12));
  }
}

TEST_CASE("property: interact is linear") {
  Rng rng(52119);
  const std::vector<RegisterDecl> regs{optics::photon_register(), atom_register("atom")};
  for (int i = 0; i < 100; ++i) {
    const JointState a = rng.unscattered_state(regs);
    const JointState b = rng.unscattered_state(regs);
    const complexd alpha = rng.amplitude();
    const complexd beta = rng.amplitude();
    const JointState lhs = interact(combine(alpha, a, beta, b), lower_half());
    const JointState rhs =
        combine(alpha, interact(a, lower_half()), beta, interact(b, lower_half()));
    CHECK(testing::max_amplitude_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("property: interact is idempotent on its image") {
  Rng rng(661991);
  const std::vector<RegisterDecl> regs{optics::photon_register(), atom_register("atom")};
  for (int i = 0; i < 200; ++i) {
    const JointState once = interact(rng.unscattered_state(regs), lower_half());
    const JointState twice = interact(once, lower_half());
    CHECK(testing::max_amplitude_diff(once, twice) <= 1e-12);
  }
}

TEST_CASE("interact requires its registers") {
  const JointState atoms_only = JointState::basis_state(atom_register("atom"), "m+");
  CHECK_THROWS_AS(interact(atoms_only, lower_half()), StateError);

  const JointState photon_only = JointState::basis_state(optics::photon_register(), "l+");
  CHECK_THROWS_AS(interact(photon_only, lower_half()), StateError);
}

TEST_CASE("prepare_atoms: named examples") {
  std::vector<std::string> warnings;

  const JointState equal = prepare_atoms(
      AtomInitialState{{{{"m+", kInv2}, {"m-", kInv2}}}, {}}, {lower_half()}, &warnings);
  CHECK(near(equal.amplitude({"m+"}), complexd(kInv2, 0.0), 1e-12));
  CHECK(near(equal.amplitude({"m-"}), complexd(kInv2, 0.0), 1e-12));
  CHECK(warnings.empty());

  const JointState plus = prepare_atoms(AtomInitialState{{{{"m+", 1.0}}}, {}}, {lower_half()});
  CHECK(near(plus.amplitude({"m+"}), complexd(1.0, 0.0), 1e-15));

  AtomInitialState bell;
  bell.joint[{"m-", "m+"}] = kInv2;
  bell.joint[{"m+", "m-"}] = kInv2;
  const JointState pair = prepare_atoms(
      bell, {AtomModel::half_absorber("atom1", Arm::lower), AtomModel::spectator("atom2")});
  CHECK(near(pair.amplitude({"m-", "m+"}), complexd(kInv2, 0.0), 1e-12));
  CHECK(near(pair.amplitude({"m+", "m-"}), complexd(kInv2, 0.0), 1e-12));
  CHECK(near(pair.norm(), 1.0, 1e-12));
}

TEST_CASE("prepare_atoms renormalizes off-norm inputs with a warning") {
  std::vector<std::string> warnings;
  const JointState s = prepare_atoms(AtomInitialState{{{{"m+", 1.0}, {"m-", 1.0}}}, {}},
                                     {lower_half()}, &warnings);
  CHECK(near(s.norm(), 1.0, 1e-12));
  CHECK(near(s.amplitude({"m+"}), complexd(kInv2, 0.0), 1e-12));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("renormalized") != std::string::npos);
}

TEST_CASE("prepare_atoms flags initial ground-state population") {
  std::vector<std::string> warnings;
  prepare_atoms(AtomInitialState{{{{"m+", kInv2}, {"g", kInv2}}}, {}}, {lower_half()},
                &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("|g>") != std::string::npos);
}

TEST_CASE("prepare_atoms rejects zero-norm input") {
  CHECK_THROWS_AS(prepare_atoms(AtomInitialState{{{{"m+", 0.0}}}, {}}, {lower_half()}),
                  StateError);
}
