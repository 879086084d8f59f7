// Copyright 2026 The teur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "teur/expcli.hpp"

namespace teur {

GameInstance random_game(const SubsystemLayout& layout, int num_rotations, bool uniform, SeededSource& source) {
  const Index d = layout.total_dim();
  const auto rank = static_cast<Index>(1 + source.next_u64() % static_cast<std::uint64_t>(d));
  DensityMatrix rho = ginibre_mixed(layout, rank, source);
  Generator g("A", random_hermitian(layout.dim("A"), source));
  std::vector<double> angles = random_angles(num_rotations, source);
  if (uniform) return GameInstance(std::move(rho), std::move(g), RotationEnsemble::uniform(std::move(angles)));
  std::vector<double> p(static_cast<std::size_t>(num_rotations));
  double total = 0.0;
  for (double& x : p) {
    x = -std::log(1.0 - source.uniform());
    total += x;
  }
  for (double& x : p) x /= total;
  // Put the rounding residue on the largest entry so the sum is 1 to ~1 ulp.
  double residue = 1.0;
  for (double x : p) residue -= x;
  *std::max_element(p.begin(), p.end()) += residue;
  return GameInstance(std::move(rho), std::move(g), RotationEnsemble(std::move(angles), std::move(p)));
}

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<const CheckResult*> VerifyReport::failures() const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(&c);
  }
  return out;
}

std::vector<std::string> verify_suites() { return {"qstate", "entropy", "algebra", "identities", "games"}; }

namespace {

class Recorder {
 public:
  Recorder(VerifyReport& report, std::string suite) : report_(report), suite_(std::move(suite)) {}

  /// Records a check comparing a worst-case value against a limit.
  void bound(const std::string& name, double worst, double limit, bool upper = true) {
    std::ostringstream os;
    os << (upper ? "max " : "min ") << worst << (upper ? " <= " : " >= ") << limit;
    add(name, upper ? worst <= limit : worst >= limit, os.str());
  }

  void add(const std::string& name, bool pass, std::string detail) {
    report_.checks.push_back({suite_, name, pass, std::move(detail)});
  }

  /// Runs `body`, turning exceptions into failures.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, std::string("exception: ") + e.what());
    }
  }

 private:
  VerifyReport& report_;
  std::string suite_;
};

Matrix rotated_qubit_basis(double angle) {
  Matrix b(2, 2);
  b << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return b;
}

void run_qstate(Recorder& rec, int samples, std::uint64_t seed) {
  SeededSource src(seed, "verify/qstate");
  double roundtrip = 0.0, spectrum = 0.0, reconstruction = 0.0;
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix rho = ginibre_mixed(SubsystemLayout{{"A", 2}, {"C", 3}}, 1 + s % 6, src);
    const DensityMatrix sigma = ginibre_mixed(SubsystemLayout{{"B", 2}}, 2, src);
    roundtrip = std::max(roundtrip, max_abs(partial_trace(tensor(rho, sigma), {"A", "C"}).matrix() - rho.matrix()));

    const Matrix u = random_unitary(2, src);
    const DensityMatrix turned = apply_unitary(rho, u, {"A"});
    spectrum = std::max(spectrum, (turned.spectrum() - rho.spectrum()).cwiseAbs().maxCoeff());

    const Matrix h = random_hermitian(6, src);
    const HermitianEigen e = eig_hermitian(h);
    reconstruction = std::max(reconstruction, max_abs(e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - h) /
                                                  std::max(1.0, max_abs(h)));
  }
  rec.bound("tensor/partial_trace round trip", roundtrip, 1e-12);
  rec.bound("apply_unitary preserves spectrum", spectrum, 1e-10);
  rec.bound("eig_hermitian reconstruction", reconstruction, 1e-12);
}

void run_entropy(Recorder& rec, int samples, std::uint64_t seed) {
  SeededSource src(seed, "verify/entropy");
  double additivity = 0.0, unitary = 0.0, asym = 0.0;
  double ssa = std::numeric_limits<double>::infinity(), rel = ssa;
  const SubsystemLayout abc{{"A", 2}, {"B", 2}, {"C", 2}};
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix rho = ginibre_mixed(SubsystemLayout{{"A", 2}, {"B", 3}}, 1 + s % 6, src);
    const DensityMatrix sigma = ginibre_mixed(SubsystemLayout{{"C", 2}}, 2, src);
    additivity = std::max(additivity, std::abs(von_neumann_entropy(tensor(rho, sigma)) - von_neumann_entropy(rho) -
                                               von_neumann_entropy(sigma)));
    unitary = std::max(unitary, std::abs(von_neumann_entropy(apply_unitary(rho, random_unitary(6, src), {"A", "B"})) -
                                         von_neumann_entropy(rho)));

    const DensityMatrix tri = ginibre_mixed(abc, 1 + s % 8, src);
    ssa = std::min(ssa, conditional_entropy(tri, {"A"}, {"B"}) - conditional_entropy(tri, {"A"}, {"B", "C"}));

    const DensityMatrix other = ginibre_mixed(abc, 8, src);
    const EntropyValue d = relative_entropy(tri, other);
    if (d.finite) rel = std::min(rel, d.value);

    const auto pinch = make_pinching(abc, "B", random_unitary(2, src));
    const DensityMatrix projected = apply_condexp(pinch, tri);
    asym = std::max(asym, std::abs(relative_entropy(tri, projected).value -
                                   (von_neumann_entropy(projected) - von_neumann_entropy(tri))));
  }
  rec.bound("additivity S(rho x sigma) = S(rho) + S(sigma)", additivity, 1e-10);
  rec.bound("entropy invariant under unitaries", unitary, 1e-10);
  rec.bound("strong subadditivity S(A|B) - S(A|BC)", ssa, -1e-9, false);
  rec.bound("relative entropy nonnegative", rel, -1e-10, false);
  rec.bound("asymmetry D(rho||E rho) = S(E rho) - S(rho)", asym, 1e-9);
}

struct Squares {
  CommutingSquare first;      // pinch R vs pinch A on (R, A, B1)
  CommutingSquare second;     // pinch R + drop B2 vs pinch A + drop B1
  CommutingSquare bipartite;  // drop B vs pinch A on (A, B)
  Generator generator;
  RotationEnsemble ensemble;
};

CommutingSquare require_square(const ConditionalExpectation& n, const ConditionalExpectation& t) {
  auto c = verify_commuting_square(n, t);
  if (!c.square) throw std::runtime_error("expected commuting square does not commute");
  return *c.square;
}

Squares build_squares(const Generator& g, const RotationEnsemble& ens) {
  const auto nr = static_cast<Index>(ens.size());
  const Matrix reg_basis = Matrix::Identity(nr, nr);
  const SubsystemLayout l1{{"R", nr}, {"A", g.dim()}, {"B1", 2}};
  const SubsystemLayout l2{{"R", nr}, {"A", g.dim()}, {"B1", 2}, {"B2", 2}};
  const SubsystemLayout lb{{"A", g.dim()}, {"B", 2}};
  CommutingSquare first =
      require_square(make_pinching(l1, "R", reg_basis), make_pinching(l1, "A", g.eigenvectors()));
  CommutingSquare second = require_square(
      compose(l2, {make_pinching(l2, "R", reg_basis), make_trace_embed(l2, {"B2"})}),
      compose(l2, {make_pinching(l2, "A", g.eigenvectors()), make_trace_embed(l2, {"B1"})}));
  CommutingSquare bip = require_square(make_trace_embed(lb, {"B"}), make_pinching(lb, "A", g.eigenvectors()));
  return {std::move(first), std::move(second), std::move(bip), g, ens};
}

DensityMatrix psi_for(const Generator& g, const RotationEnsemble& ens, const DensityMatrix& rho) {
  return build_psi(GameInstance(rho, g, ens));
}

void run_algebra(Recorder& rec, int samples, std::uint64_t seed, bool inject_fault) {
  SeededSource src(seed, "verify/algebra");
  const Generator g("A", random_hermitian(2, src));
  const RotationEnsemble ens = RotationEnsemble::uniform(random_angles(3, src));

  std::optional<Squares> sq;
  rec.guard("game commuting squares commute", [&] {
    sq = build_squares(g, ens);
    rec.add("game commuting squares commute", true, "first, second, bipartite");
  });
  if (!sq) return;

  const int condexp_samples = std::min(samples, 50);
  const std::vector<std::pair<std::string, const ConditionalExpectation*>> expectations{
      {"pinch R", &sq->first.e_n},       {"pinch A", &sq->first.e_t},
      {"pinch R + embed B2", &sq->second.e_n}, {"pinch A + embed B1", &sq->second.e_t},
      {"embed B", &sq->bipartite.e_n},   {"minimal (second square)", &sq->second.e_r}};
  for (const auto& [name, e] : expectations) {
    const CondExpReport r = verify_condexp(*e, condexp_samples, seed);
    rec.add("conditional expectation: " + name, r.pass, r.pass ? "ok" : r.failures.front());
  }
  if (inject_fault) {
    const SubsystemLayout q{{"A", 2}};
    const auto reset = testing::make_custom_map(q, "reset-to-zero", [](const Matrix& x) {
      Matrix out = Matrix::Zero(2, 2);
      out(0, 0) = x.trace();
      return out;
    });
    const CondExpReport r = verify_condexp(reset, 1, seed);
    rec.add("injected fault: non-unital map", r.pass, r.pass ? "ok" : r.failures.front());
  }

  {
    const SubsystemLayout q{{"A", 2}};
    const auto c = verify_commuting_square(make_pinching(q, "A", Matrix::Identity(2, 2)),
                                           make_pinching(q, "A", rotated_qubit_basis(std::numbers::pi / 8)));
    std::ostringstream os;
    os << "deviation " << c.deviation;
    rec.add("z vs pi/8-rotated pinching does not commute", !c.commutes, os.str());
  }

  double worst_gap = std::numeric_limits<double>::infinity();
  const SubsystemLayout l1 = sq->first.e_n.layout(), l2 = sq->second.e_n.layout(), lb = sq->bipartite.e_n.layout();
  for (int s = 0; s < samples; ++s) {
    const int which = s % 3;
    const CommutingSquare& square = which == 0 ? sq->first : which == 1 ? sq->second : sq->bipartite;
    const SubsystemLayout& l = which == 0 ? l1 : which == 1 ? l2 : lb;
    const DensityMatrix rho = ginibre_mixed(l, 1 + static_cast<Index>(src.next_u64() % static_cast<std::uint64_t>(l.total_dim())), src);
    worst_gap = std::min(worst_gap, square_entropy_report(square, rho).value);
  }
  rec.bound("commuting-square entropy inequality holds", worst_gap, -1e-9, false);

  rec.guard("recovery maps", [&] {
    const Matrix u = control_unitary(ens, g);
    double dev1 = 0.0, dev2 = 0.0, devb = 0.0, square_gap = 0.0;
    bool ok = true;
    const int n = std::max(1, std::min(samples, 20));
    for (int s = 0; s < n; ++s) {
      const DensityMatrix rho_ab1 = ginibre_mixed(SubsystemLayout{{"A", 2}, {"B1", 2}}, 1 + s % 4, src);
      const DensityMatrix psi1 = psi_for(g, ens, rho_ab1);
      const RecoveryCandidate r1(l1, {"A", "B1"}, rho_ab1.matrix(), u, {"R", "A"});
      const auto rep1 = verify_recovery(r1, sq->first, RecoverySide::kFromT, psi1);
      ok = ok && rep1.pass;
      dev1 = std::max({dev1, rep1.recovery_deviation, rep1.cross_deviation});
      square_gap = std::max(square_gap, std::abs(square_entropy_report(sq->first, psi1).value));

      const DensityMatrix rho_b2 = ginibre_mixed(SubsystemLayout{{"B2", 2}}, 2, src);
      const DensityMatrix psi2 = psi_for(g, ens, tensor(rho_ab1, rho_b2));
      const RecoveryCandidate r2(l2, {"A", "B1"}, rho_ab1.matrix(), u, {"R", "A"});
      const auto rep2 = verify_recovery(r2, sq->second, RecoverySide::kFromT, psi2);
      ok = ok && rep2.pass;
      dev2 = std::max({dev2, rep2.recovery_deviation, rep2.cross_deviation});

      const DensityMatrix rho_a = ginibre_mixed(SubsystemLayout{{"A", 2}}, 2, src);
      const DensityMatrix rho_b = ginibre_mixed(SubsystemLayout{{"B", 2}}, 2, src);
      const RecoveryCandidate rb(lb, {"A"}, rho_a.matrix());
      const auto repb = verify_recovery(rb, sq->bipartite, RecoverySide::kFromT, tensor(rho_a, rho_b));
      ok = ok && repb.pass;
      devb = std::max({devb, repb.recovery_deviation, repb.cross_deviation});
    }
    std::ostringstream os;
    os << "first " << dev1 << ", second " << dev2 << ", bipartite " << devb << ", |square entropy gap| " << square_gap;
    rec.add("recovery maps", ok && square_gap <= 1e-8, os.str());
  });
}

void run_identities(Recorder& rec, int samples, std::uint64_t seed) {
  SeededSource src(seed, "verify/identities");
  const SubsystemLayout layout{{"A", 2}, {"B1", 2}, {"B2", 2}};
  double register_split = 0.0, relative_gap = 0.0, second_form = 0.0, pinch_psi = 0.0, shannon = 0.0;
  for (int s = 0; s < samples; ++s) {
    const GameInstance game = random_game(layout, 2 + s % 5, s % 2 == 0, src);
    const BoundReport r = tripartite_report(game);
    register_split = std::max(register_split, std::abs(r.term("S_RA_kappa") - r.term("S_R_kappa") - r.term("S_A_rho")));
    relative_gap = std::max(relative_gap, std::abs(r.term("S_AB1_omega") - r.term("S_AB1_kappa") - r.term("D_kappa_AB1_omega_AB1")));
    const double rewritten = r.term("S_R_kappa") + r.term("D_kappa_AB1_omega_AB1") + r.term("I_A_B1_omega") -
                             r.term("I_B1_B2_rho") + r.term("S_A_given_B1B2_rho");
    second_form = std::max(second_form, std::abs(r.variant("thm1_second")->rhs - rewritten));
    shannon = std::max(shannon, std::abs(r.term("S_R_kappa") - game.ensemble().entropy()));

    const DensityMatrix psi = build_psi(game);
    const auto reg_pinch = make_pinching(psi.layout(), "R", Matrix::Identity(psi.layout().dim("R"), psi.layout().dim("R")));
    pinch_psi = std::max(pinch_psi, max_abs(apply_condexp(reg_pinch, psi).matrix() - build_kappa(game).matrix()));
  }
  rec.bound("S(RA)_kappa = S(R)_kappa + S(A)_rho", register_split, 1e-9);
  rec.bound("S(AB1)_omega - S(AB1)_kappa = D(kappa_AB1||omega_AB1)", relative_gap, 1e-9);
  rec.bound("second bound rewritten through mutual informations", second_form, 1e-9);
  rec.bound("S(R)_kappa equals Shannon entropy of p", shannon, 1e-12);
  rec.bound("register pinching of psi gives kappa", pinch_psi, 1e-12);

  double dilation = 0.0, complementary = 0.0;
  const SubsystemLayout two{{"A", 2}, {"B", 2}};
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix rho = ginibre_mixed(two, 1 + s % 4, src);
    const auto pinch = make_pinching(two, s % 2 ? "A" : "B", random_unitary(2, src));
    dilation = std::max(dilation, verify_dilation_asymmetry(rho, pinch).deviation);

    const StinespringIsometry iso = pinching_stinespring(pinch);
    const DensityMatrix dilated = iso.dilate(rho);
    const DensityMatrix env = partial_trace(dilated, {iso.environment});
    const auto& basis = std::get<ConditionalExpectation::Pinching>(pinch.kind()).basis;
    const std::string target = std::get<ConditionalExpectation::Pinching>(pinch.kind()).target;
    const Matrix marginal = partial_trace(apply_condexp(pinch, rho), {target}).matrix();
    complementary = std::max(complementary, max_abs(env.matrix() - basis.adjoint() * marginal * basis));
  }
  rec.bound("asymmetry equals -S(E|M) on the dilation", dilation, 1e-9);
  rec.bound("complementary channel of pinching is the pinching", complementary, 1e-12);
}

void run_games(Recorder& rec, int samples, std::uint64_t seed) {
  SeededSource src(seed, "verify/games");
  const SubsystemLayout tri{{"A", 2}, {"B1", 2}, {"B2", 2}};
  const SubsystemLayout tri_trivial{{"A", 2}, {"B1", 1}, {"B2", 2}};
  const SubsystemLayout bip{{"A", 2}, {"B", 2}};
  double dominance = 0.0, coles = 0.0, pure = 0.0, product = 0.0, bip_gap = 0.0, bip_product = 0.0;
  for (int s = 0; s < samples; ++s) {
    const bool trivial_b1 = s % 3 == 0;
    const GameInstance game = random_game(trivial_b1 ? tri_trivial : tri, 2 + s % 5, s % 2 == 0, src);
    const BoundReport r = tripartite_report(game);
    dominance = std::min({dominance, r.main().gap, r.main().rhs - r.variant("thm1_first")->rhs,
                          r.variant("thm1_second")->gap});
    for (const char* name : {"coles_tripartite", "coles_bipartite_special"}) {
      if (const BoundVariant* v = r.variant(name)) coles = std::min({coles, r.main().rhs - v->rhs, v->gap});
    }

    SeededSource pure_src(seed, "verify/games/pure", static_cast<std::uint64_t>(s));
    const DensityMatrix pure_state(haar_pure(tri, pure_src));
    pure = std::max(pure, std::abs(tripartite_report(GameInstance(pure_state, game.generator(), game.ensemble()))
                                       .main()
                                       .gap));
    const DensityMatrix prod = tensor(ginibre_mixed(SubsystemLayout{{"A", 2}, {"B1", 2}}, 4, src),
                                      ginibre_mixed(SubsystemLayout{{"B2", 2}}, 2, src));
    product = std::max(product, std::abs(tripartite_report(GameInstance(prod, game.generator(), game.ensemble()))
                                             .main()
                                             .gap));

    const GameInstance bgame = random_game(bip, 2 + s % 5, s % 2 == 1, src);
    bip_gap = std::min(bip_gap, bipartite_report(bgame).main().gap);
    const DensityMatrix bprod =
        tensor(ginibre_mixed(SubsystemLayout{{"A", 2}}, 2, src), ginibre_mixed(SubsystemLayout{{"B", 2}}, 2, src));
    bip_product = std::max(
        bip_product,
        std::abs(bipartite_report(GameInstance(bprod, bgame.generator(), bgame.ensemble())).main().gap));
  }
  rec.bound("tripartite: lhs >= rhs_thm1 >= rhs_thm1_first, lhs >= rhs_thm1_second", dominance, -1e-9, false);
  rec.bound("tripartite: dominates Coles baselines", coles, -1e-9, false);
  rec.bound("tripartite: pure states saturate", pure, kSaturationTolerance);
  rec.bound("tripartite: rho_AB1 x rho_B2 saturates", product, kSaturationTolerance);
  rec.bound("bipartite: lhs >= rhs_thm2", bip_gap, -1e-9, false);
  rec.bound("bipartite: product states saturate", bip_product, kSaturationTolerance);
}

}  // namespace

VerifyReport run_verify(const std::string& suite, int samples, std::uint64_t seed, VerifyOptions options) {
  const auto known = verify_suites();
  if (suite != "all" && std::find(known.begin(), known.end(), suite) == known.end()) {
    throw ConfigError("suite", "unknown suite '" + suite + "'");
  }
  if (samples < 1) throw ConfigError("samples", "must be >= 1");
  VerifyReport report;
  auto wants = [&](const char* name) { return suite == "all" || suite == name; };
  auto run = [&](const char* name, const std::function<void(Recorder&)>& body) {
    if (!wants(name)) return;
    Recorder rec(report, name);
    rec.guard(std::string(name) + " suite", [&] { body(rec); });
  };
  run("qstate", [&](Recorder& r) { run_qstate(r, samples, seed); });
  run("entropy", [&](Recorder& r) { run_entropy(r, samples, seed); });
  run("algebra", [&](Recorder& r) { run_algebra(r, samples, seed, options.inject_fault); });
  run("identities", [&](Recorder& r) { run_identities(r, samples, seed); });
  run("games", [&](Recorder& r) { run_games(r, samples, seed); });
  if (options.inject_fault && !wants("algebra")) {
    Recorder rec(report, "fault");
    rec.add("injected fault", false, "fault hook enabled");
  }
  return report;
}

std::string verify_report_to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["pass"] = report.pass();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["checks"] = std::move(checks);
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto* c : report.failures()) failures.push_back(c->suite + ": " + c->name);
  j["failures"] = std::move(failures);
  return j.dump(2);
}

}  // namespace teur
