#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hsim/operators.hpp"
#include "test_support.hpp"

using namespace hsim;
using hsim_test::term_oracle;
using Mat = Eigen::MatrixXcd;

namespace {

SiteRegister one_qubit() { return SiteRegister::qubits(1); }
SiteRegister two_qubits() { return SiteRegister::qubits(2); }

OperatorTerm mk(const SiteRegister& reg, Coefficient c, std::vector<TermFactor> fs) {
  return OperatorTerm::make(reg, std::move(c), std::move(fs));
}

std::vector<PrimitiveOp> ops_for(SiteKind k) {
  switch (k) {
    case SiteKind::Qubit:
    case SiteKind::SpinHalf:
      return {PrimitiveOp::I, PrimitiveOp::X, PrimitiveOp::Y, PrimitiveOp::Z,
              PrimitiveOp::Splus, PrimitiveOp::Sminus};
    case SiteKind::FermionMode:
      return {PrimitiveOp::I, PrimitiveOp::Create, PrimitiveOp::Annihilate,
              PrimitiveOp::Number};
    case SiteKind::BosonMode:
      return {PrimitiveOp::I, PrimitiveOp::Create, PrimitiveOp::Annihilate,
              PrimitiveOp::Number, PrimitiveOp::N2};
  }
  return {};
}

SiteRegister random_register(std::mt19937_64& rng, int max_sites = 3) {
  std::uniform_int_distribution<int> nsites(1, max_sites);
  std::uniform_int_distribution<int> kind(0, 3);
  std::vector<Site> sites;
  int n = nsites(rng);
  for (int s = 0; s < n; ++s) {
    switch (kind(rng)) {
      case 0: sites.push_back({SiteKind::Qubit, 2}); break;
      case 1: sites.push_back({SiteKind::FermionMode, 2}); break;
      case 2: sites.push_back({SiteKind::SpinHalf, 2}); break;
      default: sites.push_back({SiteKind::BosonMode, 3}); break;
    }
  }
  return SiteRegister(sites);
}

OperatorTerm random_term(std::mt19937_64& rng, const SiteRegister& reg,
                         const std::vector<int>& allowed_sites) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<TermFactor> fs;
  for (int s : allowed_sites) {
    if (rng() % 2) continue;
    auto ops = ops_for(reg.site(s).kind);
    fs.push_back({s, ops[rng() % ops.size()]});
  }
  if (fs.empty()) fs.push_back({allowed_sites[0], PrimitiveOp::I});
  return OperatorTerm::make(reg, Coefficient(cxd(g(rng), g(rng))), fs);
}

}  // namespace

TEST_CASE("pauli Z realization on one qubit") {
  auto reg = one_qubit();
  Mat m = term_matrix(reg, mk(reg, 1.0, {{0, PrimitiveOp::Z}}));
  CHECK(m(0, 0) == cxd(1, 0));
  CHECK(m(1, 1) == cxd(-1, 0));
  CHECK(m(0, 1) == cxd(0, 0));
  CHECK(m(1, 0) == cxd(0, 0));
}

TEST_CASE("two-site product puts site 0 in the most significant slot") {
  auto reg = two_qubits();
  auto t = mk(reg, 0.5, {{0, PrimitiveOp::X}, {1, PrimitiveOp::Z}});
  Mat m = term_matrix(reg, t);
  CHECK(m(0, 2) == cxd(0.5, 0));  // |00><10| component of X (x) Z, scaled
  CHECK((m - term_oracle(reg, t)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boson number operator is diag(0..d-1)") {
  SiteRegister reg({{SiteKind::BosonMode, 3}});
  Mat m = term_matrix(reg, mk(reg, 1.0, {{0, PrimitiveOp::Number}}));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      CHECK(m(r, c) == (r == c ? cxd(r, 0) : cxd(0, 0)));
}

TEST_CASE("boson ladder entries carry sqrt factors") {
  SiteRegister reg({{SiteKind::BosonMode, 4}});
  Mat cr = term_matrix(reg, mk(reg, 1.0, {{0, PrimitiveOp::Create}}));
  CHECK(cr(1, 0).real() == doctest::Approx(1.0));
  CHECK(cr(2, 1).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(cr(3, 2).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(cr(0, 3) == cxd(0, 0));  // truncation: no wraparound
  Mat n2 = term_matrix(reg, mk(reg, 1.0, {{0, PrimitiveOp::N2}}));
  CHECK(n2(3, 3).real() == doctest::Approx(6.0));  // n(n-1) at n=3
}

TEST_CASE("hamiltonian_matrix sums terms") {
  auto reg = one_qubit();
  Hamiltonian h(reg);
  h.add_term(1.0, {{0, PrimitiveOp::X}});
  h.add_term(1.0, {{0, PrimitiveOp::Z}});
  Mat m = hamiltonian_matrix(h);
  CHECK(m(0, 0) == cxd(1, 0));
  CHECK(m(0, 1) == cxd(1, 0));
  CHECK(m(1, 0) == cxd(1, 0));
  CHECK(m(1, 1) == cxd(-1, 0));

  Hamiltonian empty(reg);
  CHECK(hamiltonian_matrix(empty).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parameter binding substitutes and validates names") {
  auto reg = one_qubit();
  Hamiltonian h(reg);
  h.declare_parameter("m");
  h.add_term(Coefficient::symbol("m"), {{0, PrimitiveOp::Z}});

  auto bound = h.bind_parameters({{"m", 2.0}});
  REQUIRE(bound.terms().size() == 1);
  CHECK(bound.terms()[0].coeff().numeric_value() == cxd(2, 0));
  CHECK(bound.fully_bound());
  CHECK(!h.fully_bound());

  h.declare_parameter("J", 0.25);
  try {
    h.bind_parameters({{"g", 1.0}});  // undeclared
    CHECK(false);
  } catch (const Error& e) {
    std::string msg = e.what();
    // the message lists every declared name
    CHECK(msg.find(" m") != std::string::npos);
    CHECK(msg.find(" J") != std::string::npos);
  }
}

TEST_CASE("partial binding keeps remaining symbols") {
  SiteRegister reg = two_qubits();
  Hamiltonian h(reg);
  h.declare_parameter("a");
  h.declare_parameter("b");
  h.add_term(Coefficient::symbol("a") * Coefficient::symbol("b"),
             {{0, PrimitiveOp::Z}});
  auto part = h.bind_parameters({{"a", 3.0}});
  CHECK(part.parameters().size() == 1);
  CHECK(part.parameters()[0].name == "b");
  auto full = part.bind_parameters({{"b", -1.0}});
  CHECK(full.terms()[0].coeff().numeric_value() == cxd(-3, 0));
}

TEST_CASE("commutation probe") {
  auto reg = two_qubits();
  auto z0 = mk(reg, 1.0, {{0, PrimitiveOp::Z}});
  auto z1 = mk(reg, 1.0, {{1, PrimitiveOp::Z}});
  auto x0 = mk(reg, 1.0, {{0, PrimitiveOp::X}});
  auto xx = mk(reg, 1.0, {{0, PrimitiveOp::X}, {1, PrimitiveOp::X}});
  auto zz = mk(reg, 1.0, {{0, PrimitiveOp::Z}, {1, PrimitiveOp::Z}});
  CHECK(terms_commute(reg, z0, z1));
  CHECK(!terms_commute(reg, x0, z0));
  CHECK(terms_commute(reg, xx, zz));  // overlapping support, still commuting
}

TEST_CASE("hermiticity check") {
  auto reg = one_qubit();
  Hamiltonian h(reg);
  h.add_term(1.0, {{0, PrimitiveOp::X}});
  h.add_term(1.0, {{0, PrimitiveOp::Z}});
  auto rep = hermiticity_check(h);
  CHECK(rep.pass);
  CHECK(rep.max_deviation <= 1e-12);

  Hamiltonian ix(reg);
  ix.add_term(cxd(0, 1), {{0, PrimitiveOp::X}});
  CHECK(!hermiticity_check(ix).pass);

  SiteRegister spin({{SiteKind::SpinHalf, 2}});
  Hamiltonian sp(spin);
  sp.add_term(1.0, {{0, PrimitiveOp::Splus}});
  CHECK(!hermiticity_check(sp).pass);
  sp.add_term(1.0, {{0, PrimitiveOp::Sminus}});
  CHECK(hermiticity_check(sp).pass);
}

TEST_CASE("canonical form sorts factors and tracks fermionic parity") {
  SiteRegister reg({{SiteKind::FermionMode, 2}, {SiteKind::FermionMode, 2}});
  // a_0 a^dag_1 written in descending order: one anticommuting swap.
  auto t = mk(reg, 1.0, {{1, PrimitiveOp::Create}, {0, PrimitiveOp::Annihilate}});
  CHECK(t.factors()[0].site == 0);
  CHECK(t.factors()[1].site == 1);
  CHECK(t.coeff().numeric_value() == cxd(-1, 0));

  // Hermitian conjugate of a^dag_0 a_1 is -(An@0 Cr@1) in canonical form.
  auto hop = mk(reg, 1.0, {{0, PrimitiveOp::Create}, {1, PrimitiveOp::Annihilate}});
  auto adj = hop.adjoint(reg);
  CHECK(adj.factors()[0].op == PrimitiveOp::Annihilate);
  CHECK(adj.factors()[1].op == PrimitiveOp::Create);
  CHECK(adj.coeff().numeric_value() == cxd(-1, 0));
  // and the dense realizations agree with that
  Mat m = term_matrix(reg, hop);
  Mat madj = term_matrix(reg, adj);
  CHECK((madj - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  // adjoint is an involution
  CHECK(adj.adjoint(reg) == hop);
}

TEST_CASE("identity factors are dropped, pure identity normalizes to I@0") {
  auto reg = two_qubits();
  auto t = mk(reg, 2.0, {{0, PrimitiveOp::I}, {1, PrimitiveOp::X}});
  REQUIRE(t.factors().size() == 1);
  CHECK(t.factors()[0].site == 1);
  auto id = mk(reg, 3.0, {{1, PrimitiveOp::I}});
  REQUIRE(id.factors().size() == 1);
  CHECK(id.factors()[0].site == 0);
  CHECK(id.factors()[0].op == PrimitiveOp::I);

  // identity terms merge regardless of how they were spelled
  Hamiltonian h(reg);
  h.add_term(2.0, {{0, PrimitiveOp::I}});
  h.add_term(3.0, {{1, PrimitiveOp::I}});
  REQUIRE(h.terms().size() == 1);
  CHECK(h.terms()[0].coeff().numeric_value() == cxd(5, 0));
}

TEST_CASE("term merge cancels to zero") {
  auto reg = one_qubit();
  Hamiltonian h(reg);
  h.add_term(1.5, {{0, PrimitiveOp::X}});
  h.add_term(-1.5, {{0, PrimitiveOp::X}});
  CHECK(h.terms().empty());
}

TEST_CASE("construction errors") {
  auto reg = one_qubit();
  CHECK_THROWS_AS(mk(reg, 1.0, {{0, PrimitiveOp::Create}}), Error);  // wrong kind
  CHECK_THROWS_AS(mk(reg, 1.0, {{2, PrimitiveOp::X}}), Error);       // out of range
  auto reg2 = two_qubits();
  CHECK_THROWS_AS(mk(reg2, 1.0, {{0, PrimitiveOp::X}, {0, PrimitiveOp::Z}}), Error);
  CHECK_THROWS_AS(SiteRegister({{SiteKind::BosonMode, 1}}), Error);
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(SiteRegister::qubits(13), Error);          // 8192 > 4096
  CHECK_NOTHROW(SiteRegister::qubits(12));                   // 4096 exactly
  CHECK_NOTHROW(SiteRegister::qubits(13, 1 << 14));          // raised cap
  CHECK_THROWS_AS(SiteRegister::qubits(3, 4), Error);        // lowered cap
}

TEST_CASE("symbolic term cannot be densified") {
  auto reg = one_qubit();
  Hamiltonian h(reg);
  h.declare_parameter("m");
  h.add_term(Coefficient::symbol("m"), {{0, PrimitiveOp::Z}});
  CHECK_THROWS_AS(hamiltonian_matrix(h), Error);
}

TEST_CASE("dense realization matches the Kronecker oracle") {
  std::mt19937_64 rng(2026);
  for (int iter = 0; iter < 200; ++iter) {
    auto reg = random_register(rng);
    std::vector<int> sites;
    for (int s = 0; s < static_cast<int>(reg.size()); ++s) sites.push_back(s);
    auto t = random_term(rng, reg, sites);
    Mat got = term_matrix(reg, t);
    Mat want = term_oracle(reg, t);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("product of disjoint terms factorizes") {
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 200) {
    auto reg = random_register(rng, 3);
    if (reg.size() < 2) continue;
    // split sites into two disjoint pools
    std::vector<int> pa, pb;
    for (int s = 0; s < static_cast<int>(reg.size()); ++s)
      (rng() % 2 ? pa : pb).push_back(s);
    if (pa.empty() || pb.empty()) continue;
    auto a = random_term(rng, reg, pa);
    auto b = random_term(rng, reg, pb);
    auto ab = term_product(reg, a, b);
    Mat lhs = term_matrix(reg, ab);
    Mat rhs = term_matrix(reg, a) * term_matrix(reg, b);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    ++done;
  }
}

TEST_CASE("realization is linear in the terms") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    auto reg = random_register(rng);
    std::vector<int> sites;
    for (int s = 0; s < static_cast<int>(reg.size()); ++s) sites.push_back(s);
    Hamiltonian h1(reg), h2(reg), sum(reg);
    for (int k = 0; k < 3; ++k) {
      auto t1 = random_term(rng, reg, sites);
      auto t2 = random_term(rng, reg, sites);
      h1.add_term(t1);
      h2.add_term(t2);
      sum.add_term(t1);
      sum.add_term(t2);
    }
    Mat lhs = hamiltonian_matrix(sum);
    Mat rhs = hamiltonian_matrix(h1) + hamiltonian_matrix(h2);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("canonicalization is idempotent") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    auto reg = random_register(rng);
    std::vector<int> sites;
    for (int s = 0; s < static_cast<int>(reg.size()); ++s) sites.push_back(s);
    auto t = random_term(rng, reg, sites);
    auto again = OperatorTerm::make(reg, t.coeff(), t.factors());
    CHECK(again == t);
  }
}
