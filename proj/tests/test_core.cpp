/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "threshrep/channels.hpp"
#include "threshrep/random.hpp"

using namespace threshrep;

namespace {

double diff(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

CMat diag2(double a, double b) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("tensor on identities and projectors") {
  CHECK(diff(tensor(identity(2), identity(2)), identity(4)) == 0.0);
  CMat expect = CMat::Zero(4, 4);
  expect(1, 1) = 1.0;
  CHECK(diff(tensor(diag2(1, 0), diag2(0, 1)), expect) == 0.0);
}

TEST_CASE("tensor matches entrywise expansion") {
  Rng rng(11);
  CMat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 2, 2);
  CMat t = tensor(a, b);
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j)
      for (long p = 0; p < 2; ++p)
        for (long q = 0; q < 2; ++q)
          CHECK(std::abs(t(2 * i + p, 2 * j + q) - a(i, j) * b(p, q)) == 0.0);
  CHECK(std::abs(t.trace() - a.trace() * b.trace()) < 1e-12);
}

TEST_CASE("reorder permutes factors and round-trips") {
  Rng rng(12);
  CMat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 3, 3);
  LabeledOp ab(tensor(a, b), SpaceDims({{"A", 2}, {"B", 3}}));
  LabeledOp ba = reorder(ab, {"B", "A"});
  CHECK(diff(ba.m, tensor(b, a)) < 1e-14);
  LabeledOp back = reorder(ba, {"A", "B"});
  CHECK(diff(back.m, ab.m) < 1e-14);

  CMat big = random_gaussian(rng, 12, 12);
  LabeledOp op(big, SpaceDims({{"A", 2}, {"B", 3}, {"C", 2}}));
  LabeledOp rt = reorder(reorder(op, {"C", "A", "B"}), {"A", "B", "C"});
  CHECK(diff(rt.m, big) == 0.0);
}

TEST_CASE("partial trace basics") {
  Rng rng(13);
  DensityOperator ra = random_density(rng, SpaceDims::single("A", 2));
  DensityOperator rb = random_density(rng, SpaceDims::single("B", 3));
  LabeledOp prod = tensor(ra.op, rb.op);
  CHECK(diff(partial_trace(prod, {"B"}).m, ra.op.m) < 1e-10);
  CHECK(diff(partial_trace(prod, {"A"}).m, rb.op.m) < 1e-10);

  LabeledOp i4(identity(4), SpaceDims({{"A", 2}, {"B", 2}}));
  CHECK(diff(partial_trace(i4, {"B"}).m, 2.0 * identity(2)) == 0.0);

  CVec bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  LabeledOp proj(bell * bell.adjoint(), SpaceDims({{"A", 2}, {"B", 2}}));
  CHECK(diff(partial_trace(proj, {"A"}).m, 0.5 * identity(2)) < 1e-15);

  CMat m = random_gaussian(rng, 12, 12);
  LabeledOp op(m, SpaceDims({{"A", 2}, {"B", 3}, {"C", 2}}));
  CHECK(std::abs(partial_trace(op, {"B", "C"}).m.trace() - m.trace()) < 1e-12);

  CHECK(diff(partial_trace(tensor(ra.op, rb.op).m,
                           SpaceDims({{"A", 2}, {"B", 3}}), {"B"}),
             ra.op.m) < 1e-10);
  CHECK_THROWS_AS(partial_trace(op, {"Q"}), DimensionError);
}

TEST_CASE("partial transpose acts on the named factor") {
  Rng rng(14);
  CMat a = random_gaussian(rng, 2, 2), b = random_gaussian(rng, 3, 3);
  LabeledOp ab(tensor(a, b), SpaceDims({{"A", 2}, {"B", 3}}));
  CHECK(diff(partial_transpose(ab, {"B"}).m, tensor(a, CMat(b.transpose()))) < 1e-14);
  CHECK(diff(partial_transpose(partial_transpose(ab, {"A"}), {"B"}).m,
             transpose(ab).m) < 1e-14);
}

TEST_CASE("dimension cap") {
  SpaceDims big({{"A", 64}, {"B", 64}, {"C", 2}});
  CHECK_THROWS_AS(big.total_dim(), CapExceededError);
  set_max_total_dim(10000);
  CHECK(big.total_dim() == 8192);
  set_max_total_dim(4096);
  CHECK(max_total_dim() == 4096);
}

TEST_CASE("validation reports") {
  DensityOperator ok(0.5 * identity(2), SpaceDims::single("A", 2));
  CHECK(validate(ok).pass());
  DensityOperator bad(identity(2), SpaceDims::single("A", 2));
  auto rep = validate(bad);
  CHECK_FALSE(rep.pass());
  bool saw = false;
  for (const auto& item : rep.items)
    if (item.name == "unit trace") {
      saw = true;
      CHECK(item.residual == doctest::Approx(1.0));
    }
  CHECK(saw);

  BinaryPOVM povm(0.3 * identity(2), 0.7 * identity(2), SpaceDims::single("A", 2));
  CHECK(validate(povm).pass());
}

TEST_CASE("identity channel leaves the state unchanged") {
  Rng rng(15);
  DensityOperator rho = random_density(rng, SpaceDims({{"X", 2}, {"Z", 3}}));
  ChoiOperator id = identity_choi(SpaceDims::single("X", 2), SpaceDims::single("Y", 2));
  CHECK(validate(id).pass());
  DensityOperator out = apply_channel(id, rho);
  LabeledOp expect = reorder(rho.op, {"Z", "X"});
  CHECK(diff(reorder(out.op, {"Z", "Y"}).m, expect.m) < 1e-12);
}

TEST_CASE("depolarizing channel maps everything to the maximally mixed state") {
  Rng rng(16);
  ChoiOperator dep(0.5 * identity(4), SpaceDims::single("X", 2),
                   SpaceDims::single("Y", 2));
  CHECK(validate(dep).pass());
  DensityOperator rho = random_density(rng, SpaceDims::single("X", 2));
  CHECK(diff(apply_channel(dep, rho).op.m, 0.5 * identity(2)) < 1e-12);
}

TEST_CASE("apply_channel agrees with Kraus evaluation") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    ChoiOperator c = random_cptp_choi(rng, SpaceDims::single("X", 2),
                                      SpaceDims::single("Y", 3));
    CHECK(validate(c).pass());
    DensityOperator rho = random_density(rng, SpaceDims::single("X", 2));
    DensityOperator out = apply_channel(c, rho);
    CMat expect = CMat::Zero(3, 3);
    for (const auto& k : kraus_from_choi(c)) expect += k * rho.op.m * k.adjoint();
    CHECK(diff(out.op.m, expect) < 1e-9);
    CHECK(validate(out).pass());
    CHECK(std::abs(out.op.m.trace() - complexd(1.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("link product composes channels") {
  ChoiOperator id1 = identity_choi(SpaceDims::single("X", 2), SpaceDims::single("Y", 2));
  ChoiOperator id2 = identity_choi(SpaceDims::single("Y", 2), SpaceDims::single("Z", 2));
  ChoiOperator once = link_product(id1, id2);
  CHECK(diff(once.matrix,
             identity_choi(SpaceDims::single("X", 2), SpaceDims::single("Z", 2)).matrix) <
        1e-12);

  Rng rng(18);
  CMat u = random_unitary(rng, 2);
  ChoiOperator cu = choi_from_kraus({u}, SpaceDims::single("X", 2),
                                    SpaceDims::single("Y", 2));
  ChoiOperator cud = choi_from_kraus({CMat(u.adjoint())}, SpaceDims::single("Y", 2),
                                     SpaceDims::single("Z", 2));
  CHECK(diff(link_product(cu, cud).matrix, once.matrix) < 1e-12);

  for (int trial = 0; trial < 10; ++trial) {
    ChoiOperator a = random_cptp_choi(rng, SpaceDims::single("X", 2),
                                      SpaceDims::single("Y", 3));
    ChoiOperator b = random_cptp_choi(rng, SpaceDims::single("Y", 3),
                                      SpaceDims::single("Z", 2));
    std::vector<CMat> prods;
    for (const auto& ka : kraus_from_choi(a))
      for (const auto& kb : kraus_from_choi(b)) prods.push_back(kb * ka);
    ChoiOperator expect =
        choi_from_kraus(prods, SpaceDims::single("X", 2), SpaceDims::single("Z", 2));
    CHECK(diff(link_product(a, b).matrix, expect.matrix) < 1e-9);
  }
}

TEST_CASE("link product is associative") {
  Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    ChoiOperator a = random_cptp_choi(rng, SpaceDims::single("A", 2),
                                      SpaceDims::single("B", 3));
    ChoiOperator b = random_cptp_choi(rng, SpaceDims::single("B", 3),
                                      SpaceDims::single("C", 2));
    ChoiOperator c = random_cptp_choi(rng, SpaceDims::single("C", 2),
                                      SpaceDims::single("D", 3));
    CMat left = link_product(link_product(a, b), c).matrix;
    CMat right = link_product(a, link_product(b, c)).matrix;
    CHECK(diff(left, right) < 1e-9);
  }
}

TEST_CASE("link product rejects nonsense") {
  ChoiOperator a = identity_choi(SpaceDims::single("X", 2), SpaceDims::single("Y", 2));
  ChoiOperator b = identity_choi(SpaceDims::single("P", 2), SpaceDims::single("Q", 2));
  CHECK_THROWS_AS(link_product(a, b), DimensionError);
  ChoiOperator ab = link_product(a, b, true);
  CHECK(ab.in_spaces.total_dim() == 4);
  CHECK(ab.out_spaces.total_dim() == 4);
}
