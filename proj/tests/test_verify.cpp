#include "doctest.h"
#include "t3d/verify.hpp"

using namespace t3d;

TEST_CASE("factor lists parse in both notations") {
  auto fs = parse_factors("R356 K(16,10,8,7) S(1,2,3) K1234");
  REQUIRE(fs.size() == 4);
  CHECK(fs[0] == Factor{OpKind::R, {2, 4, 5}});
  CHECK(fs[1] == Factor{OpKind::KRev, {6, 7, 9, 15}});
  CHECK(fs[2] == Factor{OpKind::S, {0, 1, 2}});
  CHECK(fs[3] == Factor{OpKind::K, {0, 1, 2, 3}});
  CHECK_THROWS_AS(parse_factors("X123"), std::invalid_argument);
  CHECK_THROWS_AS(parse_factors("R12"), std::invalid_argument);
  CHECK_THROWS_AS(parse_factors("R(1,3,2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_factors("R(1,2,3"), std::invalid_argument);
}

TEST_CASE("signature inference") {
  CHECK(reflection_c_spec().signature.to_string() == "q2,q,q2,q,q,q,q2,q,q");
  CHECK(reflection_b_spec().signature.to_string() == "q,q2,q,q2,q2,q2,q,q2,q2");
  const auto& f4 = f4_spec();
  CHECK(f4.lhs.size() == 50);
  CHECK(f4.signature == SlotSignature::with_q2(24, {0, 1, 3, 4, 7, 8, 10, 13, 14, 15, 17, 20}));
  CHECK_THROWS_AS(infer_signature(4, parse_factors("R123 K1234"), {}), SignatureError);
  CHECK_THROWS_AS(infer_signature(4, parse_factors("R123"), {}), SignatureError);
}

TEST_CASE("comb chains") {
  auto te = verify_tetrahedron(parse_state("314516"), Mode::Comb);
  CHECK(te.pass);
  CHECK(te.lhs_chain[1] == "132516");
  CHECK(te.rhs_chain[1] == "311543");
  CHECK(te.lhs_chain.back() == "515327");
  CHECK(te.rhs_chain.back() == "515327");

  auto rc = verify_reflection_c(parse_state("211034212"), Mode::Comb);
  CHECK(rc.pass);
  CHECK(rc.lhs_chain[1] == "301134212");
  CHECK(rc.lhs_chain[2] == "601131242");
  CHECK(rc.lhs_chain[3] == "631101272");
  CHECK(rc.rhs_chain[1] == "211307212");
  CHECK(rc.rhs_chain[2] == "211207221");
  CHECK(rc.rhs_chain[3] == "212207123");
  CHECK(rc.lhs_chain.back() == "622520119");
  CHECK(rc.rhs_chain.back() == "622520119");
}

TEST_CASE("vacuum and small states") {
  auto v = verify_tetrahedron(parse_state("000000"), Mode::Quantum);
  CHECK(v.pass);
  CHECK(v.lhs_count == 1);
  CHECK(verify_reflection_c(parse_state("000000000"), Mode::Quantum).pass);
  CHECK(verify_tetrahedron(parse_state("110101"), Mode::Quantum).pass);
  CHECK(verify_reflection_c(parse_state("101010101"), Mode::Quantum).pass);
  auto b = verify_reflection_b(parse_state("011000000"));
  CHECK(b.pass);
  CHECK(b.lhs_count == b.rhs_count);
  CHECK_THROWS_AS(verify_tetrahedron(parse_state("1111"), Mode::Quantum), std::invalid_argument);
}

TEST_CASE("truncated mode agrees with the exact result") {
  auto ex = verify_reflection_c(parse_state("110101011"), Mode::Quantum);
  auto tr = verify_equation(reflection_c_spec(), parse_state("110101011"), Mode::Truncated, 1, 200);
  CHECK(ex.pass);
  CHECK(tr.pass);
  CHECK(ex.lhs_count == tr.lhs_count);
}

TEST_CASE("F4 on a small state") {
  OccState s = parse_state("100000000000000000000001");
  auto r = verify_f4(s, 4);
  CHECK(r.pass);
  CHECK(r.lhs_count >= 1);
  auto c = verify_equation(f4_spec(), f4_reference_state(), Mode::Comb);
  CHECK(c.pass);
}

TEST_CASE("comb maps agree with q = 0") {
  auto r = check_comb_r(6);
  CHECK(r.pass);
  CHECK(r.checked == 84);
  auto k = check_comb_k(5);
  CHECK(k.pass);
}

TEST_CASE("structure suites at bound 2") {
  for (const auto& rep : verify_suites(2)) {
    INFO(rep.name);
    CHECK(rep.pass);
    CHECK(rep.checked > 0);
  }
}
