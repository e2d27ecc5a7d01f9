#include "doctest.h"
#include "helpers.hpp"
#include "t3d/kmat.hpp"
#include "t3d/rmat.hpp"
#include "t3d/tensorop.hpp"

using namespace th;
using namespace t3d;

TEST_CASE("states and kets") {
  OccState s = parse_state("314516");
  CHECK(s.size() == 6);
  CHECK(s[3] == 5);
  CHECK(ket_string(s) == "314516");
  CHECK(parse_state("3,1,4") == OccState{3, 1, 4});
  CHECK(ket_string(OccState{1, 12, 0}) == "1,12,0");
  CHECK_THROWS_AS(parse_state("3,-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("3x"), std::invalid_argument);
  CHECK(OccState{1, 2} < OccState{2, 0});
}

TEST_CASE("signatures are validated") {
  auto sig = SlotSignature::parse("q2,q,q2,q");
  CHECK(sig.to_string() == "q2,q,q2,q");
  validate_factor({OpKind::K, {0, 1, 2, 3}}, sig);
  CHECK_THROWS_AS(validate_factor({OpKind::R, {0, 1, 2}}, sig), SignatureError);
  CHECK_THROWS_AS(validate_factor({OpKind::KRev, {0, 1, 2, 3}}, sig), SignatureError);
  validate_factor({OpKind::KRev, {3, 2, 1, 0}}, sig);
  CHECK_THROWS_AS(validate_factor({OpKind::K, {0, 1, 0, 3}}, sig), SignatureError);
  CHECK_THROWS_AS(SlotSignature::parse("q,q3"), SignatureError);
}

TEST_CASE("R on |314>") {
  auto sig = SlotSignature::parse("q,q,q");
  QVec v = QVec::basis(OccState{3, 1, 4}, LaurentPoly(1));
  QVec out = apply_r(v, sig, {0, 1, 2});
  CHECK(out.size() == 5);
  CHECK(*out.find(OccState{4, 0, 5}) == Q(12));
  CHECK(*out.find(OccState{0, 4, 1}) == prod({Q(2, -1), omq(4), omq(6), omq(8)}));
  CHECK(apply_r(QVec(), sig, {0, 1, 2}).is_zero());
  CHECK(apply_r(out, sig, {0, 1, 2}) == v);
  CHECK_THROWS_AS(apply_r(v, SlotSignature::parse("q,q2,q"), {0, 1, 2}), SignatureError);
}

TEST_CASE("K on |2110>") {
  auto sig = SlotSignature::parse("q2,q,q2,q");
  QVec v = QVec::basis(OccState{2, 1, 1, 0}, LaurentPoly(1));
  QVec out = apply_k(v, sig, {0, 1, 2, 3});
  CHECK(out.size() == 6);
  CHECK(*out.find(OccState{4, 0, 0, 3}) == Q(4));
  CHECK(apply_k(out, sig, {0, 1, 2, 3}) == v);
  auto rsig = SlotSignature::parse("q,q2,q,q2");
  QVec rv = QVec::basis(OccState{0, 1, 1, 2}, LaurentPoly(1));
  QVec rout = apply_k(rv, rsig, {0, 1, 2, 3}, true);
  CHECK(*rout.find(OccState{3, 0, 0, 4}) == Q(4));
}

TEST_CASE("combinatorial factors") {
  CHECK(apply_comb(parse_state("314516"), {OpKind::R, {0, 1, 2}}) == parse_state("132516"));
  CHECK(apply_comb(parse_state("211034212"), {OpKind::K, {0, 1, 2, 3}}) == parse_state("301134212"));
}

TEST_CASE("serial and parallel application agree") {
  auto sig = SlotSignature::parse("q,q,q,q,q,q");
  TensorEngine<LaurentPoly> eng(sig);
  QVec v = eng.basis(parse_state("314516"));
  std::vector<Factor> fs{{OpKind::R, {2, 4, 5}}, {OpKind::R, {1, 3, 5}}, {OpKind::R, {0, 3, 4}}, {OpKind::R, {0, 1, 2}}};
  QVec a = eng.apply_product(v, fs, 1);
  QVec b = eng.apply_product(v, fs, 4);
  CHECK(a == b);
  CHECK(a.size() > 100);
}

TEST_CASE("truncated application commutes with truncation") {
  auto sig = SlotSignature::parse("q2,q,q2,q,q");
  TensorEngine<LaurentPoly> exact(sig);
  TensorEngine<TruncPoly> trunc(sig, CoefOps<TruncPoly>{5});
  std::vector<Factor> fs{{OpKind::K, {0, 1, 2, 3}}, {OpKind::R, {1, 3, 4}}};
  OccState s{1, 2, 1, 0, 2};
  QVec e = exact.apply_product(exact.basis(s), fs);
  TVec t = trunc.apply_product(trunc.basis(s), fs);
  std::vector<TVec::Entry> reduced;
  for (const auto& [st, c] : e.entries()) reduced.emplace_back(st, trunc_reduce(c, 5));
  CHECK(TVec::from_entries(reduced) == t);
}

TEST_CASE("disjoint factors commute") {
  auto sig = SlotSignature::parse("q,q,q,q2,q,q2,q");
  TensorEngine<LaurentPoly> eng(sig);
  Factor r{OpKind::R, {0, 1, 2}};
  Factor k{OpKind::K, {3, 4, 5, 6}};
  QVec v = eng.basis(OccState{2, 1, 3, 1, 2, 0, 1});
  CHECK(eng.apply(eng.apply(v, r), k) == eng.apply(eng.apply(v, k), r));
}

TEST_CASE("oscillators") {
  auto k = osc_apply(Osc::K, Base::Q, 2);
  CHECK(k->first == 2);
  CHECK(k->second == Q(2));
  CHECK_FALSE(osc_apply(Osc::Minus, Base::Q, 0).has_value());
  auto m = osc_apply(Osc::Minus, Base::Q2, 1);
  CHECK(m->first == 0);
  CHECK(m->second == omq(4));
  CHECK(osc_apply(Osc::Plus, Base::Q2, 3)->first == 4);
}

TEST_CASE("intertwining relations") {
  CHECK(intertwining_relations().size() == 16);
  for (const auto& rel : intertwining_relations()) {
    auto rep = check_intertwining(rel.r, rel.s, 2);
    INFO(rep.name);
    CHECK(rep.pass);
    CHECK(rep.checked == 81);
  }
  CHECK(check_intertwining(5, 5, 3).pass);
}

TEST_CASE("R recursions") {
  auto rep = check_r_recursions(3);
  CHECK(rep.pass);
  CHECK(rep.failures == 0);
}
