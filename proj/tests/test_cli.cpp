#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;
using t3d::cli::run;

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("r-elem returns the polynomial as exponent/coefficient pairs") {
  auto r = call({"r-elem", "--in", "3,1,4", "--out", "0,4,1"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["command"] == "r-elem");
  CHECK(j["pass"] == true);
  CHECK(j["elements"][0]["value"] ==
        json::parse(R"([[2,"-1"],[6,"1"],[8,"1"],[10,"1"],[12,"-1"],[14,"-1"],[16,"-1"],[20,"1"]])"));
  auto col = json::parse(call({"r-elem", "--in", "314"}).out);
  CHECK(col["counts"]["lhs"] == 5);
}

TEST_CASE("verify te in comb mode") {
  auto r = call({"verify", "te", "--state", "3,1,4,5,1,6", "--mode", "comb"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["lhs_chain"].back() == "515327");
  CHECK(j["rhs_chain"].back() == "515327");
  CHECK(j["mode"] == "comb");
  for (const char* key : {"command", "inputs", "mode", "pass", "counts", "elapsed_ms", "details"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("verify f4 truncated") {
  auto r = call({"verify", "f4", "--trunc", "6"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["counts"]["lhs"] == 533);
  CHECK(j["counts"]["rhs"] == 533);
  CHECK(j["mode"] == "truncated");
}

TEST_CASE("usage errors are distinct from failures") {
  CHECK(call({}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"r-elem", "--in", "3,1"}).code == 2);
  CHECK(call({"r-elem", "--in", "3,-1,4"}).code == 2);
  CHECK(call({"verify", "te", "--state", "31451"}).code == 2);
  CHECK(call({"verify", "te", "--mode", "comb", "--trunc", "3"}).code == 2);
  CHECK(call({"verify", "te", "--format", "xml"}).code == 2);
  CHECK(call({"k-elem", "--in", "2,1,1,0", "--trunc", "4"}).code == 2);
  CHECK(call({"verify", "suites", "--mode", "comb"}).code == 2);
}

TEST_CASE("output is independent of the job count") {
  auto a = call({"verify", "rc", "--state", "110101011", "--jobs", "1", "--no-timing"});
  auto b = call({"verify", "rc", "--state", "110101011", "--jobs", "3", "--no-timing"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("birational reports are reproducible for a fixed seed") {
  auto a = call({"verify", "birational", "--seed", "5", "--bound", "3", "--no-timing"});
  auto b = call({"verify", "birational", "--seed", "5", "--bound", "3", "--no-timing", "--jobs", "2"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto j = json::parse(a.out);
  bool found = false;
  for (const auto& c : j["checks"]) {
    if (c.contains("identification") && c["name"].get<std::string>().find("K") != std::string::npos) {
      CHECK(c["identification"] == "(d,c,b,a) = (c,m,d,n), (a~,b~,c~,d~) = (c',m',d',n')");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("csv and text formats") {
  auto c = call({"comb-r", "--in", "3,1,4", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("command,inputs,mode,pass,lhs,rhs,elapsed_ms,details\n", 0) == 0);
  CHECK(c.out.find("image 132") != std::string::npos);
  auto t = call({"verify", "intertwining", "--bound", "1", "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out.find("result: pass") != std::string::npos);
}
