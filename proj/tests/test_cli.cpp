#include "itres/cli.hpp"
#include "itres/poly_io.hpp"

#include <doctest.h>

#include <sstream>

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = itres::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("thom and residual") {
    auto r = run({"thom", "--k", "2", "--m", "3", "--n", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "c_3\n");
    CHECK(run({"thom", "--k", "3", "--m", "2", "--n", "2"}).out == "c_1^2 + c_2\n");
    CHECK(run({"thom", "--k", "3", "--m", "2", "--n", "2", "--latex"}).out == "c_{1}^{2} + c_{2}\n");
    auto j = itres::Json::parse(run({"thom", "--k", "3", "--m", "2", "--n", "2", "--json"}).out);
    CHECK(j.contains("terms"));
    CHECK(run({"residual", "--q", "2", "--m", "2", "--n", "5"}).out == "c_3\n");
  }

  TEST_CASE("warnings and errors") {
    auto low = run({"thom", "--k", "2", "--m", "3", "--n", "2"});
    CHECK(low.err.find("warning:") != std::string::npos);
    auto bad = run({"thom", "--k", "7", "--m", "2", "--n", "3"});
    CHECK(bad.code == 2);
    CHECK(bad.err.rfind("error:", 0) == 0);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"thom", "--k", "x", "--m", "2", "--n", "3"}).code == 2);
    CHECK(run({"thom", "--m", "2", "--n", "3"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"residue", "--form", "{\"numerator\": \"1\"}"}).code == 2);
    CHECK(run({"residue", "--form", "@/nonexistent.json"}).code == 2);
  }

  TEST_CASE("residue, qtable and mdeg") {
    CHECK(run({"residue", "--form", std::string("@") + ITRES_TEST_DATA + "/dz_over_z.json"}).out == "-1\n");
    CHECK(run({"residue", "--form",
               R"({"numerator": "1", "factors": ["z1", "z2"], "residue_vars": ["z1", "z2"]})"})
              .out == "1\n");
    CHECK(run({"qtable", "--k", "4"}).out == "2*z1 + z2 - z4\n");
    CHECK(run({"qtable", "--k", "2"}).out == "1\n");
    CHECK(run({"mdeg", "--gen", "2,0", "--gen", "0,3"}).out == "6*eta1*eta2\n");
    CHECK(run({"mdeg", "--gen", "1,2", "--weights", "a,b"}).code == 0);
  }

  TEST_CASE("multipoint and tauint") {
    auto mp = run({"multipoint", "--k", "2", "--m", "2", "--n", "3"});
    CHECK(mp.code == 0);
    CHECK_FALSE(mp.out.empty());
    auto rep = run({"multipoint", "--k", "3", "--m", "2", "--n", "3", "--report"});
    CHECK(rep.code == 0);
    CHECK(rep.out.find("6") != std::string::npos);
    CHECK(run({"multipoint", "--k", "2", "--m", "2", "--n", "3", "--side", "sideways"}).code == 2);

    auto t = run({"tauint", "--k", "1", "--m", "1", "--r", "1", "--split-model", "3"});
    CHECK(t.code == 0);
    CHECK(t.out.find("value: 6\n") != std::string::npos);
    auto tj = itres::Json::parse(run({"tauint", "--k", "1", "--m", "2", "--r", "2", "--split-model", "2,3", "--json"}).out);
    CHECK(tj.at("value") == "30");
    CHECK(tj.at("terms").size() == 2);
    auto w = run({"tauint", "--k", "2", "--m", "1", "--r", "1"});
    CHECK(w.err.find("warning:") != std::string::npos);
    CHECK(run({"tauint", "--k", "1", "--m", "1", "--r", "1", "--pairing", "/nonexistent.json"}).code == 2);
  }

  TEST_CASE("output is reproducible") {
    std::vector<std::vector<std::string>> cmds{{"thom", "--k", "4", "--m", "2", "--n", "3", "--json"},
                                               {"multipoint", "--k", "3", "--m", "2", "--n", "4", "--json"},
                                               {"tauint", "--k", "2", "--m", "2", "--r", "2", "--json"}};
    for (const auto& c : cmds) {
      auto a = run(c), b = run(c);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
}
