#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string path = "cli_out.csv";
  std::remove(path.c_str());
  const std::string cmd = std::string(HFILON_CLI) + " " + args + " --out " + path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return {status, ss.str()};
}

long count_lines(const std::string& s, bool data_only) {
  std::istringstream is(s);
  std::string line;
  long n = 0;
  while (std::getline(is, line))
    if (!data_only || (!line.empty() && line[0] != '#')) ++n;
  return n;
}

}  // namespace

TEST_CASE("moments1 writes a config comment, a header and N + 1 rows") {
  const Result r = run("moments1 --omega 500 --beta 1 --N 1000");
  REQUIRE(r.status == 0);
  CHECK(r.out.rfind("# command=moments1", 0) == 0);
  CHECK(r.out.find("\nn,re,im,method\n") != std::string::npos);
  CHECK(count_lines(r.out, true) == 1002);
  CHECK(r.out.find("oliver-bvp") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  const Result a = run("moments2 --omega 30 --alpha 0.3 --beta 0.4 --N 50");
  const Result b = run("moments2 --omega 30 --alpha 0.3 --beta 0.4 --N 50");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("eval1 reports the value and the oracle error") {
  const Result r = run("eval1 --omega 100 --beta 1.5 --s 1 --nu 8 --amp demo1");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("re,im,oracle_re,oracle_im,abs_err,s_used,moments") != std::string::npos);
}

TEST_CASE("converge1 reports fitted slopes") {
  const Result r = run("converge1 --beta 1.5 --nu 8 --s 0,1 --omega-range 50:300:6");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("# slope s=0") != std::string::npos);
  CHECK(r.out.find("# slope s=1") != std::string::npos);
}

TEST_CASE("invalid input exits nonzero") {
  CHECK(run("moments2 --omega 10 --alpha 0.5 --beta 1.2 --N 5").status != 0);
  CHECK(run("eval2 --omega 10 --nu 8").status != 0);
  CHECK(run("converge1 --omega-range 50:10").status != 0);
  CHECK(run("eval1 --amp bogus").status != 0);
  CHECK(run("nosuchcommand").status != 0);
}
