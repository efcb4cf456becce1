#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "diffrep/io.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "diffrep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = diffrep::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("diffrep_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("compute subcommands", "[cli]") {
  TempDir tmp;
  const auto d = tmp.write("d.json", R"({"group":{"kind":"cyclic","order":7},"elements":[-1,0,1]})");
  const auto t = run({"compute", "tcount", "--set", d, "--against", d, "--k", "3"});
  CHECK(t.code == 0);
  CHECK(t.out == "15\n");
  CHECK(run({"compute", "tcount", "--set", d, "--k", "2"}).out == "7\n");

  const auto a = tmp.write("a.json", R"({"group":{"kind":"cyclic","order":31},"elements":[0,1]})");
  CHECK(run({"compute", "mu", "--set", a}).code == 0);
  const auto e = run({"--format", "json", "compute", "energy", "--set", a, "--k", "3", "--l", "2"});
  CHECK(e.code == 0);
  CHECK(e.out.find("10") != std::string::npos);
  const auto rt = run({"--format", "csv", "compute", "reptable", "--set", a});
  CHECK(rt.out.rfind("element,count", 0) == 0);
}

TEST_CASE("verify subcommands and exit codes", "[cli]") {
  CHECK(run({"--quiet", "verify", "intopt", "--p", "7", "--kmax", "3"}).code == 0);
  CHECK(run({"--quiet", "verify", "chain", "--p", "13", "--count", "20", "--seed", "1"}).code == 0);
  CHECK(run({"verify", "intopt", "--p", "4", "--kmax", "3"}).code == 1);
  CHECK(run({"verify", "bogus"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);

  TempDir tmp;
  const auto d = tmp.write("d.json", R"({"group":{"kind":"cyclic","order":7},"elements":[-1,0,1]})");
  const auto cor = run({"--format", "json", "verify", "corollary", "--set", d, "--k", "3"});
  CHECK(cor.code == 0);
  CHECK(diffrep::Json::parse(cor.out)["verdict"] == "holds");

  const auto a = tmp.write("a.json", R"({"group":{"kind":"cyclic","order":101},"elements":[1,2,3,4,5,6,7,8,9,10]})");
  const auto modp = run({"--format", "json", "verify", "modp", "--set", a, "--delta", "3/10"});
  CHECK(modp.code == 0);
  CHECK(diffrep::Json::parse(modp.out)["verdict"] == "vacuous");
}

TEST_CASE("instances replay through --instance", "[cli]") {
  TempDir tmp;
  const auto dump = tmp.file("dump.json");
  const auto inst = tmp.write("inst.json", R"({"check":"intopt","a":{"group":{"kind":"cyclic","order":5},"elements":[0,2]},"d":{"group":{"kind":"cyclic","order":5},"elements":[0,1,4]},"k":2})");
  const auto r = run({"--format", "json", "--instance", inst, "verify", "intopt"});
  CHECK(r.code == 0);
  const auto j = diffrep::Json::parse(r.out);
  CHECK(j["lhs"] == "2");
  CHECK(j["rhs"] == "4");
  CHECK(run({"--dump", dump, "verify", "intopt", "--p", "5", "--kmax", "2"}).code == 0);
  CHECK_FALSE(std::filesystem::exists(dump));
  CHECK(run({"--instance", tmp.write("bad.json", R"({"check":"unknown"})"), "verify", "intopt"}).code == 1);
}

TEST_CASE("construct and continuous subcommands", "[cli]") {
  const auto m = run({"--format", "json", "construct", "measure0", "--epsilon", "1/4"});
  CHECK(m.code == 0);
  CHECK(diffrep::Json::parse(m.out)["diff_size"] == 143);
  CHECK(run({"construct", "sidon", "--size", "4"}).code == 0);
  CHECK(run({"construct", "interval", "--order", "101", "--a", "1", "--b", "10"}).code == 0);
  const auto r1 = run({"--format", "json", "construct", "random", "--order", "101", "--size", "10", "--seed", "7"});
  const auto r2 = run({"--format", "json", "construct", "random", "--order", "101", "--size", "10", "--seed", "7"});
  CHECK(r1.out == r2.out);
  CHECK(run({"construct", "random", "--order", "10", "--size", "11"}).code == 1);

  TempDir tmp;
  const auto f = tmp.write("f.json", R"({"cells":2,"values":[2,0]})");
  const auto om = run({"continuous", "omega", "--function", f, "--delta", "1/10"});
  CHECK(om.code == 0);
  CHECK(om.out.find("8/5") != std::string::npos);
  CHECK(run({"continuous", "t", "--k", "3"}).out.find('4') != std::string::npos);
  CHECK(run({"--format", "csv", "continuous", "autocorr", "--function", f}).out.rfind("x,value", 0) == 0);
  CHECK(run({"continuous", "omega", "--function", f, "--delta", "0.1x"}).code == 1);
}
