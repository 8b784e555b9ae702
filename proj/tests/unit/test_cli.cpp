#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" SELBERG_CLI "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("kernel subcommand") {
  const auto r = run("kernel --instance zeta --x 1.0");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,re,im\n", 0) == 0);
  CHECK(r.out.find("1,-1.26424111765711") != std::string::npos);
  CHECK(r.out.find(",0\n") != std::string::npos);
  CHECK(run("kernel --instance zeta --x 2 --tilde").out.find("0.036631277777") != std::string::npos);
}

TEST_CASE("meijer-check subcommand") {
  const auto r = run("meijer-check --all");
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 7);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto c4 = line.rfind(',');
    const auto c3 = line.rfind(',', c4 - 1);
    CHECK(std::stod(line.substr(c3 + 1, c4 - c3 - 1)) < 1e-8);
  }
}

TEST_CASE("coeffs subcommand") {
  const auto r = run("coeffs --instance dirichlet:3:1 --N 10");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,a_re,a_im,b_re,b_im\n1,1,0,1,0\n2,-1,0,1,0\n", 0) == 0);
  CHECK(count_lines(r.out) == 11);
}

TEST_CASE("riesz subcommand and determinism across thread counts") {
  const std::string args = "riesz --instance zeta --z 0 --ymin 1e2 --ymax 1e4 --points 9 --N 20000 --json ";
  const auto a = run(args + "/tmp/selberg_cli_t1.json", "RIESZ_THREADS=1");
  const auto b = run(args + "/tmp/selberg_cli_t8.json", "RIESZ_THREADS=8");
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("y,re,im,abs,log10y,log10abs\n", 0) == 0);
  CHECK(count_lines(a.out) == 10);
  CHECK(a.out == b.out);
  const auto ja = slurp("/tmp/selberg_cli_t1.json"), jb = slurp("/tmp/selberg_cli_t8.json");
  CHECK(ja.find("\"fitted_slope\"") != std::string::npos);
  CHECK(ja.find("\"ymin\": 100.0") != std::string::npos);
  // Reports differ only in their own output path.
  auto strip = [](std::string s) {
    const auto p = s.find("selberg_cli_t");
    return s.erase(p, 14);
  };
  CHECK(strip(ja) == strip(jb));
}

TEST_CASE("identity subcommand") {
  const auto r = run("identity --instance zeta --eta 3.5449077018110318 --zeros " SELBERG_DATA_DIR
                     "/zeta_zeros_100.txt --N 10000");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"abs_defect\"") != std::string::npos);
  CHECK(r.out.find("\"r_statement\"") != std::string::npos);
  CHECK(r.out.find("\"manifest\"") != std::string::npos);
}

TEST_CASE("instance files") {
  const std::string path = "/tmp/selberg_cli_instance.json";
  std::ofstream(path) << R"({"Q": 0.5641895835477563, "alpha": [[1,2]], "beta": [[0,0]], "omega": [1,0], "k_F": 1,
                             "euler": {"2": [[1,0]], "3": [[1,0]], "5": [[1,0]], "7": [[1,0]]}})";
  const auto r = run("kernel --instance-file " + path + " --x 1.0");
  CHECK(r.code == 0);
  CHECK(r.out.find("-1.26424111765711") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("kernel --instance nosuch --x 1").code == 2);
  CHECK(run("kernel --instance zeta").code == 2);
  CHECK(run("kernel --instance zeta --x -1").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("riesz --instance zeta --ymin 10 --ymax 20 --points 3 --N 100").code == 3);
  CHECK(run("mellin-check --instance zeta --s 0.25").code == 2);
}
