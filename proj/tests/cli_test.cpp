// Golden-file and contract tests for the command-line tool. The binary path
// arrives via HDUAL_CLI and the golden directory via HDUAL_GOLDEN (both set
// by CTest).

#include <catch2/catch.hpp>

#include <hdual/special.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

std::string cli_path() {
    const char* p = std::getenv("HDUAL_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string golden_dir() {
    const char* p = std::getenv("HDUAL_GOLDEN");
    REQUIRE(p != nullptr);
    return p;
}

struct proc_result {
    int code = -1;
    std::string out;
};

proc_result run_cli(const std::string& args) {
    const std::string cmd = "'" + cli_path() + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    proc_result r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("golden: derivative table of the identity") {
    const auto r = run_cli("deriv -f 'x' -x 5 -k 2");
    REQUIRE(r.code == 0);
    REQUIRE(r.out == slurp(golden_dir() + "/deriv_identity.csv"));
}

TEST_CASE("golden: integer Hermite sweep") {
    const auto r = run_cli("hermite -m 3 --tau 1 --grid 0:4:5");
    REQUIRE(r.code == 0);
    REQUIRE(r.out == slurp(golden_dir() + "/hermite_h3.csv"));
}

TEST_CASE("golden: dual Gaussian series terms") {
    const auto r = run_cli("integral gaussian -a 1 -b 1 -k 2");
    REQUIRE(r.code == 0);
    REQUIRE(r.out == slurp(golden_dir() + "/integral_gaussian.csv"));
}

TEST_CASE("derivative rows match the closed-form values") {
    const auto r = run_cli("deriv -f 'exp(-x^2)' -x 1 -k 3");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "m,value");
    const double e1 = std::exp(-1.0);
    const double want[] = {e1, -2.0 * e1, 2.0 * e1, 4.0 * e1};
    for (int m = 0; m <= 3; ++m) {
        std::string line;
        REQUIRE(std::getline(in, line));
        REQUIRE(line.substr(0, 2) == std::to_string(m) + ",");
        const double v = std::strtod(line.c_str() + 2, nullptr);
        REQUIRE(v == Approx(want[m]).epsilon(1e-13));
    }
}

TEST_CASE("deterministic output across runs") {
    for (const std::string& args :
         {std::string("beam --alpha 1 -m 2 --tau 0.2 --grid -3:3:31"),
          std::string("weyl -f 'exp(-x^2)' --gamma 1 -a 0.5 -b 0.2 -k 2 --tau 0.3 --grid -2:2:9 --verify"),
          std::string("verify --only hermite")}) {
        const auto r1 = run_cli(args);
        const auto r2 = run_cli(args);
        REQUIRE(r1.code == 0);
        REQUIRE(r1.out == r2.out);
        REQUIRE(!r1.out.empty());
    }
}

TEST_CASE("heat sweep honours the initial profile at tau = 0") {
    const auto r = run_cli("heat -a 1 -b 0.2 -k 2 --grid -1:1:5 --verify");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "x,value,oracle,abs_err");
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const auto c3 = line.find(',', c2 + 1);
        const double x = std::strtod(line.c_str(), nullptr);
        const double v = std::strtod(line.c_str() + c1 + 1, nullptr);
        const double abs_err = std::strtod(line.c_str() + c3 + 1, nullptr);
        REQUIRE(v == Approx(std::exp(-x * x) * hdual::trunc_exp(2, -0.2 * x * x)).margin(1e-13));
        REQUIRE(abs_err <= 1e-13);
    }
}

TEST_CASE("heat sweep stays within the convolution oracle budget") {
    const auto r = run_cli("heat -a 1 -b 0.2 -k 2 --tau 0.1 --grid -2:2:9 --verify");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto c3 = line.rfind(',');
        REQUIRE(std::strtod(line.c_str() + c3 + 1, nullptr) <= 1e-7);
    }
}

TEST_CASE("beam norms are conserved") {
    const auto r = run_cli("beam --alpha 1 -m 2 --tau 0 --tau 0.2 --norm");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "tau,norm");
    double norms[2] = {0.0, 0.0};
    for (double& n : norms) {
        REQUIRE(std::getline(in, line));
        n = std::strtod(line.c_str() + line.find(',') + 1, nullptr);
    }
    REQUIRE(norms[0] == Approx(norms[1]).epsilon(1e-6));
}

TEST_CASE("beam profile at tau = 0 is real with squared intensity") {
    const auto r = run_cli("beam --alpha 1 -m 2 --grid -2:2:9");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "x,re,im,intensity");
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const auto c3 = line.find(',', c2 + 1);
        const double re = std::strtod(line.c_str() + c1 + 1, nullptr);
        const double im = std::strtod(line.c_str() + c2 + 1, nullptr);
        const double intensity = std::strtod(line.c_str() + c3 + 1, nullptr);
        REQUIRE(std::abs(im) < 1e-14);
        REQUIRE(intensity == Approx(re * re).margin(1e-14));
    }
}

TEST_CASE("modified Hermite sweep matches the in-process values") {
    const auto r = run_cli("hermite -m 4 -a 0.2 -b 0.1 -k 2 --grid 0:1:3");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    for (const double x : {0.0, 0.5, 1.0}) {
        REQUIRE(std::getline(in, line));
        const double v = std::strtod(line.c_str() + line.find(',') + 1, nullptr);
        REQUIRE(v == Approx(hdual::modified_hermite_order2(4, x, 0.2, 0.1)).epsilon(1e-12));
    }
}

TEST_CASE("beam reference column") {
    const auto r = run_cli("beam --alpha 0.8 -m 4 -p 6 --grid -1:1:3");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "x,re,im,intensity,reference");
    std::getline(in, line); // x = -1: reference is exp(-1)
    const double ref = std::strtod(line.c_str() + line.rfind(',') + 1, nullptr);
    REQUIRE(ref == Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("exit codes") {
    REQUIRE(run_cli("deriv -f 'x' -x 1 -k 1").code == 0);
    REQUIRE(run_cli("deriv -f 'exp(-x^2' -x 1 -k 2").code == 2); // unbalanced parenthesis
    REQUIRE(run_cli("deriv -f 'foo(x)' -x 1 -k 2").code == 2);   // unknown identifier
    REQUIRE(run_cli("deriv -f 'x' -x 1 -k 0").code == 2);        // order contract
    REQUIRE(run_cli("nosuchcommand").code == 2);
    REQUIRE(run_cli("integral nosuchfamily -a 1").code == 2);
    REQUIRE(run_cli("heat -a 1 --tau -0.3 --grid -1:1:5").code == 3); // 1+4*tau*a < 0
    REQUIRE(run_cli("deriv -f 'ln(x)' -x -2 -k 2").code == 3);        // domain error
    REQUIRE(run_cli("beam --alpha 0 -m 1").code == 2);
    REQUIRE(run_cli("heat -a 1 --grid 1:0:5").code == 2); // malformed grid
    REQUIRE(run_cli("hermite -m 70").code == 2);          // degree cap
    REQUIRE(run_cli("--help").code == 0);
}

TEST_CASE("verify command") {
    const auto ok = run_cli("verify");
    REQUIRE(ok.code == 0);
    REQUIRE(ok.out.find("passed all") != std::string::npos);
    REQUIRE(ok.out.find("FAIL") == std::string::npos);

    const auto filtered = run_cli("verify --only jet");
    REQUIRE(filtered.code == 0);
    REQUIRE(filtered.out.find("jet.ring_laws") != std::string::npos);
    REQUIRE(filtered.out.find("matrix.") == std::string::npos);

    const auto mutated = run_cli("verify --mutate heat-sign");
    REQUIRE(mutated.code == 1);
    REQUIRE(mutated.out.find("FAIL evolution.heat_series_agreement") != std::string::npos);

    REQUIRE(run_cli("verify --mutate nonsense").code == 2);
}

TEST_CASE("output file option") {
    const std::string path = "cli_test_output.csv";
    std::remove(path.c_str());
    const auto r = run_cli("deriv -f 'x' -x 5 -k 2 -o " + path);
    REQUIRE(r.code == 0);
    REQUIRE(r.out.empty());
    REQUIRE(slurp(path) == slurp(golden_dir() + "/deriv_identity.csv"));
    std::remove(path.c_str());
}
