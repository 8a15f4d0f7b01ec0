#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status = -1;
    std::string out;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(PLW_CLI_PATH) + " " + args + " 2>/dev/null";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
    const int raw = pclose(pipe);
    o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::size_t count_data_rows(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    std::size_t rows = 0;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("plw_cli_" + name)) {
        fs::remove_all(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& leaf) const { return (dir / leaf).string(); }
};

}  // namespace

TEST_CASE("compute writes one row per degree and is reproducible") {
    Scratch s("compute");
    const Outcome a = run("compute --lambda 1 --t 1 --nmax 50 --out " + (s / "a"));
    REQUIRE(a.status == 0);
    const std::string first = slurp(s / "a/point_000.csv");
    CHECK(first.find("n,alpha,beta,h,p,R,r\n") != std::string::npos);
    CHECK(count_data_rows(first) == 51);
    REQUIRE(run("compute --lambda 1 --t 1 --nmax 50 --out " + (s / "b")).status == 0);
    CHECK(slurp(s / "b/point_000.csv") == first);
}

TEST_CASE("a t-grid gives one file per point") {
    Scratch s("grid");
    REQUIRE(run("compute --lambda 0.5 --t-grid 0.5:2:4:linear --nmax 8 --format json --moments --out " + (s / "g"))
                .status == 0);
    for (int i = 0; i < 4; ++i) {
        CHECK(fs::exists(s / ("g/point_00" + std::to_string(i) + ".json")));
        CHECK(fs::exists(s / ("g/moments_00" + std::to_string(i) + ".json")));
    }
    CHECK_FALSE(fs::exists(s / "g/point_004.json"));
}

TEST_CASE("verify passes on clean data") {
    Scratch s("verify");
    const Outcome o = run("verify --lambda 1 --t 1 --nmax 12 --out " + (s / "v"));
    CHECK(o.status == 0);
    CHECK(o.out.find(" 0 failed") != std::string::npos);
    CHECK(fs::exists(s / "v/verify.csv"));
}

TEST_CASE("a corrupted beta is caught by the difference identities") {
    Scratch s("corrupt");
    const Outcome o = run("verify --lambda 1 --t 1 --nmax 12 --suite difference --corrupt-beta 5 --out " + (s / "c"));
    CHECK(o.status == 1);
    const std::string csv = slurp(s / "c/verify.csv");
    for (int n : {4, 5, 6}) CHECK(csv.find("d1," + std::to_string(n) + ",") != std::string::npos);
    std::istringstream is(csv);
    std::string line;
    bool near_fails = false, far_fails = false;
    while (std::getline(is, line)) {
        if (line.rfind("d1,", 0) != 0 || line.substr(line.rfind(',') + 1) != "false") continue;
        const int n = std::stoi(line.substr(3));
        (n >= 4 && n <= 6 ? near_fails : far_fails) = true;
    }
    CHECK(near_fails);
    CHECK_FALSE(far_fails);
}

TEST_CASE("configuration errors exit with status 2") {
    Scratch s("config");
    CHECK(run("compute --lambda -1 --out " + (s / "x")).status == 2);
    CHECK(run("compute --t 0 --out " + (s / "x")).status == 2);
    CHECK(run("verify --suite nonsense --out " + (s / "x")).status == 2);
    CHECK(run("asym --nmax 20 --out " + (s / "x")).status == 2);
    CHECK(run("bogus").status == 2);
}

TEST_CASE("print-config echoes the canonical configuration") {
    Scratch s("print");
    const Outcome o = run("compute --lambda 2 --t 3 --nmax 4 --print-config --out " + (s / "p"));
    REQUIRE(o.status == 0);
    CHECK(o.out.find("\"lambda\": \"2\"") != std::string::npos);
    CHECK(o.out.find("\"n_max\": 4") != std::string::npos);
}

TEST_CASE("asym at lambda = 0 reports vanishing odd beta coefficients") {
    Scratch s("asym");
    const Outcome o = run("asym --lambda 0 --t 1 --nmax 64 --digits 20 --out " + (s / "a"));
    CHECK((o.status == 0 || o.status == 1));
    CHECK(o.out.find("b1 = 0.0") != std::string::npos);
    CHECK(o.out.find("b3 = 0.0") != std::string::npos);
    CHECK(fs::exists(s / "a/asym_000_alpha.csv"));
    CHECK(fs::exists(s / "a/asym_000_beta.csv"));
    CHECK(fs::exists(s / "a/asym_000.json"));
}
