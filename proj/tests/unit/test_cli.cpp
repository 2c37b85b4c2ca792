#include "doctest.h"

#include "peri_couple/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using peri_couple::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"peri-couple"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) {
        argv.push_back(s.c_str());
    }
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const char* base = std::getenv("PERI_COUPLE_TEST_TMP");
    const fs::path root = base ? fs::path(base) : fs::temp_directory_path() / "peri_couple_cli_tests";
    const fs::path dir = root / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p, char sep = ',') {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, sep)) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("solve writes solution and error field") {
    const fs::path dir = scratch("solve");
    const Result r = invoke({"solve", "--scheme", "mdcm", "--problem", "quartic_mixed", "--delta", "1/8", "--m", "2",
                             "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("delta_max 0.0189985") != std::string::npos);
    const auto solution = read_csv(dir / "solution.csv");
    CHECK(solution.front() == std::vector<std::string>{"k", "x", "model", "value"});
    CHECK(solution.size() == 56);
    const auto delta = read_csv(dir / "delta_field.csv");
    CHECK(delta.front() == std::vector<std::string>{"x", "delta"});
    REQUIRE(delta.size() == 50);
    double best = -1e9;
    for (std::size_t i = 1; i < delta.size(); ++i) {
        best = std::max(best, std::stod(delta[i][1]));
    }
    CHECK(best == doctest::Approx(0.0189985).epsilon(1e-4));
}

TEST_CASE("FDM solve from a grid spacing") {
    const fs::path dir = scratch("fdm");
    const Result r = invoke({"solve", "--scheme", "fdm", "--problem", "cubic_mixed", "--h", "1/16", "--out",
                             dir.string()});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(dir / "solution.csv");
    REQUIRE(rows.size() == 50);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][1]);
        CHECK(std::stod(rows[i][3]) == doctest::Approx(x * x * x).epsilon(1e-9));
    }
}

TEST_CASE("VHCM on the shifted geometry") {
    const fs::path dir = scratch("vhcm");
    const Result r = invoke({"solve", "--scheme", "vhcm", "--problem", "quartic_dirichlet", "--a", "3/4", "--delta",
                             "1/8", "--m", "2", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("delta_max 0.00198") != std::string::npos);
}

TEST_CASE("matrix dump") {
    const fs::path dir = scratch("dump");
    REQUIRE(invoke({"solve", "--scheme", "vhcm", "--problem", "cubic_mixed", "--delta", "1/8", "--out", dir.string(),
                    "--dump-matrix"})
                .code == 0);
    CHECK(fs::exists(dir / "matrix.txt"));
    const auto header = read_csv(dir / "matrix_triplets.txt", ' ').front();
    CHECK(header[0] == "51");
    CHECK(header[1] == "51");
}

TEST_CASE("identical specs give byte-identical files") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    for (const auto& dir : {a, b}) {
        REQUIRE(invoke({"table", "--problem", "quartic_dirichlet", "--delta", "1/8,1/16", "--m", "2,4", "--out",
                        dir.string()})
                    .code == 0);
    }
    CHECK(slurp(a / "table.csv") == slurp(b / "table.csv"));
    const auto rows = read_csv(a / "table.csv");
    CHECK(rows.size() == 1 + 2 * 2 * 3);
    CHECK(rows.front() == std::vector<std::string>{"delta", "m", "scheme", "delta_max", "v_max", "E_r"});
    CHECK(rows[1][0] == "1/8");
    CHECK(rows[1][2] == "mdcm");
}

TEST_CASE("decimal and fraction horizons produce the same table") {
    const fs::path a = scratch("frac_a"), b = scratch("frac_b");
    REQUIRE(invoke({"table", "--problem", "quartic_mixed", "--delta", "1/8", "--m", "2", "--out", a.string()}).code ==
            0);
    REQUIRE(invoke({"table", "--problem", "quartic_mixed", "--delta", "0.125", "--m", "2", "--out", b.string()})
                .code == 0);
    CHECK(slurp(a / "table.csv") == slurp(b / "table.csv"));
}

TEST_CASE("tsv output") {
    const fs::path dir = scratch("tsv");
    REQUIRE(invoke({"table", "--problem", "quartic_mixed", "--delta", "1/8", "--m", "2", "--scheme", "mscm",
                    "--format", "tsv", "--out", dir.string()})
                .code == 0);
    const auto rows = read_csv(dir / "table.tsv", '\t');
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][3]) == doctest::Approx(0.0266890).epsilon(1e-5));
}

TEST_CASE("convergence") {
    const fs::path dir = scratch("convergence");
    REQUIRE(invoke({"convergence", "--scheme", "mdcm,fdm", "--problem", "quartic_mixed", "--delta",
                    "1/8,1/16,1/32", "--out", dir.string()})
                .code == 0);
    const auto rows = read_csv(dir / "convergence.csv");
    REQUIRE(rows.size() == 7);
    CHECK(rows.front().back() == "slope");
    CHECK(std::stod(rows[1].back()) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(invoke({"convergence", "--delta", "1/8,1/16", "--out", scratch("conv_bad").string()}).code == 2);
}

TEST_CASE("condition") {
    const fs::path dir = scratch("condition");
    REQUIRE(invoke({"condition", "--delta", "1/8", "--bc", "dirichlet", "--out", dir.string()}).code == 0);
    const auto rows = read_csv(dir / "condition.csv");
    REQUIRE(rows.size() == 5);
    CHECK(rows.front() == std::vector<std::string>{"bc", "delta", "scheme", "cond", "converged"});
    double mdcm = 0, mscm = 0;
    for (const auto& row : rows) {
        if (row[2] == "mdcm") {
            mdcm = std::stod(row[3]);
        }
        if (row[2] == "mscm") {
            mscm = std::stod(row[3]);
        }
    }
    CHECK(mdcm > mscm);
}

TEST_CASE("kappa sweep includes the nominal value") {
    const fs::path dir = scratch("kappa");
    REQUIRE(invoke({"kappa-sweep", "--scheme", "mdcm", "--problem", "quartic_dirichlet", "--kappa", "120,136",
                    "--out", dir.string()})
                .code == 0);
    const auto rows = read_csv(dir / "kappa.csv");
    int max_rows = 0;
    bool nominal = false;
    for (const auto& row : rows) {
        if (!row.empty() && row[0] == "max") {
            ++max_rows;
            if (row[2] == "128") {
                nominal = true;
                CHECK(std::stod(row[4]) == doctest::Approx(0.00154009).epsilon(1e-3));
            }
        }
    }
    CHECK(max_rows == 3);
    CHECK(nominal);
}

TEST_CASE("invalid specs exit 2 and write nothing") {
    const std::vector<std::vector<std::string>> bad{
        {"solve", "--scheme", "xdcm", "--delta", "1/8"},
        {"solve", "--delta", "1/0"},
        {"solve", "--delta", "1/8", "--m", "0"},
        {"solve", "--problem", "quintic", "--delta", "1/8"},
        {"solve", "--delta", "2/15", "--m", "1"},
        {"solve", "--scheme", "mdcm", "--delta", "1/8", "--kappa", "0"},
        {"solve", "--scheme", "vhcm", "--delta", "1/2", "--m", "4"},
        {"solve", "--delta", "1/8", "--h", "1/32", "--m", "2"},
        {"solve"},
        {"table", "--format", "xml", "--delta", "1/8"},
        {"condition", "--bc", "robin"},
        {"kappa-sweep", "--scheme", "vhcm"},
        {"kappa-sweep", "--kappa", "-3"},
        {"solve", "--delta", "1/8", "--mscm-layout", "both"},
        {"frobnicate"},
    };
    for (std::size_t i = 0; i < bad.size(); ++i) {
        const fs::path dir = scratch("bad_" + std::to_string(i));
        std::vector<std::string> args = bad[i];
        args.push_back("--out");
        args.push_back(dir.string());
        std::vector<const char*> argv{"peri-couple"};
        for (const auto& a : args) {
            argv.push_back(a.c_str());
        }
        std::ostringstream out, err;
        CAPTURE(i);
        CHECK(run(static_cast<int>(argv.size()), argv.data(), out, err) == 2);
        CHECK_FALSE(fs::exists(dir));
    }
}

TEST_CASE("precondition messages name the violation") {
    const Result r = invoke({"solve", "--scheme", "vhcm", "--delta", "1/2", "--m", "4", "--out",
                             scratch("msg").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("DomainTooNarrow") != std::string::npos);
}

TEST_CASE("solver failure exits 3") {
    const fs::path dir = scratch("singular");
    const Result r = invoke({"solve", "--scheme", "mdcm", "--delta", "1/8", "--kappa", "1/1000000000000000000",
                             "--out", dir.string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("SingularMatrix") != std::string::npos);
    CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("thread cap from the environment") {
    ::setenv("PERI_COUPLE_THREADS", "zero", 1);
    CHECK(invoke({"table", "--delta", "1/8", "--m", "2", "--out", scratch("env").string()}).code == 2);
    ::setenv("PERI_COUPLE_THREADS", "1", 1);
    CHECK(invoke({"table", "--delta", "1/8", "--m", "2", "--out", scratch("env1").string()}).code == 0);
    ::unsetenv("PERI_COUPLE_THREADS");
}

TEST_CASE("help exits 0") {
    const Result r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("kappa-sweep") != std::string::npos);
}
