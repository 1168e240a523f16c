#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "wep/matrix_io.hpp"
#include "wep/random.hpp"

using namespace wep;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("wep_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run wep_cli(const std::string& args, const std::string& env = "") {
    const fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
    const std::string cmd = "cd '" + work_dir().string() + "' && env -u WEP_TOL " + env + " '" WEP_BIN "' " + args +
                            " > '" + out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string put(const std::string& name, const CMatrix& a) {
    write_matrix(work_dir() / name, a);
    return name;
}

bool has_line(const std::string& text, const std::string& line) {
    return text.find(line + "\n") != std::string::npos;
}

}  // namespace

TEST_CASE("pinv") {
    const Run id = wep_cli("pinv -i " + put("id.json", CMatrix::identity(3)));
    REQUIRE(id.code == 0);
    CHECK(parse_matrix(id.out) == CMatrix::identity(3));
    CHECK(has_line(id.err, "status: valid"));

    const Run d = wep_cli("pinv -i " + put("d.json", CMatrix::diagonal({2, 0})) + " -o dp.json");
    REQUIRE(d.code == 0);
    CHECK(has_line(d.out, "output: dp.json"));
    CHECK(rel_diff(read_matrix(work_dir() / "dp.json"), CMatrix::diagonal({0.5, 0})) < 1e-16);
}

TEST_CASE("wpinv") {
    Rng rng(1);
    const std::string a = put("a.json", random_gaussian(3, 4, rng));
    const Run plain = wep_cli("pinv -i " + a);
    const Run weighted = wep_cli("wpinv -i " + a);
    CHECK(weighted.code == 0);
    CHECK(plain.out == weighted.out);

    const std::string inv = put("inv.json", random_gaussian(3, 3, rng));
    const Run w = wep_cli("wpinv -i " + inv + " -E " + put("e.json", random_pd(3, rng)) + " -F " +
                          put("f.json", random_pd(3, rng)));
    REQUIRE(w.code == 0);
    CHECK(rel_diff(parse_matrix(w.out) * read_matrix(work_dir() / inv), CMatrix::identity(3)) < 1e-10);
    CHECK(has_line(w.err, "weight.E.positive: true"));

    const Run bad = wep_cli("wpinv -i " + inv + " -E " + put("neg.json", CMatrix::diagonal({1, -1, 1})));
    CHECK(bad.code == 3);
    CHECK(bad.err.find("not positive") != std::string::npos);
}

TEST_CASE("ep-check exit codes") {
    const Run proj = wep_cli("ep-check -i " + put("p.json", CMatrix{{1, 0}, {0, 0}}));
    CHECK(proj.code == 0);
    CHECK(has_line(proj.out, "consistent: true"));
    CHECK(has_line(proj.out, "statement.bc.ii: true"));

    const Run shift = wep_cli("ep-check -i " + put("s.json", CMatrix{{0, 1}, {0, 0}}));
    CHECK(shift.code == 1);
    CHECK(has_line(shift.out, "agreeing: 26"));
    CHECK(has_line(shift.out, "statement.sa.ix: false"));

    const Run syn = wep_cli("ep-check --synthesize --dim 5 --seed 7 -o syn");
    CHECK(syn.code == 0);
    CHECK(fs::exists(work_dir() / "syn.E.json"));
    const Run again = wep_cli("ep-check -i syn.a.json -E syn.E.json -F syn.F.json");
    CHECK(again.code == 0);

    CHECK(wep_cli("ep-check -i " + put("r.json", CMatrix(2, 3))).code == 3);
    CHECK(wep_cli("ep-check -i p.json --norm l1").code == 3);
}

TEST_CASE("factorize") {
    const Run fr = wep_cli("factorize --mode fullrank -i " + put("r1.json", CMatrix{{1, 2}, {2, 4}}) + " -o r1");
    CHECK(fr.code == 0);
    CHECK(has_line(fr.out, "rank: 1"));
    const CMatrix b = read_matrix(work_dir() / "r1.b.json"), c = read_matrix(work_dir() / "r1.c.json");
    CHECK(rel_diff(b * c, CMatrix{{1, 2}, {2, 4}}) < 1e-12);

    const Run can = wep_cli("factorize --mode canonical -i " + put("pr.json", CMatrix{{1, 0}, {0, 0}}) + " -o pr");
    CHECK(can.code == 0);
    CHECK(read_matrix(work_dir() / "pr.c.json") == CMatrix::identity(2));
    CHECK(rel_diff(read_matrix(work_dir() / "pr.p.json"), CMatrix{{1, 0}, {0, 0}}) < 1e-15);

    wep_cli("ep-check --synthesize --dim 6 --seed 3 -o blk");
    const Run blk = wep_cli("factorize --mode block -i blk.a.json -E blk.E.json -F blk.F.json");
    CHECK(blk.code == 0);
    CHECK(has_line(blk.out, "verified: true"));
    CHECK(has_line(blk.out, "t1_invertible: true"));

    const Run non = wep_cli("factorize --mode block -i " + put("n.json", CMatrix{{0, 1}, {0, 0}}));
    CHECK(non.code == 1);
    CHECK(non.err.find("not weighted EP") != std::string::npos);
    CHECK(wep_cli("factorize --mode bogus -i n.json").code != 0);
}

TEST_CASE("hermitian-check") {
    const Run swap = wep_cli("hermitian-check -i " + put("sw.json", CMatrix{{0, 1}, {1, 0}}));
    CHECK(swap.code == 0);
    CHECK(has_line(swap.out, "hermitian: true"));
    CHECK(has_line(swap.out, "positive: false"));
    for (const char* norm : {"l1", "l2", "linf"}) {
        const Run d = wep_cli("hermitian-check --norm " + std::string(norm) + " -i " +
                              put("d12.json", CMatrix::diagonal({1, 2})));
        CHECK(has_line(d.out, "hermitian: true"));
        CHECK(has_line(d.out, "positive: true"));
    }
    const Run sh = wep_cli("hermitian-check --range-samples 4 -i " + put("sh.json", CMatrix{{0, 1}, {0, 0}}));
    CHECK(has_line(sh.out, "hermitian: false"));
    CHECK(sh.out.find("numerical_range.3: ") != std::string::npos);
}

TEST_CASE("tolerance precedence") {
    const std::string p = put("tp.json", CMatrix::identity(2));
    CHECK(has_line(wep_cli("pinv -o x.json -i " + p).out, "tol.source: default"));
    const Run env = wep_cli("pinv -o x.json -i " + p, "WEP_TOL=1e-6");
    CHECK(has_line(env.out, "tol.residual_rel: 1.000000e-06"));
    CHECK(has_line(env.out, "tol.source: WEP_TOL"));
    const Run flag = wep_cli("pinv -o x.json --tol 1e-8 -i " + p, "WEP_TOL=1e-6");
    CHECK(has_line(flag.out, "tol.residual_rel: 1.000000e-08"));
    CHECK(has_line(flag.out, "tol.source: --tol"));
    CHECK(wep_cli("pinv -i " + p, "WEP_TOL=abc").code == 3);
}

TEST_CASE("malformed input") {
    std::ofstream(work_dir() / "bad.json") << "{\"rows\": 1, \"cols\": 1,\n\"data\": [[1, \"x\"]]}";
    const Run r = wep_cli("pinv -i bad.json");
    CHECK(r.code == 3);
    CHECK(r.err.find("bad.json:2: field 'data[0]'") != std::string::npos);
    CHECK(wep_cli("pinv -i missing.json").code == 3);
}

TEST_CASE("fuzz") {
    const Run r = wep_cli("fuzz --trials 10 --seed 42 -o summary.txt");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "inconsistencies: 0"));
    CHECK(slurp(work_dir() / "summary.txt") == r.out);
    CHECK(wep_cli("fuzz --trials 10 --seed 42").out == r.out);
    CHECK(wep_cli("fuzz --trials 1 --dim 1").code == 0);
    CHECK(wep_cli("fuzz --trials 0").code != 0);
}
