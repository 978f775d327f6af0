#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

class Workdir {
public:
    Workdir() : dir_(fs::temp_directory_path() / ("quadcode_cli_test_" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Workdir() { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    Run run(const std::string& args) const {
        const auto log = path("stdout.log");
        const std::string cmd = std::string("\"") + QUADCODE_CLI_PATH + "\" " + args + " > \"" + log + "\" 2>&1";
        const int status = std::system(cmd.c_str());
        REQUIRE(WIFEXITED(status));
        return {WEXITSTATUS(status), slurp(log)};
    }

    static std::string slurp(const std::string& file) {
        std::ifstream in(file, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

private:
    fs::path dir_;
};

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::size_t count_records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    for (int i = 0; std::getline(in, line); ++i)
        if (i >= 9 && !line.empty()) ++n;
    return n;
}

} // namespace

TEST_CASE("build and verify a small code") {
    Workdir w;
    const auto file = w.path("c2.txt");
    const auto b = w.run("build --q 2 --out \"" + file + "\"");
    CHECK(b.code == 0);
    CHECK(has(b.out, "M: 43 (expected 43)"));
    CHECK(has(b.out, "largest (6, M, 4; 3)_2 code: 77"));
    CHECK(count_records(Workdir::slurp(file)) == 43);

    const auto v = w.run("verify --in \"" + file + "\" --method both");
    CHECK(v.code == 0);
    CHECK(has(v.out, "min-distance: 4"));
    CHECK(has(v.out, "methods-agree: yes"));
    CHECK(has(v.out, "verdict: ok"));
}

TEST_CASE("repeated builds are byte-identical") {
    Workdir w;
    REQUIRE(w.run("build --q 3 --out \"" + w.path("a.txt") + "\"").code == 0);
    REQUIRE(w.run("build --q 3 --out \"" + w.path("b.txt") + "\"").code == 0);
    CHECK(Workdir::slurp(w.path("a.txt")) == Workdir::slurp(w.path("b.txt")));

    REQUIRE(w.run("build --q 2 --format json --out \"" + w.path("c.json") + "\"").code == 0);
    const auto js = Workdir::slurp(w.path("c.json"));
    CHECK(js.front() == '{');
    CHECK(w.run("verify --in \"" + w.path("c.json") + "\"").code == 0);

    const auto r = w.run("build --q 3 --report json");
    CHECK(r.code == 0);
    CHECK(has(r.out, "\"M\": 274"));
    CHECK(has(r.out, "\"min_distance\": 4"));
}

TEST_CASE("a duplicated plane is a violation") {
    Workdir w;
    const auto file = w.path("dup.txt");
    REQUIRE(w.run("build --q 2 --out \"" + file + "\"").code == 0);
    std::istringstream in(Workdir::slurp(file));
    std::ostringstream out;
    std::string line;
    for (int i = 0; std::getline(in, line); ++i) {
        if (i == 7) line = "M 44";
        out << line << '\n';
        if (i == 9) out << line << '\n';
    }
    std::ofstream(file, std::ios::binary) << out.str();
    const auto v = w.run("verify --in \"" + file + "\" --method both");
    CHECK(v.code == 1);
    CHECK(has(v.out, "min-distance: 0"));
    CHECK(has(v.out, "methods-agree: yes"));
}

TEST_CASE("usage and I/O errors") {
    Workdir w;
    CHECK(w.run("").code == 2);
    CHECK(w.run("build --q 6 --out \"" + w.path("x.txt") + "\"").code == 2);
    CHECK(w.run("build --q 7 --out \"" + w.path("x.txt") + "\"").code == 2);
    CHECK(w.run("build").code == 2);
    CHECK(w.run("build --q 2").code == 0);
    CHECK(w.run("verify --in \"" + w.path("missing.txt") + "\"").code == 3);
    CHECK(w.run("build --q 2 --out \"" + w.path("no/such/dir.txt") + "\"").code == 3);
    std::ofstream(w.path("garbage.txt")) << "not a code file\n";
    CHECK(w.run("verify --in \"" + w.path("garbage.txt") + "\"").code == 2);
    CHECK(w.run("inspect --q 5 --check arcs").code == 2);
    CHECK(w.run("verify --in \"" + w.path("garbage.txt") + "\" --method fast").code == 2);
}

TEST_CASE("extend, classify and inspect") {
    Workdir w;
    const auto file = w.path("c4.txt");
    REQUIRE(w.run("build --q 4 --out \"" + file + "\"").code == 0);
    const auto e = w.run("extend --q 4 --in \"" + file + "\"");
    CHECK(e.code == 0);
    CHECK(has(e.out, "addable: 0"));
    CHECK(w.run("extend --q 3 --in \"" + file + "\"").code == 2);

    const auto c = w.run("classify --q 5");
    CHECK(c.code == 0);
    CHECK(has(c.out, "census: (31, 465, 310, 3100)"));
    CHECK(has(c.out, "cubic-mismatches: 0"));

    const auto s = w.run("inspect --q 3 --check singer");
    CHECK(s.code == 0);
    CHECK(has(s.out, "10 orbits x 13, caps: yes, invariant planes: 2"));

    const auto a = w.run("inspect --q 4 --check all");
    CHECK(a.code == 0);
    CHECK(has(a.out, "skipped"));
}
