// One line per acceptance criterion; exits nonzero if any criterion fails.
#include "equivapprox/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    std::string fixtures = EQUIVAPPROX_FIXTURE_DIR;
    unsigned jobs = 1;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--jobs" && i + 1 < argc) jobs = static_cast<unsigned>(std::atoi(argv[++i]));
        else fixtures = a;
    }
    int failed = 0;
    for (const auto& c : eqa::run_acceptance(fixtures, jobs)) {
        std::printf("criterion %d %s (%.2fs): %s\n    %s\n", c.number, c.passed ? "PASS" : "FAIL", c.seconds, c.title.c_str(),
                    c.detail.c_str());
        failed += c.passed ? 0 : 1;
    }
    std::printf("%d of 8 criteria passed\n", 8 - failed);
    return failed == 0 ? 0 : 1;
}
