#include <cstdio>

#include "akns/suites.hpp"

// One line per criterion; the exit status is nonzero if any criterion fails.
int main() {
    int failed = 0;
    for (const auto& r : akns::suites::runAll({})) {
        std::printf("%s\n", akns::suites::summaryLine(r).c_str());
        failed += r.pass() ? 0 : 1;
    }
    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
