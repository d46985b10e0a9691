// Standalone verification-suite runner: one PASS/FAIL line per criterion,
// nonzero exit on any failure.  `--slow` adds the exhaustive sweeps.

#include <cstring>
#include <iostream>

#include "zorn/acceptance.hpp"

int main(int argc, char** argv) {
    bool slow = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--slow") == 0) slow = true;
    return zorn::acceptance::run_suite(std::cout, slow) == 0 ? 0 : 1;
}
