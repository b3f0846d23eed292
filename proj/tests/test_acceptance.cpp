// Dedicated acceptance binary: runs every release criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exits nonzero on
// any failure. --quick switches to the reduced grids.

#include <cstring>
#include <iostream>

#include "gscr/acceptance.hpp"
#include "gscr/parallel.hpp"

int main(int argc, char** argv) {
    gscr::AcceptanceLevel level = gscr::AcceptanceLevel::full;
    std::string fixtures = "data/fixtures/s_integrals.txt";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) level = gscr::AcceptanceLevel::quick;
        if (std::strncmp(argv[i], "--fixtures=", 11) == 0) fixtures = argv[i] + 11;
    }
    const auto results = gscr::run_acceptance(level, fixtures, gscr::default_thread_count());
    const bool ok = gscr::print_acceptance_report(results, std::cout);
    return ok ? 0 : 1;
}
