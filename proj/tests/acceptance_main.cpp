// Acceptance suite: every validation criterion at full scale, one line each.
// Exit code 0 iff all criteria pass.

#include <iostream>

#include "qsdlab/validate.hpp"

int main() {
    auto results = qsdlab::run_validation(/*full=*/true, std::cout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
