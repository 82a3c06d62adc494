// Runs the thirteen acceptance criteria and prints one line per criterion.
#include <cstdio>

#include <gci/verify.hpp>

int main()
{
    gci::VerifyOptions opts;
    int failed = 0;
    for (const auto &r : gci::run_acceptance(opts)) {
        std::printf("[%s] %2d %-28s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%d of 13 criteria failed\n", failed);
    return failed ? 1 : 0;
}
