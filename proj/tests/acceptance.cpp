// Acceptance suite: reruns every pinned value and theorem-level property
// from the verification harness and prints one line per criterion.

#include <fkt/verify_paper.hpp>

#include <cstdio>
#include <iostream>

int main()
{
    fkt::PaperVerification v = fkt::run_verify_paper();
    std::cout << fkt::verification_report(v);
    return v.all_pass() ? 0 : 1;
}
