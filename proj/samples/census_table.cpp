// Prints the census of Bott classes for n = 1..K (default 6).

#include <cstdio>
#include <cstdlib>

#include "bott/classify.hpp"

int main(int argc, char** argv)
{
    const int max_n = argc > 1 ? std::atoi(argv[1]) : 6;
    std::printf("%3s %12s %10s %10s %10s\n", "n", "dags", "B_n", "E_n", "S_n");
    for (int n = 1; n <= max_n; ++n) {
        const auto census = bott::classify(n);
        std::printf("%3d %12zu %10zu %10zu %10zu\n", n, census.dag_count, census.total_classes,
                    census.orientable_classes, census.symplectic_classes);
    }
    return 0;
}
