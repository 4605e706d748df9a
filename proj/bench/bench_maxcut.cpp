// Wall-clock comparison of the serial and OpenMP cut enumerations on a dense
// weighted graph. Usage: bench-maxcut [n] [repeats], defaults n=20, repeats=3.

#include <chrono>
#include <iostream>
#include <random>
#include <string>

#include "conekit/reductions.hpp"

using namespace conekit;

namespace {

Graph dense_graph(Index n, unsigned seed) {
    Graph g;
    g.n = n;
    g.weights = Matrix::Zero(n, n);
    std::mt19937 gen(seed);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const double w = static_cast<double>(gen() % 1000) / 250.0;
            g.weights(i, j) = w;
            g.weights(j, i) = w;
        }
    return g;
}

template <typename F>
double time_best(F&& fn, int repeats, CutResult& out) {
    double best = 1e300;
    for (int rep = 0; rep < repeats; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        out = fn();
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, dt);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const Index n = argc > 1 ? std::stoll(argv[1]) : 20;
    const int repeats = argc > 2 ? std::stoi(argv[2]) : 3;
    const Graph g = dense_graph(n, 2718u);

    CutResult serial, parallel;
    const double t_serial = time_best([&] { return maxcut_brute_serial(g); }, repeats, serial);
    const double t_parallel = time_best([&] { return maxcut_brute(g); }, repeats, parallel);

    std::cout << "n = " << n << ", " << (1LL << (n - 1)) << " bipartitions\n";
    std::cout << "serial:   " << t_serial << " s, cut value " << serial.value << "\n";
    std::cout << "parallel: " << t_parallel << " s, cut value " << parallel.value << "\n";
    std::cout << "speedup:  " << t_serial / t_parallel << "x\n";
    if (serial.value != parallel.value || serial.signs != parallel.signs) {
        std::cout << "MISMATCH between serial and parallel results\n";
        return 1;
    }
    return 0;
}
