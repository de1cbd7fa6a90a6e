/*
   Copyright 2026 The frog authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Serial breadth-first reference vs the OpenMP front kernel, and the
// sweep fan-out at different thread counts.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "frog/classifier.hpp"
#include "frog/montecarlo.hpp"

namespace chrono = std::chrono;

template <class F>
double time_ms(F&& fn)
{
    const auto t0 = chrono::steady_clock::now();
    fn();
    const auto t1 = chrono::steady_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count();
}

int main(int argc, char** argv)
{
    const std::int64_t trials = argc > 1 ? std::atoll(argv[1]) : 20000;
    using namespace frog;

    SimConfig cfg;
    cfg.params = ProcessParams::make(1, 3, SequenceSpec::single(PowerLaw{1.0, 0.5, 1}));
    cfg.horizon = 1000;
    cfg.trials = trials;
    cfg.seed = 7;

    SimResult serial;
    SimResult parallel;
    const double t_serial = time_ms([&] { serial = estimate_survival_serial(cfg); });
    std::cout << "trials " << trials << "  horizon " << cfg.horizon << "  max threads "
              << omp_get_max_threads() << '\n';
    std::cout << "serial bfs        " << t_serial << " ms  p_hat " << serial.p_hat << '\n';
    for (int threads : {1, 2, 4, 8}) {
        const double t = time_ms([&] { parallel = estimate_survival(cfg, threads); });
        std::cout << "front kernel x" << threads << "   " << t << " ms  p_hat " << parallel.p_hat
                  << (parallel.max_site == serial.max_site ? "  (matches serial)" : "  (MISMATCH)")
                  << '\n';
    }

    const auto spec = SequenceSpec::make({PowerLaw{1.0, 0.25, 1}, LogInverse{}, LogInverse{}}, {}, {0.9, 0.9});
    for (int threads : {1, 4}) {
        const double t = time_ms([&] { sweep(spec, 1, 16, 1, 16, threads); });
        std::cout << "sweep 16x16 x" << threads << "    " << t << " ms\n";
    }
    return 0;
}
