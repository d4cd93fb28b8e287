// Prints how the (1+(λ,λ)) GSEMO archive fills the OneMinMax front over time.
//
//   front_trace [n] [seed]

#include <moea_lab/moea_lab.hpp>

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv)
{
    using namespace moea_lab;

    RunConfig cfg;
    cfg.algorithm = AlgorithmKind::opll_gsemo;
    cfg.n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 60;
    cfg.seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    cfg.controller.mode = ControllerMode::one_fifth;
    cfg.record_lambda_trajectory = true;

    const auto rec = run(cfg);
    std::printf("coverage,evaluations\n");
    for (const auto& m : rec.milestones) {
        std::printf("%zu,%llu\n", m.level, static_cast<unsigned long long>(m.evaluations));
    }
    double peak = 1.0;
    for (double l : rec.lambda_trajectory) {
        peak = l > peak ? l : peak;
    }
    std::printf("# %s after %llu iterations, peak lambda %.3f\n", std::string(to_string(rec.status)).c_str(),
                static_cast<unsigned long long>(rec.iterations), peak);
    return rec.status == RunStatus::covered ? EXIT_SUCCESS : EXIT_FAILURE;
}
