#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "bbgky/derive.hpp"
#include "bbgky/system.hpp"

// Whole-equation derivation timings.  Each iteration starts from an empty
// memo table, so the numbers reflect the full recursive cost of a target
// rather than a warm-cache lookup.

using namespace bbgky;

namespace {

Index S(const char* label) { return Index::single(label); }
Index F(char letter) { return Index::family(letter, {}); }

SystemSpec system_one() {
    SystemSpec s;
    s.singles = {S("A1")};
    s.families = {'F'};
    s.interactions.push_back(PairedIndex(S("A1"), F('F')));
    return s;
}

SystemSpec system_two() {
    SystemSpec s = system_one();
    s.families.push_back('B');
    s.interactions.push_back(PairedIndex(F('B'), F('F')));
    return s;
}

std::vector<Index> target_of(const std::vector<std::string>& labels) {
    std::vector<Index> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(Index::single(l));
    return out;
}

void run_derivation(benchmark::State& state, const SystemSpec& spec,
                    const std::vector<std::string>& labels, ExpansionMode mode) {
    const std::vector<Index> target = target_of(labels);
    size_t terms = 0;
    for (auto _ : state) {
        DerivationMemo memo(mode);
        Equation eq = derive(spec, target, memo);
        terms = eq.rhs.size();
        benchmark::DoNotOptimize(eq);
    }
    state.counters["terms"] = static_cast<double>(terms);
}

struct Job {
    const SystemSpec* spec;
    const char* tag;
    std::vector<std::string> labels;
};

const SystemSpec kOne = system_one();
const SystemSpec kTwo = system_two();

const std::vector<Job> kJobs = {
    {&kOne, "one", {"A1", "F1", "F2"}},
    {&kOne, "one", {"F1", "F2", "F3"}},
    {&kOne, "one", {"A1", "F1", "F2", "F3"}},
    {&kOne, "one", {"F1", "F2", "F3", "F4"}},
    {&kTwo, "two", {"F1", "F2", "F3"}},
    {&kTwo, "two", {"F1", "F2", "B1"}},
    {&kTwo, "two", {"F1", "B1", "B2"}},
    {&kTwo, "two", {"B1", "B2", "B3"}},
    {&kTwo, "two", {"A1", "F1", "F2"}},
    {&kTwo, "two", {"A1", "F1", "B1"}},
    {&kTwo, "two", {"A1", "B1", "B2"}},
    {&kTwo, "two", {"F1", "F2", "F3", "F4"}},
    {&kTwo, "two", {"F1", "F2", "F3", "B1"}},
    {&kTwo, "two", {"F1", "F2", "B1", "B2"}},
    {&kTwo, "two", {"F1", "B1", "B2", "B3"}},
    {&kTwo, "two", {"B1", "B2", "B3", "B4"}},
    {&kTwo, "two", {"A1", "F1", "F2", "F3"}},
    {&kTwo, "two", {"A1", "F1", "F2", "B1"}},
    {&kTwo, "two", {"A1", "F1", "B1", "B2"}},
    {&kTwo, "two", {"A1", "B1", "B2", "B3"}},
};

void register_all() {
    for (const auto& job : kJobs) {
        std::string flat;
        for (const auto& l : job.labels) flat += l;
        for (ExpansionMode mode : {ExpansionMode::paper, ExpansionMode::ursell}) {
            std::string name = std::string(job.tag) + "/" + flat + "/" +
                               (mode == ExpansionMode::paper ? "paper" : "ursell");
            benchmark::RegisterBenchmark(
                name.c_str(), [&job, mode](benchmark::State& st) {
                    run_derivation(st, *job.spec, job.labels, mode);
                });
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    register_all();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
