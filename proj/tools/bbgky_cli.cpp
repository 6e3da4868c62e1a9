//Command-line front end: derive equations of motion from a system
//description, benchmark derivation times, or validate derived equations
//against the dense-matrix oracle.
//
//Exit codes: 0 success, 1 the input or the check failed (bad declarations,
//unknown targets, residual over tolerance), 2 usage or I/O trouble.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bbgky/derive.hpp"
#include "bbgky/json_io.hpp"
#include "bbgky/oracle.hpp"
#include "bbgky/parse.hpp"
#include "bbgky/render.hpp"

using namespace bbgky;

namespace {

struct Options {
    std::string system_path;
    std::vector<std::string> labels;
    std::string format = "plain";
    std::string expansion = "paper";
    unsigned seed = 1;
    std::string dims;
    std::string members;
    double tol = 1e-8;
    int reps = 5;
};

ExpansionMode mode_of(const std::string& name) {
    return name == "ursell" ? ExpansionMode::ursell : ExpansionMode::paper;
}

ParsedSpec load_spec(const Options& opt) {
    ParsedSpec parsed;
    if (opt.system_path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        parsed = parse_spec(buf.str(), "<stdin>");
    } else {
        parsed = parse_spec_file(opt.system_path);
    }
    if (!opt.labels.empty()) {
        std::vector<Index> target;
        for (const auto& l : opt.labels) target.push_back(Index::single(l));
        validate_target(parsed.system, target);
        parsed.targets = {std::move(target)};
    }
    if (parsed.targets.empty()) {
        throw SpecError("nothing to derive: no 'derive' lines and no target on the command line");
    }
    return parsed;
}

//size flags accept a bare count or comma-separated LETTER=COUNT pairs
void apply_sizes(const std::string& text, int* uniform, std::map<char, int>* by_letter,
                 const char* flag) {
    if (text.empty()) return;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t eq = tok.find('=');
        try {
            if (eq == std::string::npos) {
                *uniform = std::stoi(tok);
            } else if (eq == 1) {
                (*by_letter)[tok[0]] = std::stoi(tok.substr(eq + 1));
            } else {
                throw std::invalid_argument(tok);
            }
        } catch (const std::exception&) {
            throw CLI::ValidationError(std::string(flag) +
                                       ": expected N or LETTER=N[,LETTER=N...], got '" + tok + "'");
        }
    }
}

std::string target_name(const std::vector<Index>& target) {
    std::string out;
    for (const auto& ix : target) out += ix.label();
    return out;
}

int cmd_derive(const Options& opt) {
    ParsedSpec parsed = load_spec(opt);
    DerivationMemo memo(mode_of(opt.expansion));
    for (const auto& target : parsed.targets) {
        Equation eq = derive(parsed.system, target, memo);
        if (opt.format == "latex") {
            std::cout << to_latex(eq) << "\n";
        } else if (opt.format == "json") {
            std::cout << equation_to_json(eq) << "\n";
        } else {
            std::cout << display(eq) << "\n";
        }
    }
    return 0;
}

int cmd_bench(const Options& opt) {
    ParsedSpec parsed = load_spec(opt);
    ExpansionMode mode = mode_of(opt.expansion);

    struct Row {
        std::string name;
        double mean;
        double stddev;
    };
    std::vector<Row> rows;
    for (const auto& target : parsed.targets) {
        std::vector<double> secs;
        for (int r = 0; r < opt.reps; ++r) {
            //cold memo per repetition: every run pays the full recursive cost
            DerivationMemo memo(mode);
            auto t0 = std::chrono::steady_clock::now();
            Equation eq = derive(parsed.system, target, memo);
            auto t1 = std::chrono::steady_clock::now();
            (void)eq;
            secs.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        double mean = 0;
        for (double s : secs) mean += s;
        mean /= double(secs.size());
        double var = 0;
        for (double s : secs) var += (s - mean) * (s - mean);
        double stddev = secs.size() > 1 ? std::sqrt(var / double(secs.size() - 1)) : 0.0;
        rows.push_back({target_name(target), mean, stddev});
    }

    std::printf("%-16s %12s %12s %6s\n", "target", "mean [s]", "stddev [s]", "reps");
    for (const auto& row : rows) {
        std::printf("%-16s %12.6f %12.6f %6d\n", row.name.c_str(), row.mean, row.stddev, opt.reps);
    }
    std::printf("\ntarget,mean_s,stddev_s,reps\n");
    for (const auto& row : rows) {
        std::printf("%s,%.9f,%.9f,%d\n", row.name.c_str(), row.mean, row.stddev, opt.reps);
    }
    return 0;
}

int cmd_validate(const Options& opt) {
    ParsedSpec parsed = load_spec(opt);
    ExpansionMode mode = mode_of(opt.expansion);
    ExpansionMode other = mode == ExpansionMode::paper ? ExpansionMode::ursell
                                                       : ExpansionMode::paper;

    OracleConfig base;
    base.seed = opt.seed;
    apply_sizes(opt.dims, &base.dim, &base.dims, "--dims");
    apply_sizes(opt.members, &base.members, &base.members_by, "--members");

    DerivationMemo memo(mode);
    nlohmann::json targets = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& target : parsed.targets) {
        Equation eq = derive(parsed.system, target, memo);
        ConcreteSystem sys(parsed.system, tuned_config(base, parsed.system, {target}));
        EquationCheck chk = check_equation(sys, eq, mode);
        double cross = check_equation(sys, eq, other).residual;
        bool pass = chk.residual <= opt.tol;
        all_pass = all_pass && pass;
        targets.push_back({{"target", target_name(target)},
                           {"terms", eq.rhs.size()},
                           {"residual", chk.residual},
                           {"residual_other_inversion", cross},
                           {"lhs_norm", chk.lhs_norm},
                           {"pass", pass}});
    }
    nlohmann::json report = {{"expansion", opt.expansion},
                             {"seed", opt.seed},
                             {"tol", opt.tol},
                             {"targets", targets},
                             {"all_pass", all_pass}};
    std::cout << report.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equation-of-motion derivation for ensembles with pairwise interactions"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("system", opt.system_path, "system description file, or - for standard input")
            ->required();
        cmd->add_option("labels", opt.labels,
                        "override target: index labels forming one derivation target");
        cmd->add_option("--expansion", opt.expansion, "correlation expansion flavor")
            ->check(CLI::IsMember({"paper", "ursell"}))
            ->capture_default_str();
    };

    CLI::App* cd = app.add_subcommand("derive", "derive equations and print them");
    add_common(cd);
    cd->add_option("--format", opt.format, "output form")
        ->check(CLI::IsMember({"plain", "latex", "json"}))
        ->capture_default_str();

    CLI::App* cb = app.add_subcommand("bench", "time derivations, cold start each repetition");
    add_common(cb);
    cb->add_option("--reps", opt.reps, "repetitions per target")->capture_default_str();

    CLI::App* cv = app.add_subcommand("validate", "check derived equations against the oracle");
    add_common(cv);
    cv->add_option("--seed", opt.seed, "random instantiation seed")->capture_default_str();
    cv->add_option("--dims", opt.dims, "subsystem dimension: N or LETTER=N[,...]");
    cv->add_option("--members", opt.members, "concrete members per family: N or LETTER=N[,...]");
    cv->add_option("--tol", opt.tol, "residual tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cd)) return cmd_derive(opt);
        if (app.got_subcommand(cb)) {
            if (opt.reps <= 0) {
                std::cerr << "bench: --reps must be positive\n";
                return 2;
            }
            return cmd_bench(opt);
        }
        return cmd_validate(opt);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        //remaining engine errors are I/O shaped (unreadable files and such)
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
