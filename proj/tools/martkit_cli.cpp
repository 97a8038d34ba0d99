// martkit command-line front end.
//
// Exit codes: 0 the analysis ran (verdicts live in the report), 2 the input
// is invalid, 3 an exhaustive enumeration would exceed the event cap,
// 4 an internal invariant was violated (always a bug).

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "martkit/martkit.hpp"
#include "martkit/workspace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitInvariant = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw martkit::parse_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_validate(const std::string& path) {
    const martkit::Workspace ws = martkit::parse_workspace(read_file(path));
    std::cout << "ok: " << ws.space.n() << " outcomes, " << ws.process.times() << " times, dimension "
              << ws.dimension << (ws.transform_process ? ", with transform" : "") << "\n";
    return kExitOk;
}

int run_classify(const std::string& path, const martkit::ClassifyOptions& opts) {
    const martkit::Workspace ws = martkit::parse_workspace(read_file(path));
    const martkit::Filtration f = ws.resolve_filtration();
    const martkit::ClassificationReport report = martkit::classify(ws.space, f, ws.process, opts);
    std::cout << martkit::render_json(martkit::classification_to_json(report));
    return report.capacity_hit() ? kExitCapacity : kExitOk;
}

int run_condexp(const std::string& path, const std::string& sigma_arg, const std::string& of_arg) {
    const martkit::Workspace ws = martkit::parse_workspace(read_file(path));

    int of_time = 0;
    if (of_arg == "terminal") {
        of_time = ws.process.horizon();
    } else {
        try {
            of_time = std::stoi(of_arg);
        } catch (const std::exception&) {
            throw martkit::parse_error("--of: expected a time index or \"terminal\"");
        }
        if (of_time < 0 || of_time > ws.process.horizon())
            throw martkit::parse_error("--of: time " + of_arg + " outside 0.." +
                                       std::to_string(ws.process.horizon()));
    }

    std::optional<martkit::Partition> sigma;
    if (!sigma_arg.empty() && (std::isdigit(static_cast<unsigned char>(sigma_arg[0])) != 0)) {
        int t = 0;
        try {
            t = std::stoi(sigma_arg);
        } catch (const std::exception&) {
            throw martkit::parse_error("--sigma: expected a time index or a partition like [[0,1],[2,3]]");
        }
        if (t < 0 || t > ws.process.horizon())
            throw martkit::parse_error("--sigma: time " + sigma_arg + " outside 0.." +
                                       std::to_string(ws.process.horizon()));
        sigma = ws.resolve_filtration()[t];
    } else {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(sigma_arg);
        } catch (const nlohmann::json::parse_error& e) {
            throw martkit::parse_error(std::string("--sigma: ") + e.what());
        }
        sigma = martkit::ws_detail::parse_partition(j, ws.space.n(), "--sigma");
    }

    const martkit::CondExpResult result =
        martkit::cond_exp(ws.space, *sigma, ws.process[of_time]);
    std::cout << martkit::render_json(martkit::cond_exp_to_json(result));
    return kExitOk;
}

int run_process(const std::string& path, const std::string& check) {
    const martkit::Workspace ws = martkit::parse_workspace(read_file(path));
    const martkit::Filtration f = ws.resolve_filtration();
    nlohmann::json report;
    if (check == "adapted" || check == "all")
        report["adapted"] = martkit::is_adapted(ws.process, f);
    if (check == "progressive" || check == "all")
        report["progressive"] = martkit::is_progressive(ws.process, f);
    if (check == "predictable" || check == "all") {
        const bool via_sigma = martkit::is_predictable(ws.process, f);
        const bool via_shift = martkit::is_predictable_shifted(ws.process, f);
        if (via_sigma != via_shift)
            throw martkit::invariant_violation(
                "predictability routes disagree (sigma-algebra vs shifted adaptedness)");
        report["predictable"] = nlohmann::json{{"shifted", via_shift}, {"sigma_p", via_sigma}};
    }
    std::cout << martkit::render_json(report);
    return kExitOk;
}

int run_transform(const std::string& path, const std::string& out_path) {
    martkit::Workspace ws = martkit::parse_workspace(read_file(path));
    if (!ws.transform_process)
        throw martkit::precondition_error("workspace has no \"transform\" process to apply");
    if (ws.dimension != 1)
        throw martkit::precondition_error("transform needs a scalar workspace (dimension 1)");
    ws.process = martkit::transform(*ws.transform_process, ws.process);
    ws.transform_process.reset();
    const std::string text = martkit::serialize_workspace(ws);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw martkit::parse_error("cannot open output file: " + out_path);
        out << text;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact martingale analysis on finite probability spaces"};
    app.require_subcommand(1);

    std::string file;
    std::string out_path;
    std::string sigma_arg;
    std::string of_arg;
    std::string check = "all";
    bool flag_pairwise = false;
    bool flag_succ = false;
    bool flag_set_integral = false;
    bool flag_difference = false;
    bool flag_all = false;

    auto* validate = app.add_subcommand("validate", "check that a workspace file is well-formed");
    validate->add_option("file", file, "workspace JSON file")->required();

    auto* classify = app.add_subcommand("classify", "run the martingale classification");
    classify->add_option("file", file, "workspace JSON file")->required();
    classify->add_flag("--pairwise", flag_pairwise, "conditional-expectation check over all pairs i <= j");
    classify->add_flag("--succ", flag_succ, "successor-only conditional-expectation check");
    classify->add_flag("--set-integral", flag_set_integral, "set-integral check over all events");
    classify->add_flag("--difference", flag_difference, "expected-increment check");
    classify->add_flag("--all", flag_all, "all four characterizations (default)");

    auto* condexp = app.add_subcommand("condexp", "print a conditional expectation table");
    condexp->add_option("file", file, "workspace JSON file")->required();
    condexp->add_option("--sigma", sigma_arg, "conditioning time index, or an explicit partition")
        ->required();
    condexp->add_option("--of", of_arg, "time index of the conditioned variable, or \"terminal\"")
        ->required();

    auto* process = app.add_subcommand("process", "adapted / progressive / predictable checks");
    process->add_option("file", file, "workspace JSON file")->required();
    process->add_option("--check", check, "adapted|progressive|predictable|all")
        ->check(CLI::IsMember({"adapted", "progressive", "predictable", "all"}));

    auto* transform = app.add_subcommand("transform", "apply the martingale transform");
    transform->add_option("file", file, "workspace JSON file")->required();
    transform->add_option("-o,--output", out_path, "write the new workspace here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (validate->parsed()) return run_validate(file);
        if (classify->parsed()) {
            martkit::ClassifyOptions opts;
            if ((flag_pairwise || flag_succ || flag_set_integral || flag_difference) && !flag_all) {
                opts.pairwise = flag_pairwise;
                opts.successor = flag_succ;
                opts.set_integral = flag_set_integral;
                opts.difference = flag_difference;
            }
            return run_classify(file, opts);
        }
        if (condexp->parsed()) return run_condexp(file, sigma_arg, of_arg);
        if (process->parsed()) return run_process(file, check);
        if (transform->parsed()) return run_transform(file, out_path);
    } catch (const martkit::capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const martkit::invariant_violation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const martkit::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
