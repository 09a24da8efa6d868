#include "spas/core_model.hpp"
#include "spas/poset.hpp"
#include "spas/rotations.hpp"
#include "spas/solvers.hpp"
#include "spas/stability.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 success, 1 parse/validation error, 2 matching invalid or
// unstable where stability is required, 3 resource bound exceeded.
constexpr int kOk = 0;
constexpr int kParseError = 1;
constexpr int kMatchingError = 2;
constexpr int kBoundExceeded = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw spas::ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Options {
    std::string instance_path;
    std::string matching_path;
    std::string side = "student";
    std::string engine = "lattice";
    std::string format = "dot";
    bool verbose = false;
};

spas::Instance load_instance(const Options& opt)
{
    return spas::parse_instance(read_file(opt.instance_path));
}

spas::Matching load_matching(const Options& opt, const spas::Instance& instance)
{
    return spas::parse_matching(instance, read_file(opt.matching_path));
}

std::vector<std::string> sorted_serialized(const std::vector<spas::Matching>& matchings)
{
    std::vector<std::string> texts;
    texts.reserve(matchings.size());
    for (const spas::Matching& m : matchings)
        texts.push_back(spas::serialize_matching(m));
    std::sort(texts.begin(), texts.end());
    return texts;
}

int run_validate(const Options& opt)
{
    load_instance(opt);
    std::cout << "OK\n";
    return kOk;
}

int run_solve(const Options& opt)
{
    spas::Instance instance = load_instance(opt);
    spas::Matching matching = opt.side == "student" ? spas::student_optimal(instance)
                                                    : spas::lecturer_optimal(instance);
    std::cout << spas::serialize_matching(matching);
    return kOk;
}

int run_check(const Options& opt)
{
    spas::Instance instance = load_instance(opt);
    spas::Matching matching = load_matching(opt, instance);
    auto violations = spas::validate_matching(instance, matching);
    if (!violations.empty()) {
        for (const std::string& v : violations)
            std::cerr << v << "\n";
        return kMatchingError;
    }
    auto blocking = spas::blocking_pairs(instance, matching);
    if (blocking.empty()) {
        std::cout << "STABLE\n";
        return kOk;
    }
    std::cout << spas::blocking_report(blocking);
    return kMatchingError;
}

int run_enumerate(const Options& opt)
{
    spas::Instance instance = load_instance(opt);
    std::vector<spas::Matching> matchings;
    if (opt.engine == "oracle")
        matchings = spas::brute_force_all_stable(instance).matchings;
    else
        matchings = spas::explore_lattice(instance).matchings;
    std::vector<std::string> texts = sorted_serialized(matchings);
    if (opt.verbose)
        std::cerr << texts.size() << " stable matchings (engine=" << opt.engine << ")\n";
    std::string out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (i > 0)
            out += "\n";
        out += texts[i];
    }
    std::cout << out;
    return kOk;
}

int run_rotations(const Options& opt)
{
    spas::Instance instance = load_instance(opt);
    auto rotations = spas::explore_lattice(instance).rotations;
    std::sort(rotations.begin(), rotations.end());
    if (opt.verbose)
        std::cerr << rotations.size() << " meta-rotations\n";
    for (const spas::MetaRotation& rotation : rotations)
        std::cout << spas::rotation_text(rotation) << "\n";
    return kOk;
}

int run_poset(const Options& opt)
{
    spas::Instance instance = load_instance(opt);
    spas::RotationPoset poset = spas::build_poset(spas::explore_lattice(instance));
    spas::PosetFormat format = opt.format == "json" ? spas::PosetFormat::json : spas::PosetFormat::dot;
    std::cout << spas::export_poset(poset, format);
    return kOk;
}

int run_reduce(const Options& opt)
{
    std::cout << spas::serialize_instance(spas::reduce_instance(load_instance(opt)));
    return kOk;
}

int run_target(const Options& opt)
{
    spas::Instance instance = load_instance(opt);
    spas::Matching target = load_matching(opt, instance);
    try {
        auto sequence = spas::find_target(instance, target);
        if (opt.verbose)
            std::cerr << sequence.size() << " eliminations\n";
        for (const spas::MetaRotation& rotation : sequence)
            std::cout << spas::rotation_text(rotation) << "\n";
        return kOk;
    }
    catch (const spas::UnstableTargetError& e) {
        std::cerr << e.what();
        return kMatchingError;
    }
    catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kMatchingError;
    }
}

}

int main(int argc, char** argv)
{
    CLI::App app{"student-project allocation with lecturer preferences: solvers, "
                 "stability checks, meta-rotations and the rotation poset"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--verbose", opt.verbose, "human-readable summaries on stderr");

    auto* validate = app.add_subcommand("validate", "parse and validate an instance");
    validate->add_option("instance", opt.instance_path, "instance file")->required();

    auto* solve = app.add_subcommand("solve", "print the student- or lecturer-optimal stable matching");
    solve->add_option("--side", opt.side, "student|lecturer")
        ->check(CLI::IsMember({"student", "lecturer"}));
    solve->add_option("instance", opt.instance_path, "instance file")->required();

    auto* check = app.add_subcommand("check", "report STABLE or the blocking pairs of a matching");
    check->add_option("--matching", opt.matching_path, "matching file")->required();
    check->add_option("instance", opt.instance_path, "instance file")->required();

    auto* enumerate = app.add_subcommand("enumerate", "print all stable matchings, sorted");
    enumerate->add_option("--engine", opt.engine, "lattice|oracle")
        ->check(CLI::IsMember({"lattice", "oracle"}));
    enumerate->add_option("instance", opt.instance_path, "instance file")->required();

    auto* rotations = app.add_subcommand("rotations", "print every meta-rotation of the instance");
    rotations->add_option("instance", opt.instance_path, "instance file")->required();

    auto* poset = app.add_subcommand("poset", "export the meta-rotation poset");
    poset->add_option("--format", opt.format, "dot|json")
        ->check(CLI::IsMember({"dot", "json"}));
    poset->add_option("instance", opt.instance_path, "instance file")->required();

    auto* reduce = app.add_subcommand("reduce", "print the instance pruned to its stable pairs");
    reduce->add_option("instance", opt.instance_path, "instance file")->required();

    auto* target = app.add_subcommand("target", "print the elimination sequence reaching a matching");
    target->add_option("--matching", opt.matching_path, "matching file")->required();
    target->add_option("instance", opt.instance_path, "instance file")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParseError;
    }

    try {
        if (validate->parsed())
            return run_validate(opt);
        if (solve->parsed())
            return run_solve(opt);
        if (check->parsed())
            return run_check(opt);
        if (enumerate->parsed())
            return run_enumerate(opt);
        if (rotations->parsed())
            return run_rotations(opt);
        if (poset->parsed())
            return run_poset(opt);
        if (reduce->parsed())
            return run_reduce(opt);
        if (target->parsed())
            return run_target(opt);
    }
    catch (const spas::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kParseError;
    }
    catch (const spas::BoundExceededError& e) {
        std::cerr << e.what() << "\n";
        return kBoundExceeded;
    }
    catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kParseError;
    }
    return kOk;
}
