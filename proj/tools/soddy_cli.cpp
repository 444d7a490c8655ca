// soddy: command-line front end for the packing library.
//
// Exit codes: 0 success, 1 usage or unexpected error, 2 invalid root, 3 budget exhausted,
// 4 spin identity failure, 5 no coprime pivot, 6 inadmissible target, 7 witness rejected.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "soddy/core.hpp"
#include "soddy/error.hpp"
#include "soddy/geometry.hpp"
#include "soddy/lg.hpp"
#include "soddy/localmod.hpp"
#include "soddy/orbit.hpp"
#include "soddy/spin.hpp"

using json = nlohmann::ordered_json;
using namespace soddy;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kWorkersEnv = "SODDY_WORKERS";

enum Exit : int {
    kOk = 0,
    kFailure = 1,
    kInvalidRoot = 2,
    kBudget = 3,
    kSpinFailure = 4,
    kNoPivot = 5,
    kInadmissible = 6,
    kRejected = 7,
};

struct Config {
    std::string command;
    std::string root_text = "-11,21,25,27,28";
    Quintuple root{};
    std::int64_t bound = 85;
    std::vector<std::int64_t> moduli;
    std::int64_t q_max = 12;
    std::uint64_t effort = 10'000'000;
    unsigned workers = 0;
    std::string format = "json";
    std::string out = "-";
    std::uint64_t seed = 1;
    bool timing = false;
    std::vector<std::int64_t> targets;
    std::vector<std::int64_t> bounds{1000, 10000, 100000};
    std::string convention = "growth";
    std::string witness_path;
    bool approximate = false;
    std::string inject_fault;
};

/// Thrown for failures that map to a specific exit code.
struct ExitError : std::runtime_error {
    int code;
    ExitError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

Quintuple parse_root(const std::string& text) {
    Quintuple v{};
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == 5) throw ExitError(kInvalidRoot, "root must have exactly five entries: " + text);
        try {
            std::size_t used = 0;
            v[i++] = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ExitError(kInvalidRoot, "root entry is not an integer: '" + item + "'");
        }
    }
    if (i != 5) throw ExitError(kInvalidRoot, "root must have exactly five entries: " + text);
    try {
        if (!on_cone(v))
            throw ExitError(kInvalidRoot, "root " + to_string(v) + " is off the cone (Q = " +
                                              std::to_string(soddy_form(v)) + ")");
    } catch (const OverflowError& e) {
        throw ExitError(kInvalidRoot, std::string("root entries too large: ") + e.what());
    }
    if (!is_primitive(v)) throw ExitError(kInvalidRoot, "root " + to_string(v) + " is not primitive");
    return v;
}

unsigned resolve_workers(unsigned flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv(kWorkersEnv)) {
        try {
            const long n = std::stol(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::logic_error&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

json quintuple_json(const Quintuple& v) { return json(std::vector<std::int64_t>(v.begin(), v.end())); }

json metadata(const Config& c, double elapsed) {
    json cfg;
    cfg["root"] = quintuple_json(c.root);
    cfg["bound"] = c.bound;
    if (c.moduli.empty())
        cfg["modulus"] = nullptr;
    else
        cfg["modulus"] = c.moduli;
    cfg["effort"] = c.effort;
    cfg["workers"] = c.workers;
    cfg["format"] = c.format;
    json m;
    m["tool"] = "soddy";
    m["version"] = kVersion;
    m["command"] = c.command;
    m["config"] = cfg;
    m["seed"] = c.seed;
    if (c.timing) m["elapsed_seconds"] = elapsed;
    return m;
}

struct Output {
    json result;               ///< JSON body
    std::string csv;           ///< CSV body, when the command has a tabular form
    bool has_csv = false;
};

void emit(const Config& c, const Output& o, double elapsed) {
    std::ostringstream text;
    if (c.format == "csv" && o.has_csv) {
        const json m = metadata(c, elapsed);
        text << "# tool=soddy\n# version=" << kVersion << "\n# command=" << c.command << "\n# root="
             << c.root_text << "\n# bound=" << c.bound << "\n# workers=" << c.workers << "\n# seed=" << c.seed
             << "\n";
        if (c.timing) text << "# elapsed_seconds=" << elapsed << "\n";
        text << o.csv;
    } else {
        json doc;
        doc["meta"] = metadata(c, elapsed);
        doc["result"] = o.result;
        text << doc.dump(2) << "\n";
    }
    if (c.out == "-") {
        std::cout << text.str();
        std::cout.flush();
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ExitError(kFailure, "cannot open output file " + c.out);
    f << text.str();
}

// ---------------------------------------------------------------------------
// Commands

Output cmd_curvatures(const Config& c) {
    const auto walk = walk_orbit(c.root, c.bound, c.workers);
    const auto counts = walk.curvature_map();
    Output o;
    std::ostringstream csv;
    write_curvature_csv(csv, counts);
    o.csv = csv.str();
    o.has_csv = true;
    json rows = json::array();
    for (const auto& [k, n] : counts) rows.push_back({{"curvature", k}, {"count", n}});
    o.result["root"] = quintuple_json(walk.root);
    o.result["quintuples"] = walk.quintuple_count;
    o.result["distinct"] = counts.size();
    o.result["curvatures"] = rows;
    return o;
}

Output cmd_counts_fit(const Config& c) {
    std::vector<std::uint64_t> counts;
    CountFit fit;
    if (c.convention == "growth") {
        fit = fit_counting_exponent(c.root, c.bounds, c.workers);
    } else if (c.convention == "census") {
        for (auto b : c.bounds) counts.push_back(sphere_census(c.root, b).size());
        fit = fit_loglog(c.bounds, counts);
    } else {
        throw ExitError(kFailure, "unknown convention '" + c.convention + "' (growth or census)");
    }
    Output o;
    o.result["convention"] = c.convention;
    o.result["bounds"] = fit.bounds;
    o.result["counts"] = fit.counts;
    o.result["slope"] = fit.slope;
    o.result["intercept"] = fit.intercept;
    o.result["slope_rational"] = fit.slope_approx.str();
    std::ostringstream csv;
    csv << "bound,count\n";
    for (std::size_t i = 0; i < fit.bounds.size(); ++i) csv << fit.bounds[i] << ',' << fit.counts[i] << '\n';
    csv << "# slope=" << fit.slope << "\n";
    o.csv = csv.str();
    o.has_csv = true;
    return o;
}

Output cmd_admissible(const Config& c) {
    const auto profile = PackingProfile::from_quintuple(c.root);
    std::vector<std::int64_t> targets = c.targets;
    if (targets.empty())
        for (std::int64_t n = 1; n <= c.bound; ++n) targets.push_back(n);
    std::int64_t top = 0;
    for (auto n : targets) {
        if (n < 1) throw ExitError(kFailure, "targets must be >= 1");
        top = std::max(top, n);
    }
    const auto walk = walk_orbit(c.root, top, c.workers);
    Output o;
    std::ostringstream csv;
    csv << "n,admissible,represented\n";
    json rows = json::array();
    for (auto n : targets) {
        const bool adm = is_admissible(profile, n);
        const bool rep = walk.present(n);
        csv << n << ',' << (adm ? 1 : 0) << ',' << (rep ? 1 : 0) << '\n';
        rows.push_back({{"n", n}, {"admissible", adm}, {"represented", rep}});
    }
    o.csv = csv.str();
    o.has_csv = true;
    o.result["epsilon"] = profile.epsilon;
    o.result["rows"] = rows;
    return o;
}

Output cmd_exceptions(const Config& c) {
    const auto rep = exceptions(c.root, c.bound, c.workers);
    Output o;
    std::vector<std::int64_t> upper;
    for (auto n : rep.exceptions)
        if (n > c.bound / 2) upper.push_back(n);
    o.result["bound"] = rep.bound;
    o.result["exceptions"] = rep.exceptions;
    o.result["count"] = rep.exceptions.size();
    o.result["largest"] = rep.largest() ? json(*rep.largest()) : json(nullptr);
    o.result["upper_half_exceptions"] = upper;
    o.result["upper_half_clear"] = upper.empty();
    std::ostringstream csv;
    csv << "n\n";
    for (auto n : rep.exceptions) csv << n << '\n';
    o.csv = csv.str();
    o.has_csv = true;
    return o;
}

Output cmd_census_mod9(const Config&) {
    const auto census = cone_census_mod9();
    Output o;
    o.result["classes"] = census.class_count;
    o.result["primitive_classes"] = census.primitive_class_count;
    o.result["imprimitive_classes"] = census.imprimitive_class_count;
    json red = json::array();
    for (const auto& r : census.reductions_mod3) red.push_back(quintuple_json(r));
    o.result["reductions_mod3"] = red;
    o.result["reductions_fixed_by_generators"] = census.reductions_fixed;
    json reps = json::array();
    for (const auto& r : census.classes) reps.push_back(quintuple_json(r));
    o.result["representatives"] = reps;
    std::ostringstream csv;
    csv << "k1,k2,k3,k4,k5\n";
    for (const auto& r : census.classes) csv << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ',' << r[4] << '\n';
    o.csv = csv.str();
    o.has_csv = true;
    return o;
}

Output cmd_obstruction_scan(const Config& c) {
    std::vector<LocalReport> reps;
    if (c.moduli.empty()) {
        reps = obstruction_scan(c.root, c.q_max);
    } else {
        for (auto q : c.moduli) reps.push_back(local_report(c.root, q));
    }
    Output o;
    json rows = json::array();
    std::ostringstream csv;
    csv << "modulus,orbit_size,admissible_count,obstruction,matches_mod3,budget_exceeded\n";
    for (const auto& r : reps) {
        rows.push_back({{"modulus", r.modulus},
                        {"orbit_size", r.orbit_size},
                        {"admissible_residues", r.admissible_residues},
                        {"obstruction", r.obstruction},
                        {"matches_mod3", r.matches_mod3},
                        {"budget_exceeded", r.budget_exceeded}});
        csv << r.modulus << ',' << r.orbit_size << ',' << r.admissible_residues.size() << ',' << r.obstruction
            << ',' << r.matches_mod3 << ',' << r.budget_exceeded << '\n';
    }
    o.result["reports"] = rows;
    o.csv = csv.str();
    o.has_csv = true;
    return o;
}

Output cmd_spin_verify(const Config& c) {
    RationalMatrix5 J = change_of_variables_J();
    if (c.inject_fault == "jcong") {
        J(2, 1) = J(2, 1) + Rational(1);
    } else if (!c.inject_fault.empty()) {
        throw ExitError(kFailure, "unknown fault '" + c.inject_fault + "'");
    }
    const auto rep = run_spin_identities(J, c.seed);
    Output o;
    json checks = json::array();
    for (const auto& chk : rep.checks)
        checks.push_back({{"name", chk.name}, {"passed", chk.passed}, {"detail", chk.detail}});
    o.result["seed"] = rep.seed;
    o.result["all_passed"] = rep.all_passed();
    o.result["checks"] = checks;
    if (const auto* f = rep.first_failure()) {
        o.result["first_failure"] = f->name;
        emit(c, o, 0);
        throw ExitError(kSpinFailure, "spin identity failed: " + f->name + " (" + f->detail + ")");
    }
    return o;
}

json witness_json(const Witness& w) {
    return {{"n", w.n},
            {"pivot", w.pivot()},
            {"gamma", {w.gamma.a, w.gamma.b}},
            {"delta", {w.delta.a, w.delta.b}},
            {"quintuple", quintuple_json(w.permuted)},
            {"root", quintuple_json(w.root)},
            {"base", quintuple_json(w.base)},
            {"perm", w.perm},
            {"value", w.value},
            {"certificate", quintuple_json(w.certificate)}};
}

Witness witness_from_json(const nlohmann::json& j) {
    auto quint = [&](const char* key) {
        const auto v = j.at(key).get<std::vector<std::int64_t>>();
        if (v.size() != 5) throw std::invalid_argument(std::string(key) + " must have five entries");
        return Quintuple{v[0], v[1], v[2], v[3], v[4]};
    };
    auto eis = [&](const char* key) {
        const auto v = j.at(key).get<std::vector<std::int64_t>>();
        if (v.size() != 2) throw std::invalid_argument(std::string(key) + " must have two entries");
        return Eisenstein{v[0], v[1]};
    };
    Witness w;
    w.n = j.at("n").get<std::int64_t>();
    w.root = quint("root");
    w.base = quint("base");
    w.perm = j.at("perm").get<std::array<int, 5>>();
    w.permuted = quint("quintuple");
    w.gamma = eis("gamma");
    w.delta = eis("delta");
    w.value = j.at("value").get<std::int64_t>();
    w.certificate = quint("certificate");
    return w;
}

Output cmd_represent(const Config& c) {
    if (c.targets.size() != 1) throw ExitError(kFailure, "represent needs exactly one --n");
    const std::int64_t n = c.targets.front();
    const auto profile = PackingProfile::from_quintuple(c.root);
    if (n < 1 || !is_admissible(profile, n))
        throw ExitError(kInadmissible, std::to_string(n) + " is not admissible for this packing: curvatures are 0 or " +
                                           std::to_string(profile.epsilon) + " mod 3");
    RepresentOptions opts;
    opts.effort = c.effort;
    RepresentResult res;
    try {
        res = represent(c.root, n, opts);
    } catch (const NoCoprimePivot& e) {
        throw ExitError(kNoPivot, e.what());
    }
    Output o;
    o.result["n"] = n;
    o.result["found"] = res.witness.has_value();
    o.result["effort_used"] = res.effort_used;
    o.result["bases_tried"] = res.bases_tried;
    o.result["permutations_tried"] = res.permutations_tried;
    o.result["budget_exhausted"] = res.budget_exhausted;
    if (res.witness) o.result["witness"] = witness_json(*res.witness);
    if (res.budget_exhausted) {
        emit(c, o, 0);
        throw ExitError(kBudget, "effort budget of " + std::to_string(c.effort) + " exhausted");
    }
    return o;
}

Output cmd_verify_witness(const Config& c) {
    if (c.witness_path.empty()) throw ExitError(kFailure, "verify-witness needs --witness FILE");
    std::ifstream f(c.witness_path);
    if (!f) throw ExitError(kFailure, "cannot read " + c.witness_path);
    nlohmann::json doc;
    Witness w;
    try {
        doc = nlohmann::json::parse(f);
        // Accept a bare witness, a represent record, or a full represent output document.
        const nlohmann::json* j = &doc;
        if (j->contains("result")) j = &j->at("result");
        if (j->contains("witness")) j = &j->at("witness");
        w = witness_from_json(*j);
    } catch (const std::exception& e) {
        throw ExitError(kFailure, std::string("malformed witness file: ") + e.what());
    }
    const auto chk = verify_witness(w);
    Output o;
    o.result["valid"] = chk.ok();
    o.result["reason"] = to_string(chk.fault);
    o.result["detail"] = chk.detail;
    if (!chk.ok()) {
        emit(c, o, 0);
        throw ExitError(kRejected, "witness rejected: " + to_string(chk.fault) + " (" + chk.detail + ")");
    }
    return o;
}

Output cmd_geometry_export(const Config& c) {
    RealizeOptions opts;
    opts.force_approximate = c.approximate;
    const auto census = sphere_census(c.root, c.bound, opts);
    Output o;
    o.result["approximate"] = census.approximate;
    o.result["spheres"] = census.size();
    o.result["scene"] = json::parse(export_scene(census));
    return o;
}

Output cmd_stability_scan(const Config& c) {
    const auto rep = stability_scan(c.root, c.bound, c.workers);
    Output o;
    auto opt = [](const std::optional<std::int64_t>& x) { return x ? json(*x) : json(nullptr); };
    o.result["bound"] = rep.bound;
    o.result["largest_exception"] = opt(rep.largest_exception);
    o.result["largest_exception_at_half"] = opt(rep.largest_exception_at_half);
    o.result["upper_half_exceptions"] = rep.upper_half_exceptions;
    o.result["vacuous"] = rep.vacuous;
    o.result["stable"] = rep.stable();
    return o;
}

void add_common(CLI::App* sub, Config& c) {
    sub->add_option("--root", c.root_text, "Packing quintuple, comma separated");
    sub->add_option("--bound", c.bound, "Curvature bound");
    sub->add_option("--modulus", c.moduli, "Moduli (comma separated)")->delimiter(',');
    sub->add_option("--effort", c.effort, "Search effort limit");
    sub->add_option("--workers", c.workers, std::string("Worker threads (default: $") + kWorkersEnv + " or all cores)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "Output file, - for stdout");
    sub->add_option("--seed", c.seed, "Seed for randomized self-checks");
    sub->add_flag("--timing", c.timing, "Record elapsed time in the metadata");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral Soddy sphere packings: orbits, local obstructions and representation witnesses"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Config c;

    struct Entry {
        const char* name;
        const char* help;
        Output (*run)(const Config&);
    };
    const std::vector<Entry> commands{
        {"curvatures", "Distinct curvatures with multiplicities up to --bound", cmd_curvatures},
        {"counts-fit", "Log-log fit of sphere counts over --bounds", cmd_counts_fit},
        {"admissible", "Admissibility and representation for --n or 1..--bound", cmd_admissible},
        {"exceptions", "Admissible numbers up to --bound that are not curvatures", cmd_exceptions},
        {"census-mod9", "Permutation classes of cone solutions mod 9", cmd_census_mod9},
        {"obstruction-scan", "Admissible residues modulo each q <= --q-max (or --modulus)", cmd_obstruction_scan},
        {"spin-verify", "Check the spin-cover identities", cmd_spin_verify},
        {"represent", "Search for a representation witness of --n", cmd_represent},
        {"verify-witness", "Re-derive and check a witness file", cmd_verify_witness},
        {"geometry-export", "Exact sphere census up to --bound as a scene", cmd_geometry_export},
        {"stability-scan", "Largest exception and the (bound/2, bound] frontier", cmd_stability_scan},
    };
    std::vector<std::pair<CLI::App*, const Entry*>> subs;
    for (const auto& e : commands) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, c);
        subs.emplace_back(sub, &e);
    }
    app.get_subcommand("counts-fit")->add_option("--bounds", c.bounds, "Bounds to fit")->delimiter(',');
    app.get_subcommand("counts-fit")
        ->add_option("--convention", c.convention, "growth (orbit walk) or census (distinct spheres)");
    app.get_subcommand("admissible")->add_option("--n", c.targets, "Targets")->delimiter(',');
    app.get_subcommand("represent")->add_option("--n", c.targets, "Target curvature");
    app.get_subcommand("obstruction-scan")->add_option("--q-max", c.q_max, "Largest modulus");
    app.get_subcommand("verify-witness")->add_option("--witness", c.witness_path, "Witness JSON file");
    app.get_subcommand("geometry-export")->add_flag("--approximate", c.approximate, "Use the 50-digit fallback");
    app.get_subcommand("spin-verify")->add_option("--inject-fault", c.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const Entry* entry = nullptr;
    for (const auto& [sub, e] : subs)
        if (sub->parsed()) entry = e;
    c.command = entry->name;

    try {
        c.root = parse_root(c.root_text);
        c.workers = resolve_workers(c.workers);
        const auto t0 = std::chrono::steady_clock::now();
        Output o = entry->run(c);
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(c, o, elapsed);
        return kOk;
    } catch (const ExitError& e) {
        std::cerr << "soddy " << c.command << ": " << e.what() << "\n";
        return e.code;
    } catch (const MalformedQuintuple& e) {
        std::cerr << "soddy " << c.command << ": " << e.what() << "\n";
        return kInvalidRoot;
    } catch (const BudgetExceeded& e) {
        std::cerr << "soddy " << c.command << ": budget exceeded after " << e.progress() << " units: " << e.what()
                  << "\n";
        return kBudget;
    } catch (const NotAdmissible& e) {
        std::cerr << "soddy " << c.command << ": " << e.what() << "\n";
        return kInadmissible;
    } catch (const NoCoprimePivot& e) {
        std::cerr << "soddy " << c.command << ": " << e.what() << "\n";
        return kNoPivot;
    } catch (const std::exception& e) {
        std::cerr << "soddy " << c.command << ": " << e.what() << "\n";
        return kFailure;
    }
}
