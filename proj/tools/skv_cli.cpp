#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skv/verify/report.hpp"

using namespace skv;

namespace {

constexpr int kUsageError = 3;

struct Options {
    std::string fixture, out, format = "json", suite, set_name, s, t, presentation, group, fault;
    std::int64_t r = 0;
    std::size_t bound = 2, per_place = 8, instances = 100;
    std::uint64_t seed = 0, p = 0;
    bool timings = false, truncated_u = false;
    std::vector<std::string> validate_paths;
};

std::vector<std::string> split_labels(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
    }
    return out;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ResourceError("cannot write " + o.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
}

std::string dump(const Json& j) { return j.dump(1); }

const ExtensionFixture& require_fixture(const Options& o, std::optional<ExtensionFixture>& holder) {
    if (o.fixture.empty()) throw InvalidArgument("--fixture is required");
    holder = load_fixture(o.fixture);
    return *holder;
}

/// The place sets named by --set, given by --S/--T/--r, or all declared sets.
std::vector<PlaceSets> selected_sets(const Options& o, const ExtensionFixture& f) {
    if (!o.set_name.empty()) {
        for (const auto& s : f.sets)
            if (s.name == o.set_name) return {s};
        throw InvalidArgument("fixture " + f.name + " has no set '" + o.set_name + "'");
    }
    if (!o.s.empty()) {
        PlaceSets ps;
        ps.s = split_labels(o.s);
        ps.t = split_labels(o.t);
        ps.r = o.r;
        return {ps};
    }
    return f.sets;
}

std::string theta_text(const ThetaElement& th) {
    std::ostringstream s;
    s << "theta_S^T(" << th.r << ") S=" << detail::labels_str(th.s) << " T=" << detail::labels_str(th.t) << "\n";
    const auto& t = th.value.table();
    for (std::size_t i = 0; i < t.size(); ++i) s << "  " << t.label(i) << ": " << th.value[i].str() << "\n";
    s << "group ring:";
    const auto ring = th.value.ring();
    for (Elem e = 0; e < t.group().order(); ++e)
        if (!ring[e].is_zero()) s << " " << ring[e].str() << "*" << t.group().labels()[e];
    s << "\n";
    return s.str();
}

int run_theta(const Options& o) {
    std::optional<ExtensionFixture> holder;
    const auto& f = require_fixture(o, holder);
    const auto t = std::make_shared<const CharacterTable>(CharacterTable::build(*f.group));
    const auto sets = selected_sets(o, f);
    if (sets.size() != 1) throw InvalidArgument("theta needs --set or --S");
    const auto th = theta_monomial(f, t, sets.front().s, sets.front().t, sets.front().r);
    emit(o, o.format == "text" ? theta_text(th) : dump(to_json(th, f.name)));
    return 0;
}

std::optional<Rational> parse_fault(const Options& o) {
    if (o.fault.empty()) return std::nullopt;
    return Rational::parse(o.fault);
}

int run_check(const Options& o) {
    Report rep;
    rep.seed = o.seed;
    const auto t0 = std::chrono::steady_clock::now();
    if (o.suite == "algebra") {
        const std::vector<std::string> groups = o.group.empty() ? std::vector<std::string>{"S3", "D4", "Q8", "C6"}
                                                                : std::vector<std::string>{o.group};
        for (const auto& g : groups) rep.verdicts.push_back(check_algebra(g, o.seed, o.instances, parse_fault(o)));
    } else {
        std::optional<ExtensionFixture> holder;
        const auto& f = require_fixture(o, holder);
        rep.fixture = f.name;
        rep.digest = "sha256:" + sha256_hex(read_file(o.fixture));
        const RepresentationTable reps(std::make_shared<const CharacterTable>(CharacterTable::build(*f.group)));
        CheckContext ctx(f, reps);
        ctx.bound = o.bound;
        ctx.seed = o.seed;
        ctx.fault = parse_fault(o);
        std::optional<std::uint64_t> p;
        if (o.p) p = o.p;
        rep.verdicts = run_suite(ctx, o.suite, selected_sets(o, f), p);
        rep.exceptional = exceptional_primes(f);
    }
    if (o.timings) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        rep.timings = {{"total_ms", ms}};
    }
    emit(o, o.format == "text" ? to_text(rep) : dump(to_json(rep)));
    return exit_code(rep.verdicts);
}

int run_sku(const Options& o) {
    std::optional<ExtensionFixture> holder;
    const auto& f = require_fixture(o, holder);
    const RepresentationTable reps(std::make_shared<const CharacterTable>(CharacterTable::build(*f.group)));
    const auto sets = selected_sets(o, f);
    if (sets.size() != 1) throw InvalidArgument("sku needs --set or --S");
    const auto gens = o.truncated_u ? sku_generators(f, reps, sets.front().s, o.bound, o.per_place)
                                    : sku_prime_generators(f, reps, sets.front().s, o.bound);
    Json j;
    j["fixture"] = f.name;
    j["S"] = sets.front().s;
    j["kind"] = o.truncated_u ? "SKu (truncated U)" : "SKu'";
    j["truncated"] = gens.truncated;
    j["notes"] = gens.notes;
    Json list = Json::array();
    for (const auto& g : gens.generators) list.push_back({{"tag", g.tag}, {"element", to_json(g.value, f.name)}});
    j["generators"] = list;
    if (o.format == "text") {
        std::ostringstream s;
        s << j["kind"].get<std::string>() << " generators for " << f.name << " S=" << detail::labels_str(sets.front().s) << ": "
          << gens.generators.size() << (gens.truncated ? " (truncated)" : "") << "\n";
        for (const auto& g : gens.generators) {
            s << "  " << g.tag << ":";
            for (const auto& c : g.value.components()) s << " " << c.str();
            s << "\n";
        }
        for (const auto& n : gens.notes) s << "  note: " << n << "\n";
        emit(o, s.str());
    } else {
        emit(o, dump(j));
    }
    return 0;
}

/// Presentation file: {"group": {...}, "relations": [[[c_e ...], ...], ...]},
/// one row per relation and one coefficient list (indexed by group element) per column.
int run_fitting(const Options& o) {
    if (o.presentation.empty()) throw InvalidArgument("--presentation is required");
    Json j;
    try {
        j = Json::parse(read_file(o.presentation));
    } catch (const Json::parse_error& e) {
        throw FixtureError(o.presentation, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("group") || !j.contains("relations"))
        throw FixtureError("$", "expected an object with group and relations");
    const auto g0 = detail::parse_group(j["group"], "$.group");
    const auto t = std::make_shared<const CharacterTable>(CharacterTable::build(*g0));
    const RepresentationTable reps(t);
    const auto g = t->group_ptr();
    const auto& rel = j["relations"];
    if (!rel.is_array() || rel.empty() || !rel[0].is_array() || rel[0].empty())
        throw FixtureError("$.relations", "expected a nonempty matrix");
    const std::size_t a = rel.size(), b = rel[0].size();
    PresentationModule pm{GroupRingMatrix(a, b, GroupRingElement(g))};
    for (std::size_t i = 0; i < a; ++i) {
        const auto path = "$.relations[" + std::to_string(i) + "]";
        if (!rel[i].is_array() || rel[i].size() != b) throw FixtureError(path, "expected " + std::to_string(b) + " entries");
        for (std::size_t k = 0; k < b; ++k) {
            const auto& c = rel[i][k];
            const auto cpath = path + "[" + std::to_string(k) + "]";
            if (!c.is_array() || c.size() != g->order())
                throw FixtureError(cpath, "expected " + std::to_string(g->order()) + " integer coefficients");
            for (Elem e = 0; e < g->order(); ++e) {
                if (!c[e].is_number_integer()) throw FixtureError(cpath, "expected integers");
                pm.h(i, k)[e] = CyclotomicNumber(c[e].get<long>());
            }
        }
    }
    const auto fit = fitting_of_presentation(pm, reps);
    Json out;
    Json gens = Json::array();
    for (const auto& fg : fit.generators) gens.push_back({{"rows", fg.rows}, {"value", to_json(fg.value, "G")}});
    out["fitting"] = gens;
    out["equivalence"] = fit.equivalence_note;
    int code = 0;
    if (pm.quadratic() || a >= b) {
        try {
            const auto m = module_from_presentation(pm);
            Json factors = Json::array();
            for (const auto& n : m.factors()) factors.push_back(n.get_str());
            out["module"] = {{"invariant_factors", factors}, {"order", m.order().get_str()}};
            const auto ann = annihilation_check(fitting_values(fit), m, certified_h_members(t));
            out["annihilation"] = {{"annihilates", ann.annihilates}, {"violations", ann.violations.size()}};
            if (!ann.annihilates) code = 1;
        } catch (const InvalidArgument& e) {
            out["module"] = {{"error", e.what()}};
        }
    }
    emit(o, dump(out));
    return code;
}

int run_validate(const Options& o) {
    std::vector<std::string> paths = o.validate_paths;
    if (!o.fixture.empty()) paths.push_back(o.fixture);
    if (paths.empty()) throw InvalidArgument("no fixture given");
    int code = 0;
    std::ostringstream s;
    for (const auto& p : paths) {
        try {
            const auto f = load_fixture(p);
            const auto v = check_fixture(f);
            s << p << ": " << to_string(v.status) << "\n";
            for (const auto& w : v.witnesses)
                if (w.value("role", "") == "counterexample") s << "  " << w["inconsistency"].get<std::string>() << "\n";
            if (v.status == Status::falsified) code = std::max(code, 1);
        } catch (const FixtureError& e) {
            s << p << ": invalid: " << e.what() << "\n";
            code = kUsageError;
        }
    }
    emit(o, s.str());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skv: Stickelberger elements, special L-values and their verification"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--fixture", o.fixture, "fixture file (skvfix/1 JSON)");
    app.add_option("--out", o.out, "write output to this file");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--bound", o.bound, "truncation budget for T searches");
    app.add_option("--seed", o.seed, "seed for randomized parts");
    app.add_flag("--timings", o.timings, "add wall-clock timings to reports");

    auto* theta = app.add_subcommand("theta", "assemble and print theta_S^T(r)");
    theta->add_option("--r", o.r, "s-value r <= 0");
    theta->add_option("--S", o.s, "comma-separated places of S");
    theta->add_option("--T", o.t, "comma-separated places of T");
    theta->add_option("--set", o.set_name, "a set declared in the fixture");

    auto* check = app.add_subcommand("check", "run a verdict suite");
    check->add_option("suite", o.suite, "suite name or all")
        ->required()
        ->check(CLI::IsMember([] {
            auto v = suite_names();
            v.push_back("all");
            return v;
        }()));
    check->add_option("--set", o.set_name, "restrict to one declared set");
    check->add_option("--S", o.s, "comma-separated places of S");
    check->add_option("--T", o.t, "comma-separated places of T");
    check->add_option("--r", o.r, "s-value r <= 0");
    check->add_option("--p", o.p, "p-local membership at this prime");
    check->add_option("--group", o.group, "algebra suite group")->check(CLI::IsMember({"S3", "D4", "Q8", "C6"}));
    check->add_option("--instances", o.instances, "algebra suite instances per property");
    check->add_option("--inject-fault", o.fault, "add this rational times a class sum to every judged element");

    auto* sku = app.add_subcommand("sku", "emit Sinnott-Kurihara generator sets");
    sku->add_option("--S", o.s, "comma-separated places of S");
    sku->add_option("--set", o.set_name, "a set declared in the fixture");
    sku->add_flag("--truncated-u", o.truncated_u, "use the truncated U instead of U'");
    sku->add_option("--per-place", o.per_place, "choices per place for the truncated U");

    auto* fitting = app.add_subcommand("fitting", "Fitting invariant of a presentation");
    fitting->add_option("--presentation", o.presentation, "presentation JSON file")->required();

    auto* fixtures = app.add_subcommand("fixtures", "fixture tools");
    fixtures->require_subcommand(1);
    auto* validate = fixtures->add_subcommand("validate", "validate fixture files");
    validate->add_option("paths", o.validate_paths, "fixture files");

    for (auto* sub : {theta, check, sku, fitting, validate}) sub->fallthrough();
    fixtures->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*theta) return run_theta(o);
        if (*check) return run_check(o);
        if (*sku) return run_sku(o);
        if (*fitting) return run_fitting(o);
        if (*validate) return run_validate(o);
    } catch (const FixtureError& e) {
        std::cerr << "fixture error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
