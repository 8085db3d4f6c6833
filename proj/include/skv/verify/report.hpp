#pragma once

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "skv/verify/algebra.hpp"
#include "skv/verify/checks.hpp"

namespace skv {

inline constexpr const char* kReportVersion = "skvreport/1";

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"fixture",    "stickelberger_int", "sku_maxord", "brumer",
                                                   "brumer_stark", "negative_r",      "reduction",  "algebra"};
    return names;
}

/// Hex SHA-256 of a byte string.
inline std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw ResourceError("SHA-256 failed");
    std::ostringstream s;
    for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return s.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FixtureError(path, "cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Report {
    std::string fixture;
    std::string digest;  // "sha256:<hex>" of the fixture bytes
    std::uint64_t seed = 0;
    std::vector<Verdict> verdicts;
    Json exceptional = nullptr;
    Json timings = nullptr;  // only filled on request: they would break byte-identical reports
};

/// Runs one named fixture suite, or every one with "all". Sets are routed by shape:
/// stickelberger_int takes sets with T nonempty, sku_maxord those with r = 0
/// and T nonempty, brumer and brumer_stark those with r = 0 and T empty,
/// negative_r those with r < 0 and T empty, reduction all of them.
inline std::vector<Verdict> run_suite(const CheckContext& ctx, const std::string& suite,
                                      const std::vector<PlaceSets>& sets, std::optional<std::uint64_t> p = {}) {
    const bool all = suite == "all";
    if (!all && (suite == "algebra" || std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()))
        throw InvalidArgument("unknown fixture suite '" + suite + "'");
    std::vector<Verdict> out;
    auto want = [&](const char* name) { return all || suite == name; };
    if (want("fixture")) out.push_back(check_fixture(ctx.f));
    for (const auto& ps : sets) {
        const bool has_t = !ps.t.empty();
        if (want("stickelberger_int") && (has_t || !all)) out.push_back(check_stickelberger_int(ctx, ps, p));
        if (want("sku_maxord") && ((ps.r == 0 && has_t) || !all)) out.push_back(check_sku_maxord(ctx, ps));
        if (want("brumer") && ((ps.r == 0 && !has_t) || !all)) out.push_back(check_brumer(ctx, ps.s));
        if (want("brumer_stark") && ((ps.r == 0 && !has_t) || !all)) out.push_back(check_brumer_stark_necessary(ctx, ps.s));
        if (want("negative_r") && ps.r < 0 && (!has_t || !all)) out.push_back(check_negative_r(ctx, ps));
        if (want("reduction")) out.push_back(check_reduction(ctx, ps));
    }
    return out;
}

inline Json to_json(const Report& r) {
    Json j;
    j["version"] = kReportVersion;
    j["fixture"] = r.fixture;
    j["fixture_digest"] = r.digest;
    j["seed"] = r.seed;
    Json vs = Json::array();
    for (const auto& v : r.verdicts) vs.push_back(to_json(v));
    j["verdicts"] = vs;
    j["exceptional_primes"] = r.exceptional;
    j["timings"] = r.timings;
    j["exit_code"] = exit_code(r.verdicts);
    return j;
}

inline std::string to_text(const Report& r) {
    std::ostringstream s;
    s << kReportVersion << "\n";
    s << "fixture: " << r.fixture << "\n";
    s << "digest: " << r.digest << "\n";
    s << "seed: " << r.seed << "\n";
    for (const auto& v : r.verdicts) {
        v.validate();
        s << "[" << to_string(v.status) << "] " << v.check_id << " " << v.subject << "\n";
        for (const auto& why : v.reasons) s << "  reason: " << why << "\n";
        for (const auto& w : v.witnesses)
            if (w.value("role", "") == "counterexample") s << "  witness: " << w.dump() << "\n";
        for (const auto& n : v.notes) s << "  note: " << n << "\n";
    }
    if (r.exceptional.is_array()) {
        s << "exceptional primes:";
        for (const auto& e : r.exceptional)
            if (e["exceptional"].get<bool>()) s << " " << e["p"].get<std::uint64_t>();
        s << "\n";
    }
    if (!r.timings.is_null()) s << "timings: " << r.timings.dump() << "\n";
    s << "exit: " << exit_code(r.verdicts) << "\n";
    return s.str();
}

}  // namespace skv
