#pragma once

#include <string>
#include <vector>

#include "skv/errors.hpp"
#include "skv/exact/serialize.hpp"

namespace skv {

enum class Status { verified, falsified, inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::verified: return "verified";
        case Status::falsified: return "falsified";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Outcome of one check. Falsified verdicts carry a counterexample witness,
/// inconclusive ones a reason naming the bound or fixture field at fault.
struct Verdict {
    std::string check_id;
    std::string subject;
    Status status = Status::verified;
    std::vector<Json> witnesses;  // each has "role": "counterexample" or "confirming"
    std::vector<std::string> notes;
    std::vector<std::string> reasons;  // why inconclusive
    std::vector<std::string> provenance;

    Verdict(std::string id, std::string subj) : check_id(std::move(id)), subject(std::move(subj)) {}

    void falsify(Json w) {
        w["role"] = "counterexample";
        witnesses.push_back(std::move(w));
        status = Status::falsified;
    }
    void confirm(Json w) {
        w["role"] = "confirming";
        witnesses.push_back(std::move(w));
    }
    void inconclusive(std::string why) {
        reasons.push_back(std::move(why));
        if (status == Status::verified) status = Status::inconclusive;
    }
    void note(std::string n) { notes.push_back(std::move(n)); }

    bool has_counterexample() const {
        for (const auto& w : witnesses)
            if (w.value("role", "") == "counterexample") return true;
        return false;
    }

    /// Throws InternalError when the verdict breaks its own contract.
    void validate() const {
        if (status == Status::falsified && !has_counterexample())
            throw InternalError("falsified verdict " + check_id + " without a witness");
        if (status == Status::inconclusive && reasons.empty())
            throw InternalError("inconclusive verdict " + check_id + " without a reason");
    }
};

inline Json to_json(const Verdict& v) {
    v.validate();
    Json j;
    j["checkId"] = v.check_id;
    j["subject"] = v.subject;
    j["status"] = to_string(v.status);
    j["witnesses"] = v.witnesses;
    j["notes"] = v.notes;
    j["reasons"] = v.reasons;
    j["provenance"] = v.provenance;
    return j;
}

/// 0 all verified, 1 any falsified, 2 inconclusive without falsified.
inline int exit_code(const std::vector<Verdict>& vs) {
    bool inconclusive = false;
    for (const auto& v : vs) {
        if (v.status == Status::falsified) return 1;
        if (v.status == Status::inconclusive) inconclusive = true;
    }
    return inconclusive ? 2 : 0;
}

}  // namespace skv
