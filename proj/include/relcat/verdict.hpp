#pragma once

#include <string>
#include <vector>

namespace relcat {

enum class Outcome { Pass, Fail, Inconclusive };

inline const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::Pass: return "Pass";
    case Outcome::Fail: return "Fail";
    default: return "Inconclusive";
    }
}

/// Three-valued certified outcome. Fail always carries a finite witness,
/// Inconclusive always carries the exhausted bound or missing information.
struct Verdict {
    Outcome outcome = Outcome::Pass;
    std::string witness;  // nonempty iff Fail
    std::string reason;   // nonempty iff Inconclusive
    std::string bounds;   // caps / effort that scope this verdict

    static Verdict pass(std::string bounds = "") {
        return Verdict{Outcome::Pass, "", "", std::move(bounds)};
    }
    static Verdict fail(std::string witness, std::string bounds = "") {
        return Verdict{Outcome::Fail, std::move(witness), "", std::move(bounds)};
    }
    static Verdict inconclusive(std::string reason, std::string bounds = "") {
        return Verdict{Outcome::Inconclusive, "", std::move(reason), std::move(bounds)};
    }
    bool is_pass() const { return outcome == Outcome::Pass; }
    bool is_fail() const { return outcome == Outcome::Fail; }
    bool is_inconclusive() const { return outcome == Outcome::Inconclusive; }

    std::string describe() const {
        std::string s = to_string(outcome);
        if (is_fail() && !witness.empty()) s += " witness=" + witness;
        if (is_inconclusive() && !reason.empty()) s += " reason=" + reason;
        if (!bounds.empty()) s += " [" + bounds + "]";
        return s;
    }
};

struct CheckEntry {
    std::string name;
    Verdict verdict;
};

/// Aggregated named checks. Summary: any Fail dominates, then Inconclusive.
struct Report {
    std::string title;
    std::vector<std::string> meta;  // caps, scope notes; printed verbatim
    std::vector<CheckEntry> entries;

    void add(std::string name, Verdict v) { entries.push_back({std::move(name), std::move(v)}); }
    void note(std::string m) { meta.push_back(std::move(m)); }

    Outcome summary() const {
        bool inc = false;
        for (const auto& e : entries) {
            if (e.verdict.is_fail()) return Outcome::Fail;
            if (e.verdict.is_inconclusive()) inc = true;
        }
        return inc ? Outcome::Inconclusive : Outcome::Pass;
    }
    const CheckEntry* find(const std::string& name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
};

/// Merge: any Fail wins (first witness), else any Inconclusive, else Pass.
inline Verdict combine(const Verdict& a, const Verdict& b) {
    if (a.is_fail()) return a;
    if (b.is_fail()) return b;
    if (a.is_inconclusive()) return a;
    if (b.is_inconclusive()) return b;
    return a;
}

}  // namespace relcat
