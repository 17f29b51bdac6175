#ifndef TRAITLAB_CONTAINMENT_HPP
#define TRAITLAB_CONTAINMENT_HPP

// Containment monitoring: a machine is contained when no trace configuration
// shows classified content on its tape (condition 1) and every output is
// unclassified (condition 2).

#include "traitlab/error.hpp"
#include "traitlab/machine.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace traitlab {

class ContainmentPolicy {
public:
    using Predicate = std::function<bool(std::string_view)>;

    /// Unclassified = contains no classified string as a substring.
    explicit ContainmentPolicy(std::vector<std::string> classified)
        : ContainmentPolicy(classified, substring_free(classified), "no classified substring")
    {
    }

    ContainmentPolicy(std::vector<std::string> classified, Predicate unclassified, std::string description)
        : classified_(std::move(classified)), unclassified_(std::move(unclassified)),
          description_(std::move(description))
    {
        for (const auto& c : classified_) {
            if (c.empty())
                throw InvariantError("classified", "classified strings must be nonempty");
            if (unclassified_(c))
                throw InvariantError("classified", "classified string '" + c + "' satisfies the unclassified predicate");
        }
    }

    /// {"classified": [...], "unclassified_regex": "..."}; the regex must match
    /// a whole string. Without a regex the substring rule applies.
    static ContainmentPolicy from_json(std::string_view text)
    {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(0, e.byte, std::string("policy is not valid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("classified") || !j["classified"].is_array())
            throw ParseError(0, 0, "policy needs a 'classified' array");
        std::vector<std::string> classified;
        for (const auto& c : j["classified"]) {
            if (!c.is_string())
                throw ParseError(0, 0, "classified entries must be strings");
            classified.push_back(c.get<std::string>());
        }
        if (!j.contains("unclassified_regex"))
            return ContainmentPolicy(std::move(classified));
        if (!j["unclassified_regex"].is_string())
            throw ParseError(0, 0, "'unclassified_regex' must be a string");
        const auto pattern = j["unclassified_regex"].get<std::string>();
        std::regex re;
        try {
            re = std::regex(pattern, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            throw ParseError(0, 0, "bad unclassified_regex: " + std::string(e.what()));
        }
        return {std::move(classified),
                [re](std::string_view s) { return std::regex_match(s.begin(), s.end(), re); },
                "regex " + pattern};
    }

    const std::vector<std::string>& classified() const noexcept { return classified_; }
    const std::string& description() const noexcept { return description_; }
    bool unclassified(std::string_view s) const { return unclassified_(s); }

    /// First classified string occurring in `text`, if any.
    std::optional<std::string> find_classified(std::string_view text) const
    {
        for (const auto& c : classified_)
            if (text.find(c) != std::string_view::npos)
                return c;
        return std::nullopt;
    }

private:
    static Predicate substring_free(const std::vector<std::string>& classified)
    {
        return [classified](std::string_view s) {
            for (const auto& c : classified)
                if (s.find(c) != std::string_view::npos)
                    return false;
            return true;
        };
    }

    std::vector<std::string> classified_;
    Predicate unclassified_;
    std::string description_;
};

struct ContainmentViolation {
    std::string input;
    /// Condition 1: trace step whose configuration shows the string.
    /// Condition 2: the run's step count.
    std::uint64_t step;
    std::string evidence;
};

struct ContainmentReport {
    enum class Verdict { Contained, Violated, Inconclusive };

    std::vector<ContainmentViolation> condition1;
    std::vector<ContainmentViolation> condition2;
    std::vector<std::string> exhausted;
    Verdict verdict = Verdict::Contained;
};

inline const char* to_string(ContainmentReport::Verdict v)
{
    switch (v) {
    case ContainmentReport::Verdict::Contained: return "Contained";
    case ContainmentReport::Verdict::Violated: return "Violated";
    case ContainmentReport::Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// Scans every configuration of every run for classified tape content and
/// checks every defined output against the unclassified predicate. One
/// condition-1 violation is recorded per input (the earliest step).
inline ContainmentReport containment_check(const MachineDescription& m, const ContainmentPolicy& p,
                                           const std::vector<std::string>& inputs, std::uint64_t fuel)
{
    ContainmentReport report;
    for (const auto& sigma : inputs) {
        Execution e(m, sigma);
        bool flagged = false;
        auto scan = [&] {
            if (flagged)
                return;
            if (auto hit = p.find_classified(e.render())) {
                report.condition1.push_back({sigma, e.steps(), *hit});
                flagged = true;
            }
        };
        scan();
        while (!e.halted() && e.steps() < fuel) {
            e.step();
            scan();
        }
        const auto r = e.outcome();
        if (r.exhausted())
            report.exhausted.push_back(sigma);
        else if (const auto* out = r.output(); out && !p.unclassified(*out))
            report.condition2.push_back({sigma, r.steps, *out});
    }
    if (!report.condition1.empty() || !report.condition2.empty())
        report.verdict = ContainmentReport::Verdict::Violated;
    else if (!report.exhausted.empty())
        report.verdict = ContainmentReport::Verdict::Inconclusive;
    return report;
}

} // namespace traitlab

#endif
