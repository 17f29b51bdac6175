#ifndef TRAITLAB_MEASURES_HPP
#define TRAITLAB_MEASURES_HPP

// Blum resource measures (TIME, SPACE), their axioms, bound functions and
// Φ-bounded membership, and discriminating-witness search.

#include "traitlab/error.hpp"
#include "traitlab/machine.hpp"
#include "traitlab/transformers.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace traitlab {

using MeasureValue = std::optional<std::uint64_t>;

/// A resource measure Φ. `evaluate` is fuel-relative (defined iff the run
/// yields an output within fuel); `graph_decide` answers Φ(m, σ) = n exactly
/// and always terminates.
struct ResourceMeasure {
    std::string name;
    std::function<MeasureValue(const MachineDescription&, std::string_view, std::uint64_t fuel)> evaluate;
    std::function<bool(const MachineDescription&, std::string_view, std::uint64_t n)> graph_decide;
    /// Resource consumed by a bounded run, finished or not.
    std::function<std::uint64_t(const RunOutcome&)> usage;
};

inline ResourceMeasure time_measure()
{
    return {"TIME",
            [](const MachineDescription& m, std::string_view sigma, std::uint64_t fuel) -> MeasureValue {
                const auto r = run(m, sigma, fuel);
                if (!r.defined())
                    return std::nullopt;
                return r.steps;
            },
            [](const MachineDescription& m, std::string_view sigma, std::uint64_t n) {
                // Exactly n steps: halted at step n, not earlier, with an output.
                const auto r = run(m, sigma, n);
                return r.defined() && r.steps == n;
            },
            [](const RunOutcome& r) { return r.steps; }};
}

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

} // namespace detail

/// |Q| · (j + 2) · |Γ|^j: distinct configurations while exactly j cells have
/// been scanned (the head sits on one of them or on a fresh neighbour).
inline std::uint64_t space_phase_bound(const MachineDescription& m, std::uint64_t cells)
{
    std::uint64_t b = detail::saturating_mul(m.state_count(), cells + 2);
    for (std::uint64_t i = 0; i < cells; ++i)
        b = detail::saturating_mul(b, m.tape_alphabet().size());
    return b;
}

inline ResourceMeasure space_measure()
{
    return {"SPACE",
            [](const MachineDescription& m, std::string_view sigma, std::uint64_t fuel) -> MeasureValue {
                const auto r = run(m, sigma, fuel);
                if (!r.defined())
                    return std::nullopt;
                return r.space;
            },
            [](const MachineDescription& m, std::string_view sigma, std::uint64_t n) {
                Execution e(m, sigma);
                std::uint64_t phase_cells = e.space();
                std::uint64_t phase_steps = 0;
                std::uint64_t bound = space_phase_bound(m, phase_cells);
                while (!e.halted()) {
                    if (e.space() > n)
                        return false;
                    if (e.space() != phase_cells) {
                        phase_cells = e.space();
                        phase_steps = 0;
                        bound = space_phase_bound(m, phase_cells);
                    }
                    // More steps than configurations in this window: a
                    // configuration repeated, so the run never halts.
                    if (phase_steps > bound)
                        return false;
                    e.step();
                    ++phase_steps;
                }
                const auto r = e.outcome();
                return r.defined() && r.space == n;
            },
            [](const RunOutcome& r) { return r.space; }};
}

// ---------------------------------------------------------------------------
// Axiom checking
// ---------------------------------------------------------------------------

struct NamedMachine {
    std::string label;
    MachineDescription machine;
};

struct AxiomRow {
    std::string machine;
    std::string input;
    std::string measure;
    MeasureValue value;
    /// "ok", "axiom-i" or "axiom-ii".
    std::string verdict;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomRow> rows;
    std::size_t violations = 0;
};

/// Checks both Blum axioms on every (machine, σ) with |σ| ≤ max_len.
/// Axiom (i): evaluate is defined iff the run yields an output.
/// Axiom (ii): graph_decide(n) iff evaluate = n for n ≤ v + 2, where v is the
/// evaluated value, or the resource the bounded run consumed when undefined.
inline AxiomReport check_blum_axioms(const ResourceMeasure& phi, const std::vector<NamedMachine>& machines,
                                     std::size_t max_len, std::uint64_t fuel)
{
    AxiomReport report;
    for (const auto& [label, m] : machines) {
        for (const auto& sigma : inputs_up_to(m.input_alphabet(), max_len)) {
            const auto r = run(m, sigma, fuel);
            const MeasureValue v = phi.evaluate(m, sigma, fuel);
            AxiomRow row{label, sigma, phi.name, v, "ok", {}};
            if (v.has_value() != r.defined()) {
                row.verdict = "axiom-i";
                row.detail = std::string("evaluate is ") + (v ? "defined" : "undefined") + " but the run is "
                           + describe(r);
            } else {
                const std::uint64_t top = v ? *v : phi.usage(r);
                for (std::uint64_t n = 0; n <= top + 2; ++n) {
                    if (phi.graph_decide(m, sigma, n) != (v && *v == n)) {
                        row.verdict = "axiom-ii";
                        row.detail = "graph decision disagrees at n=" + std::to_string(n);
                        break;
                    }
                }
            }
            if (row.verdict != "ok")
                ++report.violations;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

/// A deliberately invalid measure: reports steps even when the run diverges.
inline ResourceMeasure broken_measure()
{
    return {"BROKEN",
            [](const MachineDescription& m, std::string_view sigma, std::uint64_t fuel) -> MeasureValue {
                return run(m, sigma, fuel).steps;
            },
            [](const MachineDescription& m, std::string_view sigma, std::uint64_t n) {
                return run(m, sigma, n).steps == n;
            },
            [](const RunOutcome& r) { return r.steps; }};
}

// ---------------------------------------------------------------------------
// Bound functions
// ---------------------------------------------------------------------------

/// A total map ℕ → ℕ from a closed grammar: constants, a·n + b, tables with a
/// default, and composition. Arithmetic saturates at 2^64 - 1.
class BoundFunction {
public:
    static BoundFunction constant(std::uint64_t c) { return BoundFunction(Constant{c}); }
    static BoundFunction linear(std::uint64_t a, std::uint64_t b) { return BoundFunction(Linear{a, b}); }
    static BoundFunction table(std::uint64_t fallback, std::map<std::uint64_t, std::uint64_t> entries)
    {
        return BoundFunction(Table{fallback, std::move(entries)});
    }
    /// outer(inner(n)).
    static BoundFunction compose(BoundFunction outer, BoundFunction inner)
    {
        return BoundFunction(Compose{std::make_shared<const BoundFunction>(std::move(outer)),
                                     std::make_shared<const BoundFunction>(std::move(inner))});
    }

    std::uint64_t operator()(std::uint64_t n) const
    {
        return std::visit(
            [n](const auto& f) -> std::uint64_t {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, Constant>) {
                    return f.c;
                } else if constexpr (std::is_same_v<F, Linear>) {
                    const std::uint64_t an = detail::saturating_mul(f.a, n);
                    return an > std::numeric_limits<std::uint64_t>::max() - f.b
                             ? std::numeric_limits<std::uint64_t>::max()
                             : an + f.b;
                } else if constexpr (std::is_same_v<F, Table>) {
                    const auto it = f.entries.find(n);
                    return it == f.entries.end() ? f.fallback : it->second;
                } else {
                    return (*f.outer)((*f.inner)(n));
                }
            },
            node_);
    }

    /// Round-trips through parse().
    std::string to_string() const
    {
        return std::visit(
            [](const auto& f) -> std::string {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, Constant>) {
                    return "const(" + std::to_string(f.c) + ")";
                } else if constexpr (std::is_same_v<F, Linear>) {
                    return "linear(" + std::to_string(f.a) + "," + std::to_string(f.b) + ")";
                } else if constexpr (std::is_same_v<F, Table>) {
                    std::string s = "table(" + std::to_string(f.fallback);
                    for (const auto& [k, v] : f.entries)
                        s += ";" + std::to_string(k) + "=" + std::to_string(v);
                    return s + ")";
                } else {
                    return "compose(" + f.outer->to_string() + "," + f.inner->to_string() + ")";
                }
            },
            node_);
    }

    /// Grammar: const(c) | linear(a,b) | table(default;k=v;...) | compose(f,g)
    static BoundFunction parse(std::string_view text)
    {
        std::size_t pos = 0;
        BoundFunction f = parse_at(text, pos);
        if (pos != text.size())
            throw ParseError(1, pos + 1, "trailing characters in bound function");
        return f;
    }

private:
    struct Constant {
        std::uint64_t c;
    };
    struct Linear {
        std::uint64_t a, b;
    };
    struct Table {
        std::uint64_t fallback;
        std::map<std::uint64_t, std::uint64_t> entries;
    };
    struct Compose {
        std::shared_ptr<const BoundFunction> outer, inner;
    };

    using Node = std::variant<Constant, Linear, Table, Compose>;
    explicit BoundFunction(Node n) : node_(std::move(n)) {}

    static void expect(std::string_view text, std::size_t& pos, char c)
    {
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(1, pos + 1, std::string("expected '") + c + "' in bound function");
        ++pos;
    }

    static std::uint64_t number(std::string_view text, std::size_t& pos)
    {
        const std::size_t begin = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
            ++pos;
        if (pos == begin || pos - begin > 19)
            throw ParseError(1, begin + 1, "expected a number in bound function");
        return std::stoull(std::string(text.substr(begin, pos - begin)));
    }

    static BoundFunction parse_at(std::string_view text, std::size_t& pos)
    {
        const std::size_t begin = pos;
        while (pos < text.size() && text[pos] >= 'a' && text[pos] <= 'z')
            ++pos;
        const std::string_view head = text.substr(begin, pos - begin);
        expect(text, pos, '(');
        if (head == "const") {
            const auto c = number(text, pos);
            expect(text, pos, ')');
            return constant(c);
        }
        if (head == "linear") {
            const auto a = number(text, pos);
            expect(text, pos, ',');
            const auto b = number(text, pos);
            expect(text, pos, ')');
            return linear(a, b);
        }
        if (head == "table") {
            const auto fallback = number(text, pos);
            std::map<std::uint64_t, std::uint64_t> entries;
            while (pos < text.size() && text[pos] == ';') {
                ++pos;
                const auto k = number(text, pos);
                expect(text, pos, '=');
                entries[k] = number(text, pos);
            }
            expect(text, pos, ')');
            return table(fallback, std::move(entries));
        }
        if (head == "compose") {
            auto outer = parse_at(text, pos);
            expect(text, pos, ',');
            auto inner = parse_at(text, pos);
            expect(text, pos, ')');
            return compose(std::move(outer), std::move(inner));
        }
        throw ParseError(1, begin + 1, "unknown bound function '" + std::string(head) + "'");
    }

    Node node_;
};

// ---------------------------------------------------------------------------
// Φ-bounded membership
// ---------------------------------------------------------------------------

struct PhiMembership {
    enum class Kind { InBounds, Violates, Inconclusive };
    Kind kind = Kind::InBounds;
    std::string witness;
    /// Tested inputs on which Φ was defined.
    std::size_t defined_inputs = 0;
};

inline const char* to_string(PhiMembership::Kind k)
{
    switch (k) {
    case PhiMembership::Kind::InBounds: return "InBounds";
    case PhiMembership::Kind::Violates: return "Violates";
    case PhiMembership::Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// Bounded test of m ∈ T_Φ(ξ) over every σ with |σ| ≤ max_len. A halted run
/// with undefined output satisfies the bound vacuously.
inline PhiMembership phi_bounded_membership(const MachineDescription& m, const ResourceMeasure& phi,
                                            const BoundFunction& xi, std::size_t max_len, std::uint64_t fuel)
{
    if (fuel == 0)
        throw DomainError("fuel must be positive");
    PhiMembership out;
    bool exhausted = false;
    for (const auto& sigma : inputs_up_to(m.input_alphabet(), max_len)) {
        const MeasureValue v = phi.evaluate(m, sigma, fuel);
        if (v) {
            ++out.defined_inputs;
            if (*v > xi(sigma.size())) {
                out.kind = PhiMembership::Kind::Violates;
                out.witness = sigma;
                return out;
            }
        } else if (run(m, sigma, fuel).exhausted()) {
            exhausted = true;
        }
    }
    out.kind = exhausted ? PhiMembership::Kind::Inconclusive : PhiMembership::Kind::InBounds;
    return out;
}

// ---------------------------------------------------------------------------
// Discriminating witnesses
// ---------------------------------------------------------------------------

struct DiscriminationEvidence {
    std::string input;
    std::uint64_t base;
    std::uint64_t variant;
};

struct DiscriminatingWitness {
    MachineDescription machine;
    std::size_t delay;
    std::vector<DiscriminationEvidence> evidence;
};

/// Smallest even d ≤ 2·trials with Φ(delay_inject(m, d), σ) > Φ(m, σ) on every
/// tested σ where Φ(m, σ) is defined.
inline DiscriminatingWitness discriminating_witness(const ResourceMeasure& phi, const MachineDescription& m,
                                                    std::size_t trials, std::size_t max_len, std::uint64_t fuel)
{
    std::vector<std::pair<std::string, std::uint64_t>> base;
    for (const auto& sigma : inputs_up_to(m.input_alphabet(), max_len))
        if (const auto v = phi.evaluate(m, sigma, fuel))
            base.emplace_back(sigma, *v);
    if (base.empty())
        throw DomainError("the machine produces no output on any tested input within fuel");

    for (std::size_t t = 1; t <= trials; ++t) {
        const std::size_t d = 2 * t;
        MachineDescription n = delay_inject(m, d);
        std::vector<DiscriminationEvidence> evidence;
        bool ok = true;
        for (const auto& [sigma, v] : base) {
            // The delayed run needs d more steps than the original.
            const auto w = phi.evaluate(n, sigma, fuel + d);
            if (!w || *w <= v) {
                ok = false;
                break;
            }
            evidence.push_back({sigma, v, *w});
        }
        if (ok)
            return {std::move(n), d, std::move(evidence)};
    }
    throw DomainError("no discriminating delay found within " + std::to_string(trials) + " trials");
}

} // namespace traitlab

#endif
