// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "cli_support.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace traitlab;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome enumeration_bijection()
{
    std::size_t failures = 0;
    for (std::uint64_t n = 0; n < 100000; ++n) {
        const CanonicalForm c = decode(n);
        const MachineDescription& m = c.machine();
        // Re-validate through the text format and the canonical check.
        if (encode(c) != Index(n) || !is_canonical(m) || parse_machine(serialize_machine(m)) != m)
            ++failures;
    }
    std::mt19937_64 rng(20260101);
    for (int i = 0; i < 1000; ++i) {
        const CanonicalForm c = support::random_canonical(rng);
        if (decode(encode(c)) != c)
            ++failures;
    }
    return {failures == 0, "failures=" + std::to_string(failures) + " over 100000 decodes, 1000 random encodes"};
}

Outcome padding_witness()
{
    std::size_t differ = 0, collisions = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const MachineDescription m = decode(i * 997 + 13).machine();
        std::set<Index> indices;
        for (std::size_t k = 1; k <= 10; ++k) {
            const MachineDescription p = pad(m, k);
            indices.insert(encode(canonicalize(p)));
            if (equiv_bounded(p, m, 3, 300).kind == Equivalence::Kind::Differ)
                ++differ;
        }
        collisions += 10 - indices.size();
    }
    return {differ == 0 && collisions == 0,
            "differ=" + std::to_string(differ) + " duplicate_indices=" + std::to_string(collisions)};
}

Outcome delay_arithmetic()
{
    std::size_t deviations = 0, checked = 0;
    for (const auto& [name, m] : fixtures::all()) {
        for (const auto& sigma : inputs_up_to(m.input_alphabet(), 4)) {
            const auto base = run(m, sigma, 2000);
            if (!base.halted())
                continue;
            for (std::size_t d : {2, 4, 8}) {
                ++checked;
                const auto r = run(delay_inject(m, d), sigma, 2000);
                if (!r.halted() || r.steps != base.steps + d)
                    ++deviations;
            }
        }
    }
    return {deviations == 0 && checked > 0,
            "deviations=" + std::to_string(deviations) + " checked=" + std::to_string(checked)};
}

Outcome blum_axioms()
{
    std::vector<NamedMachine> machines;
    for (std::uint64_t n = 0; n < 2000; ++n)
        machines.push_back({std::to_string(n), decode(n).machine()});
    const auto time = check_blum_axioms(time_measure(), machines, 2, 500);
    const auto space = check_blum_axioms(space_measure(), machines, 2, 500);
    const auto broken = check_blum_axioms(broken_measure(), machines, 2, 500);
    return {time.violations == 0 && space.violations == 0 && broken.violations >= 1,
            "TIME=" + std::to_string(time.violations) + " SPACE=" + std::to_string(space.violations)
                + " broken=" + std::to_string(broken.violations) + " rows=" + std::to_string(time.rows.size())};
}

Outcome patch_decider()
{
    std::mt19937_64 rng(5);
    std::size_t mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const int universe = std::uniform_int_distribution<int>(1, 50)(rng);
        std::bernoulli_distribution coin(0.4);
        std::set<int> l1, l2;
        for (int x = 0; x < universe; ++x) {
            if (coin(rng))
                l1.insert(x);
            if (coin(rng))
                l2.insert(x);
        }
        std::set<int> overlap;
        for (int x : l1)
            if (l2.count(x))
                overlap.insert(x);
        const auto decide = finite_patch_decider<int>(
            [&](const int& x) { return l1.count(x) > 0 || l2.count(x) > 0; }, l2, overlap);
        for (int x = 0; x < universe; ++x)
            mismatches += decide(x) != (l1.count(x) > 0);
    }
    return {mismatches == 0, "mismatches=" + std::to_string(mismatches) + " instances=1000"};
}

Outcome prop3()
{
    auto table = std::make_shared<const HaltingTable>(HaltingTable::build(2000, 2, 500));
    const auto decide = prop3_wiring(table_oracle(table));
    std::size_t certified = 0, mismatches = 0;
    for (const auto& [index, sigma] : table->entries()) {
        const auto status = table->status(index, sigma);
        if (status == HaltingStatus::Unknown)
            continue;
        ++certified;
        if (decide(index, sigma) != (status == HaltingStatus::Defined ? 1 : 0))
            ++mismatches;
    }
    return {mismatches == 0 && certified > 0,
            "mismatches=" + std::to_string(mismatches) + " certified=" + std::to_string(certified)
                + " entries=" + std::to_string(table->entries().size())};
}

Outcome time_trait_realization()
{
    const TraitExpr t = trait_phi_bounded(time_measure(), BoundFunction::linear(1, 5));
    const Bounds bounds{2, 300};
    ProbeOptions delays_only;
    delays_only.pad = false;
    std::size_t members = 0, witnessed = 0;
    for (const auto& [name, m] : fixtures::all()) {
        if (eval_trait(t, m, bounds) != Verdict::In)
            continue;
        ++members;
        const auto p = probe_semanticity(t, m, 6, bounds, delays_only);
        if (p.witness && p.witness->kind == TransformKind::Delay
            && equiv_bounded(p.witness->machine, m, bounds.max_len, bounds.fuel).kind == Equivalence::Kind::Agree
            && eval_trait(t, p.witness->machine, bounds) == Verdict::Out)
            ++witnessed;
    }
    return {members > 0 && witnessed == members,
            "members=" + std::to_string(members) + " witnessed=" + std::to_string(witnessed)};
}

Outcome containment_gap()
{
    const ContainmentPolicy policy({"bb"});
    const std::vector<std::string> inputs{"a", "ab", "ba"};
    const auto echo = containment_check(fixtures::echo(), policy, inputs, 500);
    const auto leaky = containment_check(leaky_wrap(fixtures::echo(), "bb"), policy, inputs, 500);
    const bool pass = echo.verdict == ContainmentReport::Verdict::Contained && leaky.condition1.size() >= 1
                   && leaky.condition2.empty() && leaky.exhausted.empty();
    return {pass, std::string("echo=") + to_string(echo.verdict) + " leaky condition1="
                      + std::to_string(leaky.condition1.size()) + " condition2=" + std::to_string(leaky.condition2.size())};
}

// Random expression paired with its evaluation over explicit In-sets.
struct RandomExpr {
    TraitExpr expr;
    std::vector<bool> members;
};

Outcome trait_algebra()
{
    const Bounds bounds{2, 60};
    const std::vector<TraitDef> leaves{trait_states(3),       trait_states(4),      trait_targets_reject(),
                                       trait_writes_blank(),  trait_total(),        trait_echoes_input()};
    std::vector<MachineDescription> universe;
    std::vector<std::vector<bool>> in_sets(leaves.size());
    for (std::uint64_t n = 0; n < 2000; ++n) {
        const MachineDescription m = decode(n).machine();
        std::vector<Verdict> v;
        for (const auto& leaf : leaves)
            v.push_back(leaf.evaluator(m, bounds));
        if (std::find(v.begin(), v.end(), Verdict::Unknown) != v.end())
            continue;
        universe.push_back(m);
        for (std::size_t l = 0; l < leaves.size(); ++l)
            in_sets[l].push_back(v[l] == Verdict::In);
    }

    std::mt19937_64 rng(9);
    std::function<RandomExpr(int)> gen = [&](int depth) -> RandomExpr {
        const int op = depth == 0 ? 0 : std::uniform_int_distribution<int>(0, 3)(rng);
        if (op == 0) {
            const std::size_t l = std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng);
            return {TraitExpr(leaves[l]), in_sets[l]};
        }
        RandomExpr a = gen(depth - 1);
        if (op == 1) {
            for (std::size_t i = 0; i < a.members.size(); ++i)
                a.members[i] = !a.members[i];
            return {!a.expr, a.members};
        }
        RandomExpr b = gen(depth - 1);
        std::vector<bool> s(a.members.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = op == 2 ? (a.members[i] || b.members[i]) : (a.members[i] && b.members[i]);
        return {op == 2 ? (a.expr | b.expr) : (a.expr & b.expr), s};
    };

    std::size_t mismatches = 0;
    for (int e = 0; e < 200; ++e) {
        const RandomExpr r = gen(std::uniform_int_distribution<int>(1, 4)(rng));
        for (std::size_t i = 0; i < universe.size(); ++i)
            mismatches += eval_trait(r.expr, universe[i], bounds) != (r.members[i] ? Verdict::In : Verdict::Out);
    }
    return {mismatches == 0 && !universe.empty(),
            "mismatches=" + std::to_string(mismatches) + " universe=" + std::to_string(universe.size())
                + " expressions=200"};
}

Outcome cli_determinism()
{
    const std::string echo = support::fixture("echo.tm");
    const std::string leaky = support::fixture("leaky.tm");
    const std::string policy = support::fixture("bb_policy.json");
    const std::vector<std::pair<std::string, std::string>> commands{
        {"run", "run --machine " + echo + " --input ab --input b"},
        {"trace", "trace --machine " + leaky + " --input a"},
        {"equiv", "equiv --machine " + echo + " --other " + leaky + " --maxlen 2"},
        {"enumerate", "enumerate --max 200 --validate"},
        {"enumerate-sample", "enumerate --sample 100"},
        {"pad", "pad --machine " + echo + " --k 3"},
        {"delay", "delay --machine " + echo + " --d 4"},
        {"leak", "leak --machine " + echo + " --chi bb"},
        {"measure", "measure --machine " + leaky + " --measure space --bound 'linear(1,5)'"},
        {"blum-check", "blum-check --measure time --max-index 50"},
        {"trait", "trait --name 'states:3 | echo' --machine " + echo + " --probe 4"},
        {"partition", "partition --name 'total' --last 60 --probes 2"},
        {"patch-decider", "patch-decider --instances 50"},
        {"prop3", "prop3 --max-index 60"},
        {"contain", "contain --machine " + leaky + " --policy " + policy},
    };
    std::vector<std::string> failed;
    for (const auto& [label, args] : commands) {
        for (const char* format : {"csv", "jsonl"}) {
            const std::string a = support::scratch("det_" + label + "_a." + format);
            const std::string b = support::scratch("det_" + label + "_b." + format);
            std::remove(a.c_str());
            std::remove(b.c_str());
            const std::string tail = std::string(" --seed 7 --format ") + format + " --out ";
            const auto ra = support::cli(args + tail + a);
            const auto rb = support::cli(args + tail + b);
            const std::string ta = support::slurp(a);
            if (ra.status != 0 || rb.status != 0 || ta.empty() || ta != support::slurp(b))
                failed.push_back(label + "/" + format);
        }
    }
    std::string detail = "commands=" + std::to_string(commands.size()) + " failed=" + std::to_string(failed.size());
    for (const auto& f : failed)
        detail += " " + f;
    return {failed.empty(), detail};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"enumeration bijection", enumeration_bijection},
        {"padding witness", padding_witness},
        {"delay arithmetic", delay_arithmetic},
        {"blum axioms", blum_axioms},
        {"finite patch decider", patch_decider},
        {"state-count halting wiring", prop3},
        {"time-bounded trait witnesses", time_trait_realization},
        {"containment gap", containment_gap},
        {"trait algebra", trait_algebra},
        {"cli determinism", cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.precision(2);
        line << std::fixed << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
             << o.detail << " (" << secs << "s)";
        std::cout << line.str() << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
