// traitlab: batch driver over the library. Each subcommand wraps one module
// operation; a short summary goes to stdout and, with --out, a report file is
// written (CSV or JSON lines).
//
// Exit status: 0 success, 1 domain/file/parse error, 2 usage error.

#include "traitlab/traitlab.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace traitlab;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t fuel = 100;
    std::size_t maxlen = 2;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush())
        throw Error("cannot write '" + path + "'");
}

MachineDescription load_machine(const std::string& path)
{
    const std::string text = read_file(path);
    try {
        return parse_machine(text);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

ContainmentPolicy load_policy(const std::string& path)
{
    const std::string text = read_file(path);
    try {
        return ContainmentPolicy::from_json(text);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

std::string index_label(const MachineDescription& m)
{
    const auto i = index_of(m);
    return i ? i->str() : "-";
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

Natural parse_natural(const std::string& text, const char* what)
{
    try {
        return Index::parse(text).value();
    } catch (const Error&) {
        throw UsageError(std::string(what) + " must be a natural number, got '" + text + "'");
    }
}

/// Option values in definition order, minus output paths, so identical
/// configurations echo identical headers.
std::vector<std::pair<std::string, std::string>> config_of(const CLI::App& sub)
{
    static const std::set<std::string> skip{"help", "out", "emit"};
    std::vector<std::pair<std::string, std::string>> config;
    for (const CLI::Option* o : sub.get_options()) {
        std::string name = o->get_name();
        while (!name.empty() && name.front() == '-')
            name.erase(name.begin());
        if (skip.count(name))
            continue;
        std::string value;
        if (o->count() > 0) {
            for (const auto& r : o->results())
                value += (value.empty() ? "" : " ") + (r.empty() ? std::string("true") : r);
        } else {
            value = o->get_default_str();
        }
        if (!value.empty())
            config.emplace_back(name, value);
    }
    return config;
}

class Driver {
public:
    explicit Driver(CLI::App& app) : app_(app) {}

    /// Registers a subcommand with the shared flags.
    CLI::App* command(const std::string& name, const std::string& help, std::function<void(Report&)> body)
    {
        CLI::App* sub = app_.add_subcommand(name, help);
        sub->add_option("--fuel", common_.fuel, "step budget per run")->capture_default_str()->check(
            CLI::PositiveNumber);
        sub->add_option("--maxlen", common_.maxlen, "longest input tested")->capture_default_str()->check(
            CLI::PositiveNumber);
        sub->add_option("--seed", common_.seed, "seed for sampled sweeps")->capture_default_str();
        sub->add_option("--out", common_.out, "report file");
        sub->add_option("--format", common_.format, "report format")
            ->capture_default_str()
            ->check(CLI::IsMember({"csv", "jsonl"}));
        bodies_[sub] = std::move(body);
        return sub;
    }

    void execute()
    {
        for (CLI::App* sub : app_.get_subcommands()) {
            Report report;
            report.command = sub->get_name();
            report.config = config_of(*sub);
            bodies_.at(sub)(report);
            if (!common_.out.empty())
                write_report(report, common_.format == "csv" ? ReportFormat::Csv : ReportFormat::Jsonl, common_.out);
        }
    }

    const Common& common() const { return common_; }

private:
    CLI::App& app_;
    Common common_;
    std::map<CLI::App*, std::function<void(Report&)>> bodies_;
};

std::vector<std::string> inputs_for(const MachineDescription& m, const std::vector<std::string>& given,
                                    std::size_t maxlen)
{
    if (!given.empty()) {
        for (const auto& s : given)
            check_input(m, s);
        return given;
    }
    return inputs_up_to(m.input_alphabet(), maxlen);
}

ResourceMeasure measure_named(const std::string& name)
{
    if (name == "time")
        return time_measure();
    if (name == "space")
        return space_measure();
    return broken_measure();
}

// A random canonical machine, built transition by transition.
CanonicalForm random_canonical(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> states(3, 6), sigma(1, 3), extras(0, 2);
    const Shape shape{states(rng), sigma(rng), extras(rng)};
    const std::string gamma = canonical_tape_alphabet(shape);
    MachineBuilder b(shape.states, 0, static_cast<State>(shape.states - 2), static_cast<State>(shape.states - 1),
                     canonical_input_alphabet(shape), gamma);
    std::uniform_int_distribution<std::size_t> next(0, shape.states - 1), sym(0, gamma.size() - 1), dir(0, 1);
    for (State q = 0; q + 2 < shape.states; ++q)
        for (Symbol x : gamma)
            b.set(q, x, {static_cast<State>(next(rng)), gamma[sym(rng)], dir(rng) ? Move::Right : Move::Left});
    return CanonicalForm(b.build());
}

std::vector<std::string> receipt_columns() { return {"kind", "parameter", "input_index", "output_index"}; }

std::vector<std::string> receipt_row(const TransformReceipt& r)
{
    return {to_string(r.kind), r.parameter, r.input_index ? r.input_index->str() : "",
            r.output_index ? r.output_index->str() : ""};
}

void emit_transform(Report& report, const TransformReceipt& receipt, const MachineDescription& out,
                    const std::string& emit)
{
    std::cout << receipt.to_json().dump() << '\n';
    if (!emit.empty())
        write_file(emit, serialize_machine(out));
    report.columns = receipt_columns();
    report.key_columns = 0;
    report.rows.push_back(receipt_row(receipt));
}

std::set<std::uint64_t> to_set(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

int run_cli(int argc, char** argv)
{
    CLI::App app{"Bounded experiments on deterministic Turing machines and their traits", "traitlab"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);
    Driver driver(app);
    const Common& common = driver.common();

    // run ------------------------------------------------------------------
    std::string machine_path, other_path, policy_path, emit_path;
    std::vector<std::string> inputs;
    {
        auto* sub = driver.command("run", "fuel-bounded runs", [&](Report& report) {
            const auto m = load_machine(machine_path);
            report.columns = {"input", "outcome", "output", "steps", "space"};
            report.key_columns = 1;
            for (const auto& sigma : inputs_for(m, inputs, common.maxlen)) {
                const auto r = run(m, sigma, common.fuel);
                std::cout << "input=" << quoted(sigma) << ' ' << describe(r) << " steps=" << r.steps
                          << " space=" << r.space << '\n';
                report.rows.push_back({sigma, describe(r), r.output() ? *r.output() : "", std::to_string(r.steps),
                                       std::to_string(r.space)});
            }
        });
        sub->add_option("--machine", machine_path, "machine file")->required();
        sub->add_option("--input", inputs, "inputs (default: all up to --maxlen)");
    }

    // trace ----------------------------------------------------------------
    std::string trace_input;
    {
        auto* sub = driver.command("trace", "configuration sequence of one run", [&](Report& report) {
            const auto m = load_machine(machine_path);
            report.columns = {"step", "state", "head", "left", "tape"};
            report.key_columns = 1;
            const auto t = trace(m, trace_input, common.fuel);
            for (std::size_t i = 0; i < t.size(); ++i) {
                const auto& c = t[i];
                const std::string left = c.tape.empty() ? "" : std::to_string(c.tape.begin()->first);
                std::cout << i << " state=" << c.state << " head=" << c.head << " tape=" << quoted(c.render())
                          << '\n';
                report.rows.push_back(
                    {std::to_string(i), std::to_string(c.state), std::to_string(c.head), left, c.render()});
            }
        });
        sub->add_option("--machine", machine_path, "machine file")->required();
        sub->add_option("--input", trace_input, "input string")->capture_default_str();
    }

    // equiv ----------------------------------------------------------------
    {
        auto* sub = driver.command("equiv", "bounded equivalence of two machines", [&](Report& report) {
            const auto e = equiv_bounded(load_machine(machine_path), load_machine(other_path), common.maxlen,
                                         common.fuel);
            std::cout << to_string(e.kind);
            if (e.kind != Equivalence::Kind::Agree)
                std::cout << ' ' << quoted(e.witness);
            std::cout << '\n';
            report.columns = {"verdict", "witness"};
            report.key_columns = 0;
            report.rows.push_back({to_string(e.kind), e.witness});
        });
        sub->add_option("--machine", machine_path, "first machine")->required();
        sub->add_option("--other", other_path, "second machine")->required();
    }

    // enumerate ------------------------------------------------------------
    std::uint64_t max_count = 0, sample = 0;
    bool validate = false;
    std::string decode_text, encode_path, index_set_path, max_index_text = "100", unpair_text;
    std::vector<std::string> pair_args;
    {
        auto* sub = driver.command("enumerate", "the machine indexing", [&](Report& report) {
            int modes = 0;
            for (bool b : {max_count > 0, sample > 0, !decode_text.empty(), !encode_path.empty(),
                           !index_set_path.empty(), !pair_args.empty(), !unpair_text.empty()})
                modes += b;
            if (modes != 1)
                throw UsageError(
                    "choose exactly one of --max, --sample, --decode, --encode, --index-set, --pair, --unpair");

            if (max_count > 0) {
                report.columns = {"index", "states", "input_alphabet", "tape_alphabet", "valid"};
                report.key_columns = 1;
                std::uint64_t invalid = 0;
                for (std::uint64_t n = 0; n < max_count; ++n) {
                    bool ok = true;
                    std::vector<std::string> row{std::to_string(n), "", "", "", ""};
                    try {
                        const CanonicalForm c = decode(n);
                        // Rebuilding through the checked constructor re-validates every invariant.
                        const auto& m = c.machine();
                        const MachineDescription again(m.state_count(), m.start(), m.accept(), m.reject(),
                                                       m.input_alphabet(), m.tape_alphabet(), m.table());
                        ok = encode(CanonicalForm(again)) == Index(n);
                        row[1] = std::to_string(m.state_count());
                        row[2] = m.input_alphabet();
                        row[3] = m.tape_alphabet();
                    } catch (const Error&) {
                        ok = false;
                    }
                    invalid += !ok;
                    row[4] = ok ? "true" : "false";
                    report.rows.push_back(std::move(row));
                }
                if (invalid)
                    throw DomainError(std::to_string(invalid) + " of " + std::to_string(max_count)
                                      + " machines failed validation");
                std::cout << max_count << " machines valid\n";
                return;
            }
            if (sample > 0) {
                report.columns = {"sample", "index", "states", "valid"};
                report.key_columns = 1;
                std::mt19937_64 rng(common.seed);
                std::uint64_t invalid = 0;
                for (std::uint64_t i = 0; i < sample; ++i) {
                    const CanonicalForm c = random_canonical(rng);
                    const Index n = encode(c);
                    const bool ok = decode(n).machine() == c.machine();
                    invalid += !ok;
                    report.rows.push_back(
                        {std::to_string(i), n.str(), std::to_string(c.machine().state_count()), ok ? "true" : "false"});
                }
                if (invalid)
                    throw DomainError(std::to_string(invalid) + " sampled machines failed the round trip");
                std::cout << sample << " samples valid\n";
                return;
            }
            if (!decode_text.empty()) {
                const CanonicalForm c = decode(Index(parse_natural(decode_text, "--decode")));
                const std::string text = serialize_machine(c.machine());
                std::cout << text;
                if (!emit_path.empty())
                    write_file(emit_path, text);
                report.columns = {"index", "states", "input_alphabet", "tape_alphabet"};
                report.key_columns = 1;
                report.rows.push_back({encode(c).str(), std::to_string(c.machine().state_count()),
                                       c.machine().input_alphabet(), c.machine().tape_alphabet()});
                return;
            }
            if (!encode_path.empty()) {
                const auto m = load_machine(encode_path);
                const CanonicalForm c = canonicalize(m);
                const auto receipt = make_receipt(TransformKind::Canonicalize, "", m, c.machine());
                std::cout << "index " << encode(c).str() << '\n';
                if (!emit_path.empty())
                    write_file(emit_path, serialize_machine(c.machine()));
                report.columns = receipt_columns();
                report.key_columns = 0;
                report.rows.push_back(receipt_row(receipt));
                return;
            }
            if (!index_set_path.empty()) {
                const auto reference = load_machine(index_set_path);
                const IndexSetQuery q{reference, parse_natural(max_index_text, "--max-index"), common.maxlen,
                                      common.fuel};
                const auto result = index_set_bounded(q);
                report.columns = {"index", "verdict", "witness"};
                report.key_columns = 1;
                for (const auto& row : result.rows)
                    report.rows.push_back({row.index.str(), to_string(row.verdict.kind), row.verdict.witness});
                std::cout << "agree=" << result.agree.size() << " inconclusive=" << result.inconclusive.size()
                          << " differ=" << result.differ << '\n';
                return;
            }
            if (!pair_args.empty()) {
                const Natural z = pair(parse_natural(pair_args[0], "--pair"), parse_natural(pair_args[1], "--pair"));
                std::cout << z.str() << '\n';
                report.columns = {"a", "b", "pair"};
                report.key_columns = 0;
                report.rows.push_back({pair_args[0], pair_args[1], z.str()});
                return;
            }
            const auto [a, b] = unpair(parse_natural(unpair_text, "--unpair"));
            std::cout << a.str() << ' ' << b.str() << '\n';
            report.columns = {"pair", "a", "b"};
            report.key_columns = 0;
            report.rows.push_back({unpair_text, a.str(), b.str()});
        });
        sub->add_option("--max", max_count, "decode indices 0..N-1");
        sub->add_flag("--validate", validate, "re-check invariants and the round trip of every decoded machine");
        sub->add_option("--sample", sample, "round-trip N random canonical machines (uses --seed)");
        sub->add_option("--decode", decode_text, "print the machine with this index");
        sub->add_option("--encode", encode_path, "canonicalize a machine file and print its index");
        sub->add_option("--index-set", index_set_path, "bounded index set of a reference machine");
        sub->add_option("--max-index", max_index_text, "largest index swept by --index-set")->capture_default_str();
        sub->add_option("--pair", pair_args, "Cantor pair of two naturals")->expected(2);
        sub->add_option("--unpair", unpair_text, "inverse Cantor pair");
        sub->add_option("--emit", emit_path, "write the decoded or canonical machine here");
    }

    // pad / delay / leak ---------------------------------------------------
    std::size_t pad_k = 1, delay_d = 0, cells = 0;
    std::string chi;
    {
        auto* sub = driver.command("pad", "add unreachable states", [&](Report& report) {
            const auto m = load_machine(machine_path);
            const auto out = pad(m, pad_k);
            emit_transform(report, make_receipt(TransformKind::Pad, std::to_string(pad_k), m, out), out, emit_path);
        });
        sub->add_option("--machine", machine_path, "machine file")->required();
        sub->add_option("--k", pad_k, "states to add")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--emit", emit_path, "write the padded machine here");
    }
    {
        auto* sub = driver.command("delay", "prefix a step-wasting excursion", [&](Report& report) {
            if ((delay_d > 0) == (cells > 0))
                throw UsageError("choose exactly one of --d and --cells");
            const auto m = load_machine(machine_path);
            if (cells > 0) {
                const auto out = space_inject(m, cells);
                emit_transform(report, make_receipt(TransformKind::Space, std::to_string(cells), m, out), out,
                               emit_path);
            } else {
                const auto out = delay_inject(m, delay_d);
                emit_transform(report, make_receipt(TransformKind::Delay, std::to_string(delay_d), m, out), out,
                               emit_path);
            }
        });
        sub->add_option("--machine", machine_path, "machine file")->required();
        sub->add_option("--d", delay_d, "extra steps (even, >= 2)");
        sub->add_option("--cells", cells, "extra cells scanned left of the start cell");
        sub->add_option("--emit", emit_path, "write the delayed machine here");
    }
    {
        auto* sub = driver.command("leak", "wrap a machine so it writes and erases a string", [&](Report& report) {
            const auto m = load_machine(machine_path);
            const auto out = leaky_wrap(m, chi);
            emit_transform(report, make_receipt(TransformKind::Leak, chi, m, out), out, emit_path);
        });
        sub->add_option("--machine", machine_path, "machine file")->required();
        sub->add_option("--chi", chi, "string written and erased")->required();
        sub->add_option("--emit", emit_path, "write the wrapped machine here");
    }

    // measure --------------------------------------------------------------
    std::string measure_name = "time", bound_text;
    bool discriminate = false;
    std::size_t trials = 5;
    {
        auto* sub = driver.command("measure", "TIME / SPACE values, bounds and discriminating delays",
                                   [&](Report& report) {
            const auto m = load_machine(machine_path);
            const auto phi = measure_named(measure_name);
            const std::string label = index_label(m);
            report.columns = {"machine_index", "input", "measure", "value", "verdict"};
            report.key_columns = 2;
            if (discriminate && !bound_text.empty())
                throw UsageError("--bound and --discriminate are exclusive");
            if (discriminate) {
                const auto w = discriminating_witness(phi, m, trials, common.maxlen, common.fuel);
                const std::string variant = index_label(w.machine);
                std::cout << "delay=" << w.delay << '\n';
                for (const auto& e : w.evidence) {
                    std::cout << "input=" << quoted(e.input) << ' ' << e.base << " -> " << e.variant << '\n';
                    report.rows.push_back({label, e.input, phi.name, std::to_string(e.base), "base"});
                    report.rows.push_back({variant, e.input, phi.name, std::to_string(e.variant),
                                           "delay=" + std::to_string(w.delay)});
                }
                return;
            }
            std::optional<BoundFunction> xi;
            if (!bound_text.empty())
                xi = BoundFunction::parse(bound_text);
            for (const auto& sigma : inputs_up_to(m.input_alphabet(), common.maxlen)) {
                const auto v = phi.evaluate(m, sigma, common.fuel);
                std::string verdict = v ? "defined" : run(m, sigma, common.fuel).exhausted() ? "exhausted" : "undefined";
                if (xi && v)
                    verdict = *v <= (*xi)(sigma.size()) ? "within" : "exceeds";
                if (!xi)
                    std::cout << "input=" << quoted(sigma) << ' ' << (v ? std::to_string(*v) : verdict) << '\n';
                report.rows.push_back({label, sigma, phi.name, v ? std::to_string(*v) : "", verdict});
            }
            if (xi) {
                const auto r = phi_bounded_membership(m, phi, *xi, common.maxlen, common.fuel);
                std::cout << to_string(r.kind);
                if (r.kind == PhiMembership::Kind::Violates)
                    std::cout << ' ' << quoted(r.witness);
                std::cout << '\n';
            }
        });
        sub->add_option("--machine", machine_path, "machine file")->required();
        sub->add_option("--measure", measure_name, "time or space")
            ->capture_default_str()
            ->check(CLI::IsMember({"time", "space"}));
        sub->add_option("--bound", bound_text, "bound function, e.g. linear(1,5)");
        sub->add_flag("--discriminate", discriminate, "search for a costlier equivalent machine");
        sub->add_option("--trials", trials, "delays tried by --discriminate")->capture_default_str();
    }

    // blum-check -----------------------------------------------------------
    std::vector<std::string> machine_paths;
    std::string sweep_max;
    {
        auto* sub = driver.command("blum-check", "check both Blum axioms", [&](Report& report) {
            if (!machine_paths.empty() && !sweep_max.empty())
                throw UsageError("--machine and --max-index are exclusive");
            std::vector<NamedMachine> machines;
            if (!sweep_max.empty()) {
                const Natural top = parse_natural(sweep_max, "--max-index");
                for (Natural n = 0; n <= top; ++n)
                    machines.push_back({n.str(), decode(Index(n)).machine()});
            } else if (!machine_paths.empty()) {
                for (const auto& p : machine_paths) {
                    auto m = load_machine(p);
                    machines.push_back({index_label(m), std::move(m)});
                }
            } else {
                for (auto& [name, m] : fixtures::all())
                    machines.push_back({index_label(m), std::move(m)});
            }
            const auto r = check_blum_axioms(measure_named(measure_name), machines, common.maxlen, common.fuel);
            report.columns = {"machine_index", "input", "measure", "value", "verdict"};
            report.key_columns = 2;
            for (const auto& row : r.rows)
                report.rows.push_back(
                    {row.machine, row.input, row.measure, row.value ? std::to_string(*row.value) : "", row.verdict});
            std::cout << "violations=" << r.violations << " checked=" << r.rows.size() << '\n';
        });
        sub->add_option("--measure", measure_name, "time, space or broken")
            ->capture_default_str()
            ->check(CLI::IsMember({"time", "space", "broken"}));
        sub->add_option("--machine", machine_paths, "machine files (default: the fixtures)");
        sub->add_option("--max-index", sweep_max, "sweep decoded indices 0..N instead");
    }

    // trait ----------------------------------------------------------------
    std::string trait_text;
    std::size_t probes = 0;
    std::vector<std::string> leaks;
    auto probe_options = [&] {
        ProbeOptions o;
        o.leak_strings = leaks;
        return o;
    };
    auto parse_expr = [&] {
        std::optional<ContainmentPolicy> policy;
        if (!policy_path.empty())
            policy = load_policy(policy_path);
        return parse_trait_expr(trait_text, policy);
    };
    {
        auto* sub = driver.command("trait", "evaluate a trait expression on a machine", [&](Report& report) {
            const auto m = load_machine(machine_path);
            const TraitExpr t = parse_expr();
            const Bounds bounds{common.maxlen, common.fuel};
            const Verdict v = eval_trait(t, m, bounds);
            std::cout << to_string(v) << '\n';
            report.columns = {"machine_index", "trait", "verdict", "witness_kind", "witness_parameter"};
            report.key_columns = 0;
            std::vector<std::string> row{index_label(m), t.to_string(), to_string(v), "", ""};
            if (probes > 0) {
                const auto p = probe_semanticity(t, m, probes, bounds, probe_options());
                if (p.witness) {
                    std::cout << "SyntacticWitness " << to_string(p.witness->kind) << ' ' << p.witness->parameter
                              << '\n';
                    row[3] = to_string(p.witness->kind);
                    row[4] = p.witness->parameter;
                } else {
                    std::cout << "NoWitness after " << p.probes_tried << " probes\n";
                }
            }
            report.rows.push_back(std::move(row));
        });
        sub->add_option("--name", trait_text, "trait expression, e.g. \"states:3 & total\"")->required();
        sub->add_option("--machine", machine_path, "machine file")->required();
        sub->add_option("--policy", policy_path, "containment policy (JSON), for 'contained'");
        sub->add_option("--probe", probes, "look for a syntacticity witness among N variants");
        sub->add_option("--leak", leaks, "strings for leak probes");
    }

    // partition --------------------------------------------------------------
    std::string first_text = "0", last_text;
    std::size_t partition_probes = 3;
    {
        auto* sub = driver.command("partition", "sem/syn partition of a trait over an index range",
                                   [&](Report& report) {
            const TraitExpr t = parse_expr();
            const auto p = sem_syn_partition(t, parse_natural(first_text, "--first"),
                                             parse_natural(last_text, "--last"), partition_probes,
                                             {common.maxlen, common.fuel}, probe_options());
            report.columns = {"index", "verdict", "part", "witness_kind"};
            report.key_columns = 1;
            for (const auto& row : p.rows)
                report.rows.push_back({row.index.str(), to_string(row.verdict), row.part ? to_string(*row.part) : "",
                                       row.witness_kind ? to_string(*row.witness_kind) : ""});
            std::cout << "in=" << p.sem_part.size() + p.syn_part.size() + p.unknown_part.size()
                      << " sem=" << p.sem_part.size() << " syn=" << p.syn_part.size()
                      << " unknown=" << p.unknown_part.size() << '\n';
        });
        sub->add_option("--name", trait_text, "trait expression")->required();
        sub->add_option("--first", first_text, "first index")->capture_default_str();
        sub->add_option("--last", last_text, "last index")->required();
        sub->add_option("--probes", partition_probes, "variants probed per member")->capture_default_str();
        sub->add_option("--policy", policy_path, "containment policy (JSON), for 'contained'");
        sub->add_option("--leak", leaks, "strings for leak probes");
    }

    // patch-decider ----------------------------------------------------------
    std::vector<std::uint64_t> l2, overlap, union_set;
    std::uint64_t query = 0, instances = 0, universe = 50;
    {
        auto* sub = driver.command("patch-decider", "decide L1 from a decider for L1 ∪ L2 and finite patches",
                                   [&](Report& report) {
            report.columns = {"instance", "universe", "mismatches"};
            report.key_columns = 1;
            if (instances == 0) {
                const auto u = to_set(union_set);
                const auto d = finite_patch_decider<std::uint64_t>([u](const std::uint64_t& x) { return u.count(x) > 0; },
                                                                   to_set(l2), to_set(overlap));
                const bool answer = d(query);
                std::cout << (answer ? "true" : "false") << '\n';
                report.columns = {"query", "member"};
                report.rows.push_back({std::to_string(query), answer ? "true" : "false"});
                return;
            }
            if (universe == 0)
                throw UsageError("--universe must be positive");
            std::mt19937_64 rng(common.seed);
            std::uint64_t total = 0;
            for (std::uint64_t i = 0; i < instances; ++i) {
                std::uniform_int_distribution<std::uint64_t> size(1, universe);
                const std::uint64_t n = size(rng);
                std::bernoulli_distribution coin(0.5), sparse(0.2);
                std::set<std::uint64_t> l1, finite, meet;
                for (std::uint64_t x = 0; x < n; ++x) {
                    if (coin(rng))
                        l1.insert(x);
                    if (sparse(rng))
                        finite.insert(x);
                }
                for (auto x : finite)
                    if (l1.count(x))
                        meet.insert(x);
                const auto d = finite_patch_decider<std::uint64_t>(
                    [&](const std::uint64_t& x) { return l1.count(x) > 0 || finite.count(x) > 0; }, finite, meet);
                std::uint64_t mismatches = 0;
                for (std::uint64_t x = 0; x < n; ++x)
                    mismatches += d(x) != (l1.count(x) > 0);
                total += mismatches;
                report.rows.push_back({std::to_string(i), std::to_string(n), std::to_string(mismatches)});
            }
            std::cout << "instances=" << instances << " mismatches=" << total << '\n';
        });
        sub->add_option("--union", union_set, "explicit L1 ∪ L2 members")->delimiter(',');
        sub->add_option("--l2", l2, "the finite language L2")->delimiter(',');
        sub->add_option("--overlap", overlap, "L1 ∩ L2")->delimiter(',');
        sub->add_option("--query", query, "element to decide")->capture_default_str();
        sub->add_option("--instances", instances, "random instances (uses --seed)");
        sub->add_option("--universe", universe, "largest random universe")->capture_default_str();
    }

    // prop3 ------------------------------------------------------------------
    std::string prop3_max = "99", oracle_name = "table";
    {
        auto* sub = driver.command("prop3", "halting decider wired from a state-count oracle", [&](Report& report) {
            const Natural top = parse_natural(prop3_max, "--max-index");
            if (top > Natural(std::numeric_limits<std::uint32_t>::max()))
                throw UsageError("--max-index is too large for a table sweep");
            const auto count = static_cast<std::uint64_t>(top) + 1;
            auto table = std::make_shared<const HaltingTable>(HaltingTable::build(count, common.maxlen, common.fuel));
            const HaltingOracle h = oracle_name == "zero" ? HaltingOracle([](const Index&, std::string_view, std::size_t) { return 0; })
                                                          : table_oracle(table);
            const HaltingDecider n = prop3_wiring(h);
            report.columns = {"index", "input", "status", "decision"};
            report.key_columns = 2;
            std::uint64_t certified = 0, agree = 0;
            for (const auto& [index, sigma] : table->entries()) {
                const auto status = table->status(index, sigma);
                const int decision = n(index, sigma);
                if (status != HaltingStatus::Unknown) {
                    ++certified;
                    agree += decision == (status == HaltingStatus::Defined ? 1 : 0);
                }
                const char* s = status == HaltingStatus::Defined ? "defined"
                              : status == HaltingStatus::Undefined ? "undefined" : "unknown";
                report.rows.push_back({index.str(), sigma, s, std::to_string(decision)});
            }
            std::cout << "entries=" << table->entries().size() << " certified=" << certified << " agree=" << agree
                      << '\n';
        });
        sub->add_option("--max-index", prop3_max, "largest index in the table")->capture_default_str();
        sub->add_option("--oracle", oracle_name, "table or zero")
            ->capture_default_str()
            ->check(CLI::IsMember({"table", "zero"}));
    }

    // contain ----------------------------------------------------------------
    {
        auto* sub = driver.command("contain", "trace-level containment check", [&](Report& report) {
            const auto m = load_machine(machine_path);
            const auto p = load_policy(policy_path);
            const auto r = containment_check(m, p, inputs_for(m, inputs, common.maxlen), common.fuel);
            report.columns = {"input", "condition", "step", "evidence"};
            report.key_columns = 2;
            for (const auto& v : r.condition1)
                report.rows.push_back({v.input, "1", std::to_string(v.step), v.evidence});
            for (const auto& v : r.condition2)
                report.rows.push_back({v.input, "2", std::to_string(v.step), v.evidence});
            for (const auto& s : r.exhausted)
                report.rows.push_back({s, "fuel", std::to_string(common.fuel), ""});
            std::cout << to_string(r.verdict) << " condition1=" << r.condition1.size()
                      << " condition2=" << r.condition2.size() << " exhausted=" << r.exhausted.size() << '\n';
        });
        sub->add_option("--machine", machine_path, "machine file")->required();
        sub->add_option("--policy", policy_path, "policy (JSON)")->required();
        sub->add_option("--input", inputs, "inputs (default: all up to --maxlen)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        driver.execute();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
