// SPDX-License-Identifier: Apache-2.0
#include "idka/cli.hpp"

#include "idka/analysis/harness.hpp"
#include "idka/errors.hpp"
#include "idka/formula/equivalence.hpp"
#include "idka/formula/normalize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace idka::cli
{
namespace
{
namespace fs = std::filesystem;
using nlohmann::json;

struct IoError : Error
{
    using Error::Error;
};

struct UsageError : Error
{
    using Error::Error;
};

struct InvariantError : Error
{
    using Error::Error;
};

struct Config
{
    std::string params_path;
    std::string keys_dir;
    bool keys_given = false;
    std::string format = "text";
    std::string seed;

    [[nodiscard]] bool as_json() const { return format == "json"; }
};

std::string env_or(const char* name, std::string fallback)
{
    if (const char* v = std::getenv(name); v && *v)
        return v;
    return fallback;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text))
        throw IoError("cannot write " + path);
}

json read_json(const std::string& path)
{
    const auto text = read_file(path);
    try
    {
        return json::parse(text);
    }
    catch (const json::exception& e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

PairingParams load(const Config& cfg)
{
    if (cfg.params_path.empty())
        throw ConfigError(std::string("no parameter file: pass --params or set ") + params_env);
    if (!fs::exists(cfg.params_path))
        throw IoError("parameter file not found: " + cfg.params_path);
    return load_params(cfg.params_path);
}

Bytes seed_bytes(const std::string& hex)
{
    try
    {
        return from_hex(hex);
    }
    catch (const std::invalid_argument&)
    {
        throw UsageError("--seed must be hex: " + hex);
    }
}

std::unique_ptr<Rng> make_rng(const std::string& seed)
{
    if (seed.empty())
        return std::make_unique<Rng>();
    return std::make_unique<Rng>(seed_bytes(seed));
}

const protocol::CatalogEntry& entry_or_usage(const std::string& name)
{
    if (const auto* e = protocol::find(name))
        return *e;
    throw UsageError("unknown protocol: " + name + " (see `catalog list`)");
}

std::string key_path(const Config& cfg, const std::string& id)
{
    if (id.empty() || id.find('/') != std::string::npos || id.find('\\') != std::string::npos || id.front() == '.')
        throw ConfigError("identity cannot be used as a file name: " + id);
    return (fs::path(cfg.keys_dir) / (id + ".json")).string();
}

std::string master_path(const Config& cfg)
{
    return (fs::path(cfg.keys_dir) / "master.json").string();
}

json value_list(const PairingParams& pp, const std::vector<Value>& values)
{
    json out = json::array();
    for (const auto& v : values)
        out.push_back(to_hex(encode(pp, v)));
    return out;
}

json transcript_json(const protocol::Transcript& t)
{
    json out = json::array();
    std::istringstream lines(t.to_jsonl());
    std::string line;
    while (std::getline(lines, line))
        out.push_back(json::parse(line));
    return out;
}

std::string yes_no(const json& v)
{
    if (v.is_null())
        return "n/a";
    return v.get<bool>() ? "yes" : "no";
}

// params gen

int params_gen(const Config& cfg, const std::string& tier, std::string seed, const std::string& out_path,
               std::ostream& out)
{
    if (seed.empty())
        seed = cfg.seed;
    const Bytes s = seed.empty() ? Rng().bytes(16) : seed_bytes(seed);
    const auto pp = param_gen(tier_from_string(tier), s);
    const auto j = params_to_json(pp);
    if (!out_path.empty())
        write_file(out_path, j.dump(2) + "\n");

    if (cfg.as_json() || out_path.empty())
        out << j.dump(2) << "\n";
    else
        out << "tier " << to_string(pp.tier) << ": q has " << mpz_sizeinbase(pp.q.get_mpz_t(), 2) << " bits, p has "
            << mpz_sizeinbase(pp.p.get_mpz_t(), 2) << " bits; written to " << out_path << "\n";
    return ok;
}

// keys

int keys_setup(const Config& cfg, const std::string& setting_name, std::ostream& out)
{
    const auto pp = load(cfg);
    const auto setting = setting_from_string(setting_name);
    auto rng = make_rng(cfg.seed);
    const auto domain = KeyDomain::create(pp, setting, *rng);

    std::error_code ec;
    fs::create_directories(cfg.keys_dir, ec);
    if (ec)
        throw IoError("cannot create key directory " + cfg.keys_dir + ": " + ec.message());
    write_file(master_path(cfg), master_to_json(pp, domain, true).dump(2) + "\n");
    const auto pub = master_to_json(pp, domain, false);
    write_file((fs::path(cfg.keys_dir) / "master.pub.json").string(), pub.dump(2) + "\n");

    if (cfg.as_json())
        out << pub.dump(2) << "\n";
    else
        out << to_string(setting) << " key domain written to " << cfg.keys_dir << "\n";
    return ok;
}

int keys_extract(const Config& cfg, const std::string& id, std::ostream& out)
{
    const auto pp = load(cfg);
    const auto path = key_path(cfg, id);
    const auto domain = master_from_json(pp, read_json(master_path(cfg)));
    auto rng = make_rng(cfg.seed);
    const auto ident = domain.enroll(pp, id, *rng);
    write_file(path, identity_to_json(pp, ident, domain.setting(), true).dump(2) + "\n");

    if (cfg.as_json())
        out << identity_to_json(pp, ident, domain.setting(), false).dump(2) << "\n";
    else
        out << "key for " << id << " written to " << path << "\n";
    return ok;
}

// catalog

bool has_flag(const protocol::CatalogEntry& e, const std::string& flag)
{
    const auto& f = e.flags;
    if (flag == "escrowed")
        return f.escrowed;
    if (flag == "escrowless")
        return !f.escrowed;
    if (flag == "pfs")
        return f.pfs;
    if (flag == "no-pfs")
        return !f.pfs;
    if (flag == "kci_resilient" || flag == "kci-resilient")
        return f.kci_resilient;
    if (flag == "kci")
        return !f.kci_resilient;
    if (flag == "broken" || flag == "known_broken")
        return f.known_broken;
    if (flag == "secure")
        return !f.known_broken;
    throw UsageError("unknown flag filter: " + flag +
                     " (escrowed, escrowless, pfs, no-pfs, kci_resilient, kci, broken, secure)");
}

json entry_json(const protocol::CatalogEntry& e)
{
    json j = {
        {"name", e.name},
        {"family", protocol::to_string(e.family)},
        {"kind", protocol::to_string(e.kind)},
        {"message", e.message},
        {"secret", e.secret},
        {"flags",
         {{"escrowed", e.flags.escrowed},
          {"pfs", e.flags.pfs},
          {"kci_resilient", e.flags.kci_resilient},
          {"known_broken", e.flags.known_broken}}},
        {"counterpart", e.counterpart.empty() ? json(nullptr) : json(e.counterpart)},
        {"rule_derived", e.rule_derived},
    };
    if (!e.receiver_secret.empty())
        j["receiver_secret"] = e.receiver_secret;
    if (e.pkg_recover)
        j["pkg_recover"] = *e.pkg_recover;
    if (e.static_attack)
        j["static_attack"] = *e.static_attack;
    if (e.kci_attack)
        j["kci_attack"] = {{"message", e.kci_attack->message}, {"secret", e.kci_attack->secret}};
    if (e.inverted)
        j["inverted"] = {{"message", e.inverted->message}, {"secret", e.inverted->secret}};
    if (!e.note.empty())
        j["note"] = e.note;
    return j;
}

int catalog_list(const Config& cfg, const std::string& family, const std::vector<std::string>& flags,
                 std::ostream& out)
{
    std::optional<protocol::Family> fam;
    if (!family.empty())
    {
        try
        {
            fam = protocol::family_from_string(family);
        }
        catch (const ConfigError& e)
        {
            throw UsageError(e.what());
        }
    }

    json rows = json::array();
    for (const auto& e : protocol::catalog())
    {
        if (fam && e.family != *fam)
            continue;
        if (!std::all_of(flags.begin(), flags.end(), [&](const auto& f) { return has_flag(e, f); }))
            continue;
        if (cfg.as_json())
        {
            rows.push_back(entry_json(e));
            continue;
        }
        std::string marks;
        marks += e.flags.escrowed ? "escrowed " : "";
        marks += e.flags.pfs ? "" : "no-pfs ";
        marks += e.flags.kci_resilient ? "" : "kci ";
        marks += e.flags.known_broken ? "broken " : "";
        if (!marks.empty())
            marks.pop_back();
        out << std::left << std::setw(18) << e.name << std::setw(5) << protocol::to_string(e.family) << std::setw(16)
            << protocol::to_string(e.kind) << std::setw(28) << marks
            << (e.counterpart.empty() ? "-" : e.counterpart) << "\n";
    }
    if (cfg.as_json())
        out << rows.dump(2) << "\n";
    return ok;
}

// run

analysis::Parties stored_parties(const Config& cfg, const PairingParams& pp, const protocol::CatalogEntry& entry,
                                 const std::string& a, const std::string& b, protocol::SessionOptions& options)
{
    auto domain = master_from_json(pp, read_json(master_path(cfg)));
    const auto want = protocol::setting_of(entry.family);
    if (domain.setting() == Setting::sok_inv && entry.inverted)
        options.inverted = true;
    else if (domain.setting() != want)
        throw ConfigError(entry.name + " runs in the " + std::string(to_string(want)) + " setting, the key store holds " +
                          std::string(to_string(domain.setting())) + " keys");
    if (options.inverted && domain.setting() != Setting::sok_inv)
        throw ConfigError("--inverted needs a sok_inv key store");
    auto ka = identity_from_json(pp, read_json(key_path(cfg, a)));
    auto kb = identity_from_json(pp, read_json(key_path(cfg, b)));
    if (id_of(ka) != a || id_of(kb) != b)
        throw ConfigError("key file identity does not match its file name");
    return {std::move(domain), std::move(ka), std::move(kb)};
}

int run_protocol(const Config& cfg, const std::string& name, const std::string& a, const std::string& b,
                 std::string seed, bool inverted, bool pin_h, const std::string& transcript_out, std::ostream& out)
{
    const auto& entry = entry_or_usage(name);
    const auto pp = load(cfg);
    if (seed.empty())
        seed = cfg.seed;
    auto rng = make_rng(seed);

    protocol::SessionOptions options{.pin_h_to_one = pin_h, .inverted = inverted};
    const auto parties = cfg.keys_given ? stored_parties(cfg, pp, entry, a, b, options)
                                        : analysis::make_parties(pp, entry.family, a, b, *rng, inverted);
    const auto h = analysis::run_handshake(entry, pp, parties, *rng, options);

    if (!transcript_out.empty())
        write_file(transcript_out, h.transcript.to_jsonl());

    if (cfg.as_json())
    {
        const json j = {
            {"protocol", entry.name},
            {"initiator", a},
            {"responder", b},
            {"inverted", options.inverted},
            {"transcript", transcript_json(h.transcript)},
            {"secret_a", value_list(pp, h.secret_a)},
            {"secret_b", value_list(pp, h.secret_b)},
            {"key_a", h.key_a.hex()},
            {"key_b", h.key_b.hex()},
            {"agreed", h.agreed()},
        };
        out << j.dump(2) << "\n";
    }
    else
    {
        out << h.transcript.to_jsonl();
        out << "key " << a << ": " << h.key_a.hex() << "\n";
        out << "key " << b << ": " << h.key_b.hex() << "\n";
        out << "agreement: " << (h.agreed() ? "yes" : "NO") << "\n";
    }
    if (!h.agreed())
        throw AgreementError(entry.name + ": session keys differ");
    return ok;
}

// translate

/// The catalog pair whose DH formula equals `f`, translated by `rules`.
std::optional<std::pair<const protocol::CatalogEntry*, formula::SecretFormula>> catalog_counterpart(
    const formula::SecretFormula& f, formula::RuleSet rules, formula::Actor actor)
{
    const auto nf = formula::normalize(f);
    for (const auto& e : protocol::catalog())
    {
        if (e.family != protocol::Family::dh || !e.rule_derived)
            continue;
        const auto& id = protocol::lookup(e.counterpart);
        if (protocol::rules_for(id.family) != rules)
            continue;
        for (bool receiver : {false, true})
        {
            if (receiver && e.kind != protocol::Kind::transport)
                continue;
            auto dh = e.secret_formula(receiver);
            auto target = id.secret_formula(receiver);
            if (actor == formula::Actor::B)
            {
                dh = formula::swap_roles(dh);
                target = formula::swap_roles(target);
            }
            if (formula::normalize(dh) == nf)
                return std::pair{&id, std::move(target)};
        }
    }
    return std::nullopt;
}

int translate(const Config& cfg, const std::string& text, const std::string& rules_name, const std::string& actor_name,
              const std::string& expect, unsigned trials, std::ostream& out)
{
    if (actor_name != "A" && actor_name != "B")
        throw UsageError("--actor must be A or B");
    const auto pp = load(cfg);
    const auto rules = formula::rule_set_from_string(rules_name);
    const auto actor = actor_name == "A" ? formula::Actor::A : formula::Actor::B;

    const auto input = formula::parse(text);
    const auto output = formula::apply_rules(input, rules, actor);

    json protocol_name = nullptr;
    std::optional<formula::SecretFormula> expected;
    if (auto match = catalog_counterpart(input, rules, actor))
    {
        protocol_name = match->first->name;
        expected = std::move(match->second);
    }
    if (!expect.empty())
        expected = formula::parse(expect);

    json structural = nullptr;
    if (expected)
        structural = formula::structural_equiv(output, *expected);

    json semantic = nullptr;
    std::string note;
    if (pp.tier != Tier::tiny)
    {
        note = "semantic check needs tiny-tier parameters";
    }
    else
    {
        auto rng = make_rng(cfg.seed);
        semantic = formula::semantic_equiv(pp, input, output, rules, formula::EquivMode::correspondence, trials, *rng);
    }

    if (cfg.as_json())
    {
        json j = {
            {"input", text},
            {"rules", formula::to_string(rules)},
            {"output", formula::render(output)},
            {"structural_match", structural},
            {"semantic_match", semantic},
            {"trials", trials},
            {"counterpart", protocol_name},
        };
        if (expected)
            j["expected"] = formula::render(formula::normalize(*expected));
        if (!note.empty())
            j["note"] = note;
        out << j.dump(2) << "\n";
    }
    else
    {
        out << formula::render(output) << "\n";
        if (!protocol_name.is_null())
            out << "counterpart: " << protocol_name.get<std::string>() << "\n";
        out << "structural match: " << yes_no(structural) << "\n";
        out << "semantic match (" << trials << " trials): " << yes_no(semantic) << "\n";
        if (!note.empty())
            out << "note: " << note << "\n";
    }
    if (structural == false || semantic == false)
        throw InvariantError("translation does not match");
    return ok;
}

// analyze

int analyze(const Config& cfg, const std::string& target, const analysis::MatrixOptions& options, std::ostream& out)
{
    std::vector<const protocol::CatalogEntry*> entries;
    if (target.empty() || target == "all")
        for (const auto& e : protocol::catalog())
            entries.push_back(&e);
    else
        entries.push_back(&entry_or_usage(target));

    const auto pp = load(cfg);
    auto rng = make_rng(cfg.seed);

    json reports = json::array();
    bool all_agree = true;
    bool all_ok = true;
    for (const auto* e : entries)
    {
        const auto r = analysis::analyze(*e, pp, *rng, options);
        all_agree = all_agree && r.agreement;
        all_ok = all_ok && r.ok(*e);
        reports.push_back(analysis::to_json(r, *e));
    }

    if (cfg.as_json())
    {
        out << reports.dump(2) << "\n";
    }
    else
    {
        for (const auto& r : reports)
        {
            out << std::left << std::setw(18) << r["protocol"].get<std::string>() << " agreement "
                << std::setw(4) << yes_no(r["agreement"]) << " escrow " << std::setw(15)
                << r["escrow_check"].get<std::string>() << " pfs-attack " << std::setw(18)
                << r["pfs_attack"].get<std::string>() << " kci-attack " << std::setw(18)
                << r["kci_attack"].get<std::string>() << " tamper " << std::setw(15) << r["tamper"].get<std::string>();
            for (const auto& d : r["degenerations"])
                out << " h=1:" << d["reference"].get<std::string>() << "=" << yes_no(d["passed"]);
            out << (r["ok"].get<bool>() ? " ok" : " FAIL") << "\n";
        }
    }
    if (!all_agree)
        throw AgreementError("some catalog entries did not agree");
    if (!all_ok)
        throw InvariantError("some probes contradict the catalog flags");
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Identity-based key agreement toolkit", "idka"};
    app.require_subcommand(1);

    Config cfg;
    cfg.params_path = env_or(params_env, "");
    cfg.keys_dir = env_or(keys_env, "");
    cfg.keys_given = !cfg.keys_dir.empty();
    app.add_option("--params", cfg.params_path, std::string("parameter file (default $") + params_env + ")");
    auto* keys_opt = app.add_option("--keys", cfg.keys_dir, std::string("key store directory (default $") + keys_env + ")");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "hex seed for reproducible randomness");

    std::function<int()> action;

    auto* params = app.add_subcommand("params", "parameter sets")->require_subcommand(1);
    auto* gen = params->add_subcommand("gen", "generate a parameter set");
    std::string tier = "tiny";
    std::string gen_seed;
    std::string gen_out;
    gen->add_option("--tier", tier)->check(CLI::IsMember({"tiny", "demo"}));
    gen->add_option("--seed", gen_seed, "hex seed");
    gen->add_option("--out", gen_out, "output file");
    gen->callback([&] { action = [&] { return params_gen(cfg, tier, gen_seed, gen_out, out); }; });

    auto* keys = app.add_subcommand("keys", "key store management")->require_subcommand(1);
    auto* setup = keys->add_subcommand("setup", "create a key domain (PKG master key or DH authority)");
    std::string setting = "sok";
    setup->add_option("--setting", setting)->required()->check(CLI::IsMember({"dh", "sok", "sok_inv", "sk"}));
    setup->callback([&] { action = [&] { return keys_setup(cfg, setting, out); }; });
    auto* extract = keys->add_subcommand("extract", "issue the key of one identity");
    std::string extract_id;
    extract->add_option("--id", extract_id)->required();
    extract->callback([&] { action = [&] { return keys_extract(cfg, extract_id, out); }; });

    auto* cat = app.add_subcommand("catalog", "protocol catalog")->require_subcommand(1);
    auto* list = cat->add_subcommand("list", "print the catalog");
    std::string family;
    std::vector<std::string> flags;
    list->add_option("--family", family, "DH, SOK or SK");
    list->add_option("--flag", flags, "escrowed, escrowless, pfs, no-pfs, kci_resilient, kci, broken, secure");
    list->callback([&] { action = [&] { return catalog_list(cfg, family, flags, out); }; });

    auto* run_cmd = app.add_subcommand("run", "execute one handshake");
    std::string proto;
    std::string id_a;
    std::string id_b;
    std::string run_seed;
    std::string transcript_out;
    bool inverted = false;
    bool pin_h = false;
    run_cmd->add_option("protocol", proto)->required();
    run_cmd->add_option("--a", id_a, "initiator identity")->required();
    run_cmd->add_option("--b", id_b, "responder identity")->required();
    run_cmd->add_option("--seed", run_seed, "hex seed");
    run_cmd->add_option("--transcript-out", transcript_out, "write the transcript as JSON lines");
    run_cmd->add_flag("--inverted", inverted, "run the variant with P0 = s^-1 P");
    run_cmd->add_flag("--h1", pin_h, "pin h_A = h_B = 1");
    run_cmd->callback([&] {
        action = [&] { return run_protocol(cfg, proto, id_a, id_b, run_seed, inverted, pin_h, transcript_out, out); };
    });

    auto* tr = app.add_subcommand("translate", "apply the substitution rules to a DH formula");
    std::string text;
    std::string rules = "sok";
    std::string actor = "A";
    std::string expect;
    unsigned trials = 50;
    tr->add_option("formula", text)->required();
    tr->add_option("--rules", rules)->required()->check(CLI::IsMember({"sok", "sk"}));
    tr->add_option("--actor", actor, "A or B");
    tr->add_option("--expect", expect, "formula the output must match");
    tr->add_option("--trials", trials, "random trials of the semantic check")->check(CLI::PositiveNumber);
    tr->callback([&] { action = [&] { return translate(cfg, text, rules, actor, expect, trials, out); }; });

    auto* an = app.add_subcommand("analyze", "run the analysis probes");
    std::string target = "all";
    analysis::MatrixOptions mopts;
    an->add_option("protocol", target, "catalog entry or all");
    an->add_option("--runs", mopts.runs, "honest runs per entry");
    an->add_option("--tamper-runs", mopts.tamper_runs, "tampered runs per entry");
    an->add_option("--degeneration-runs", mopts.degeneration_runs, "paired runs per degeneration");
    an->callback([&] { action = [&] { return analyze(cfg, target, mopts, out); }; });

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
        if (keys_opt->count() > 0)
            cfg.keys_given = true;
        if (cfg.keys_dir.empty())
            cfg.keys_dir = "keys";
        return action();
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return ok;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    catch (const UsageError& e)
    {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    catch (const IoError& e)
    {
        err << "error: " << e.what() << "\n";
        return io;
    }
    catch (const AgreementError& e)
    {
        err << "error: " << e.what() << "\n";
        return agreement;
    }
    catch (const InvariantError& e)
    {
        err << "error: " << e.what() << "\n";
        return invariant;
    }
    catch (const ValidationError& e)
    {
        err << "validation error: " << e.what() << "\n";
        return validation;
    }
    catch (const DecodeError& e)
    {
        err << "validation error: " << e.what() << "\n";
        return validation;
    }
    catch (const ExtractionError& e)
    {
        err << "validation error: " << e.what() << "\n";
        return validation;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return config;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return config;
    }
}

}  // namespace idka::cli
