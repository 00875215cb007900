#include "fqlab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fqlab/counter.hpp"
#include "fqlab/dynamics.hpp"
#include "fqlab/error.hpp"
#include "fqlab/harness.hpp"
#include "fqlab/poly.hpp"
#include "fqlab/report.hpp"
#include "fqlab/theorems.hpp"

namespace fqlab {

void RunConfig::validate() const {
    if (!(tolerance > 0.0)) throw ParseError("tolerance must be positive");
    if (threads < 1) throw ParseError("thread count must be at least 1");
    if (budget < 1) throw ParseError("budget must be at least 1");
    if (format != "json" && format != "csv" && format != "text") throw ParseError("unknown format " + format);
}

namespace {

using nlohmann::json;

CompleteIntersectionSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::vector<CompleteIntersectionSpec> load_specs(const RunConfig& cfg) {
    if (cfg.spec_paths.empty()) throw ParseError("--spec is required");
    std::vector<CompleteIntersectionSpec> out;
    for (const auto& p : cfg.spec_paths) out.push_back(load_spec(p));
    return out;
}

bool all_pass(const std::vector<VerificationReport>& reps) {
    for (const auto& r : reps) {
        if (!r.pass) return false;
    }
    return true;
}

std::string fixed(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void emit_reports(const std::vector<VerificationReport>& reps, const std::string& format, std::ostream& out) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : reps) arr.push_back(to_json(r));
        out << json{{"reports", arr}}.dump(2) << "\n";
    } else if (format == "csv") {
        out << csv_header() << "\n";
        for (const auto& r : reps) out << to_csv_row(r) << "\n";
    } else {
        for (const auto& r : reps) out << to_text(r) << "\n";
    }
}

class Session {
  public:
    explicit Session(const RunConfig& cfg) : cfg_(cfg) {
        cfg.validate();
        if (cfg.cache_dir) {
            std::filesystem::create_directories(*cfg.cache_dir);
            table_ = std::make_unique<CountTable>(*cfg.cache_dir / "counts.csv");
        }
    }

    CountOptions count_options() const {
        CountOptions o;
        o.threads = cfg_.threads;
        o.budget = cfg_.budget;
        o.cache = table_.get();
        o.audit = cfg_.audit;
        return o;
    }

    RandomCiOptions random_options() const {
        RandomCiOptions o;
        o.budget = cfg_.budget;
        o.threads = cfg_.threads;
        return o;
    }

    const RunConfig& cfg() const { return cfg_; }

  private:
    const RunConfig& cfg_;
    std::unique_ptr<CountTable> table_;
};

int cmd_count(const RunConfig& cfg, bool smooth, std::ostream& out) {
    Session s(cfg);
    const auto specs = load_specs(cfg);
    const unsigned max_ext = cfg.max_ext ? cfg.max_ext : 1;
    auto opts = s.count_options();
    opts.smoothness = smooth;
    bool ok = true;
    json rows = json::array();
    std::ostringstream csv, text;
    csv << "fingerprint,m,count\n";
    for (const auto& spec : specs) {
        for (unsigned m = 1; m <= max_ext; ++m) {
            const auto rec = count_projective(spec, m, opts);
            json row = {{"fingerprint", rec.fingerprint}, {"m", m}, {"count", rec.count.str()}};
            text << rec.fingerprint << " m=" << m << " count=" << rec.count;
            if (smooth) {
                row["anomalies"] = rec.anomalies.size();
                text << " anomalies=" << rec.anomalies.size();
                if (!rec.anomalies.empty()) ok = false;
            }
            text << "\n";
            csv << rec.fingerprint << "," << m << "," << rec.count << "\n";
            rows.push_back(std::move(row));
        }
    }
    if (cfg.format == "json") {
        out << json{{"counts", rows}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << csv.str();
    } else {
        out << text.str();
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_zeta(const RunConfig& cfg, bool fe, std::ostream& out) {
    Session s(cfg);
    std::vector<VerificationReport> reps;
    for (const auto& spec : load_specs(cfg)) {
        const auto b = static_cast<unsigned>(middle_betti(spec.ambient_dim(), spec.degrees()));
        const unsigned max_ext = cfg.max_ext ? cfg.max_ext : (fe ? (b + 1) / 2 + 1 : b + 1);
        const auto a = analyze_middle(spec, max_ext, s.count_options(), cfg.tolerance, fe);
        for (auto& r : zeta_reports(spec, a, cfg.tolerance)) reps.push_back(std::move(r));
    }
    emit_reports(reps, cfg.format, out);
    return all_pass(reps) ? kExitOk : kExitCheckFailed;
}

struct VerifyArgs {
    unsigned hyperplane = 0;
    std::optional<int> d_param;
    unsigned probe_depth = 2;
    unsigned max_ambient = 6;
    unsigned max_degree = 6;
    std::vector<unsigned> fermat_q{2, 3, 4};
};

int cmd_verify(const RunConfig& cfg, const std::string& check, const VerifyArgs& va, std::ostream& out) {
    Session s(cfg);
    std::vector<VerificationReport> reps;
    if (check == "thm-a") {
        const unsigned max_ext = cfg.max_ext ? cfg.max_ext : 1;
        for (const auto& spec : load_specs(cfg)) {
            const BigInt b = middle_betti(spec.ambient_dim(), spec.degrees());
            for (unsigned m = 1; m <= max_ext; ++m) {
                reps.push_back(check_theorem_a(spec, count_projective(spec, m, s.count_options()).count, m, b));
            }
        }
    } else if (check == "thm-b") {
        const unsigned max_ext = cfg.max_ext ? cfg.max_ext : 1;
        for (const auto& spec : load_specs(cfg)) {
            const auto section = hyperplane_section(spec, va.hyperplane);
            bool probes = false;
            if (!va.d_param) {
                probes = smooth_at_points_up_to(spec, va.probe_depth, s.count_options()) &&
                         smooth_at_points_up_to(section, va.probe_depth, s.count_options());
            }
            for (unsigned m = 1; m <= max_ext; ++m) {
                const BigInt closure = count_projective(spec, m, s.count_options()).count;
                const BigInt cut = count_projective(section, m, s.count_options()).count;
                auto r = check_theorem_b(spec, va.hyperplane, closure, cut, m, va.d_param, probes);
                if (!va.d_param) r.inputs["probe_depth"] = std::to_string(va.probe_depth);
                reps.push_back(std::move(r));
            }
        }
    } else if (check == "katz") {
        for (const auto& spec : load_specs(cfg)) {
            unsigned dmax = 0;
            for (auto d : spec.degrees()) dmax = std::max(dmax, d);
            auto r = check_katz_betti_bounds(spec.ambient_dim(), spec.r(), dmax,
                                             betti_sum(spec.ambient_dim(), spec.degrees()));
            r.fingerprint = spec.fingerprint();
            reps.push_back(std::move(r));
        }
    } else if (check == "genus") {
        const unsigned cap = cfg.max_ext ? cfg.max_ext : 12;
        for (const auto& spec : load_specs(cfg)) {
            reps.push_back(check_genus_vs_zeta(spec, genus_counts(spec, s.count_options(), cap)));
        }
    } else if (check == "genus2") {
        reps.push_back(genus_two_absent(va.max_ambient, va.max_degree));
    } else if (check == "fermat") {
        for (auto q : va.fermat_q) {
            for (auto& r : check_fermat_family(q, s.count_options())) reps.push_back(std::move(r));
        }
    } else {
        throw ParseError("unknown check " + check);
    }
    emit_reports(reps, cfg.format, out);
    return all_pass(reps) ? kExitOk : kExitCheckFailed;
}

struct DynamicsArgs {
    unsigned n_max = 5;
    unsigned q_max = 10;
    unsigned g_max = 5;
    unsigned k_max = 6;
    unsigned kn_max = 4;
    std::optional<std::string> lambda;
    unsigned n = 1;
    std::string q = "1";
    std::string b_middle = "0";
};

int cmd_dynamics(const RunConfig& cfg, const DynamicsArgs& da, std::ostream& out) {
    cfg.validate();
    std::vector<VerificationReport> reps;
    for (unsigned n = 0; n <= da.n_max; ++n) {
        for (unsigned qi = 1; qi <= da.q_max; ++qi) {
            const BigInt q = qi;
            const BigInt closed = q == 1 ? BigInt(n + 1) : (ipow(q, n + 1) - 1) / (q - 1);
            auto r = make_report("dynamics.lambda-fnq", "", Rational(lambda_fnq(n, q)), Relation::Equal,
                                 Rational(closed));
            r.inputs = {{"n", std::to_string(n)}, {"q", q.str()}};
            r.notes.push_back("Lambda(f_{n,q}) against (q^{n+1} - 1)/(q - 1), or n + 1 at q = 1");
            reps.push_back(std::move(r));
        }
    }
    for (unsigned g = 0; g <= da.g_max; ++g) {
        const BigInt lam = lambda_identity_curve(g);
        auto r = make_report("dynamics.lambda-identity", "", Rational(babs(lam - lambda_fnq(1, 1))), Relation::Equal,
                             Rational(BigInt(2 * g)));
        r.inputs = {{"g", std::to_string(g)}, {"lambda", lam.str()}};
        r.notes.push_back("|Lambda(id) - 1 - q| / q^{1/2} = 2g at q = 1");
        reps.push_back(std::move(r));
    }
    for (unsigned k = 2; k <= da.k_max; ++k) {
        for (unsigned n = 1; n <= da.kn_max; ++n) {
            for (auto& r : period_reports(k, n)) reps.push_back(std::move(r));
        }
    }
    if (da.lambda) {
        reps.push_back(check_theorem_c_bound(da.n, BigInt(da.q), BigInt(da.b_middle), BigInt(*da.lambda)));
    }
    emit_reports(reps, cfg.format, out);
    return all_pass(reps) ? kExitOk : kExitCheckFailed;
}

struct GenArgs {
    unsigned ambient = 2;
    std::vector<unsigned> degrees{3};
    std::uint32_t p = 5;
    unsigned count = 1;
    unsigned probe_depth = 2;
    std::optional<std::filesystem::path> out_dir;
};

int cmd_gen(const RunConfig& cfg, const GenArgs& ga, std::ostream& out) {
    Session s(cfg);
    json specs = json::array();
    std::ostringstream csv, text;
    csv << "label,fingerprint,path\n";
    if (ga.out_dir) std::filesystem::create_directories(*ga.out_dir);
    for (unsigned i = 0; i < ga.count; ++i) {
        const std::uint64_t seed = cfg.seed + i;
        const auto spec = random_ci(ga.ambient, ga.degrees, ga.p, seed, ga.probe_depth, s.random_options());
        std::string label = "ci-N" + std::to_string(ga.ambient) + "-d";
        for (std::size_t j = 0; j < ga.degrees.size(); ++j) label += (j ? "." : "") + std::to_string(ga.degrees[j]);
        label += "-p" + std::to_string(ga.p) + "-s" + std::to_string(seed);
        json entry = {{"label", label},
                      {"fingerprint", spec.fingerprint()},
                      {"seed", seed},
                      {"smoothness_verified_up_to", *spec.smoothness_verified_up_to},
                      {"spec", json::parse(serialize_spec(spec))}};
        std::string path;
        if (ga.out_dir) {
            path = (*ga.out_dir / (label + ".json")).string();
            std::ofstream f(path);
            if (!f) throw IntegrityError("cannot write " + path);
            f << serialize_spec(spec) << "\n";
            entry["path"] = path;
        }
        csv << label << "," << spec.fingerprint() << "," << path << "\n";
        text << label << " " << spec.fingerprint() << (path.empty() ? "" : " " + path) << "\n";
        specs.push_back(std::move(entry));
    }
    if (cfg.format == "json") {
        out << json{{"specs", specs}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << csv.str();
    } else {
        out << text.str();
    }
    return kExitOk;
}

int cmd_report(const RunConfig& cfg, bool standard, std::ostream& out) {
    Session s(cfg);
    std::vector<CorpusMember> members;
    if (standard) members = build_corpus(standard_recipes(cfg.seed), s.random_options());
    for (const auto& path : cfg.spec_paths) members.push_back({path, load_spec(path)});
    if (members.empty()) throw ParseError("report needs --spec or --standard");

    std::vector<VerificationReport> reps;
    for (const auto& mem : members) {
        const auto& spec = mem.spec;
        const auto b = static_cast<unsigned>(middle_betti(spec.ambient_dim(), spec.degrees()));
        const unsigned max_ext = cfg.max_ext ? cfg.max_ext : b + 1;
        const auto a = analyze_middle(spec, max_ext, s.count_options(), cfg.tolerance);

        std::vector<VerificationReport> mine;
        mine.push_back(check_theorem_a(spec, a.counts[0], 1, BigInt(a.b)));
        unsigned dmax = 0;
        for (auto d : spec.degrees()) dmax = std::max(dmax, d);
        auto katz = check_katz_betti_bounds(spec.ambient_dim(), spec.r(), dmax,
                                            betti_sum(spec.ambient_dim(), spec.degrees()));
        katz.fingerprint = spec.fingerprint();
        mine.push_back(std::move(katz));
        for (auto& r : zeta_reports(spec, a, cfg.tolerance)) mine.push_back(std::move(r));
        for (auto& r : mine) {
            r.inputs["label"] = mem.label;
            reps.push_back(std::move(r));
        }
    }

    for (const auto& r : reps) {
        const auto problems = validate_report_json(to_json(r));
        if (!problems.empty()) throw IntegrityError("report " + r.name + " violates the schema: " + problems.front());
    }
    const auto constants = empirical_constant(reps);
    const auto threshold = positivity_threshold(reps);

    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : reps) arr.push_back(to_json(r));
        json table = json::array();
        for (const auto& [n, c] : constants) {
            table.push_back({{"n", n},
                             {"empirical_constant", fixed(c.value)},
                             {"betti_constant", fixed(c.betti_bound)},
                             {"members", c.members}});
        }
        json doc = {{"reports", arr},
                    {"empirical_constants", table},
                    {"positivity_threshold", threshold ? json(threshold->str()) : json(nullptr)}};
        out << doc.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << csv_header() << "\n";
        for (const auto& r : reps) out << to_csv_row(r) << "\n";
        out << "\nn,empirical_constant,betti_constant,members\n";
        for (const auto& [n, c] : constants) {
            out << n << "," << fixed(c.value) << "," << fixed(c.betti_bound) << "," << c.members << "\n";
        }
        out << "\npositivity_threshold\n" << (threshold ? threshold->str() : "none") << "\n";
    } else {
        for (const auto& r : reps) out << to_text(r) << "\n";
        for (const auto& [n, c] : constants) {
            out << "n=" << n << " empirical constant " << fixed(c.value) << " (Betti constant "
                << fixed(c.betti_bound) << ", " << c.members << " members)\n";
        }
        out << "positivity threshold: " << (threshold ? threshold->str() : "none") << "\n";
    }
    return all_pass(reps) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Point counts, zeta data and theorem checks for complete intersections over finite fields", "fqlab"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string cache;
    app.add_option("--threads", cfg.threads, "counting workers")->envname("FQLAB_THREADS");
    app.add_option("--cache", cache, "directory holding counts.csv")->envname("FQLAB_CACHE");
    app.add_option("--format", cfg.format, "json, csv or text")->envname("FQLAB_FORMAT");
    app.add_option("--seed", cfg.seed, "corpus seed")->envname("FQLAB_SEED");
    app.add_option("--tolerance", cfg.tolerance, "relative tolerance of the root-modulus check")
        ->envname("FQLAB_TOLERANCE");
    app.add_option("--budget", cfg.budget, "maximum representatives per count")->envname("FQLAB_BUDGET");
    app.add_flag("--audit", cfg.audit, "recount cached entries and fail on a mismatch")->envname("FQLAB_AUDIT");

    auto add_spec = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--spec", cfg.spec_paths, "spec file (repeatable)");
        if (required) o->required();
        sub->add_option("--max-ext", cfg.max_ext, "largest extension degree")->envname("FQLAB_MAX_EXT");
    };

    bool smooth = false;
    auto* count = app.add_subcommand("count", "count points over F_{p^m}, m = 1..max-ext");
    add_spec(count, true);
    count->add_flag("--smooth", smooth, "run the Jacobian probe at every zero");

    bool fe = false;
    auto* zeta = app.add_subcommand("zeta", "reconstruct P_n and check its roots");
    add_spec(zeta, true);
    zeta->add_flag("--fe", fe, "use the functional equation (needs only ceil(b/2) counts)");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "theorem harness");
    verify->fallthrough();
    verify->require_subcommand(1);
    auto* thm_a = verify->add_subcommand("thm-a", "| |X(F_q)| - |P^n(F_q)| | bound");
    add_spec(thm_a, true);
    auto* thm_b = verify->add_subcommand("thm-b", "hyperplane-complement bound");
    add_spec(thm_b, true);
    thm_b->add_option("--hyperplane", va.hyperplane, "coordinate index of the removed hyperplane");
    thm_b->add_option("--d", va.d_param, "singular-locus dimension; default -1 after probing");
    thm_b->add_option("--probe-depth", va.probe_depth, "smoothness probe depth");
    auto* katz = verify->add_subcommand("katz", "Betti-sum bounds");
    add_spec(katz, true);
    auto* genus = verify->add_subcommand("genus", "deg P_1 = 2g on curves");
    add_spec(genus, true);
    auto* genus2 = verify->add_subcommand("genus2", "no complete-intersection curve of genus 2");
    genus2->add_option("--max-ambient", va.max_ambient);
    genus2->add_option("--max-degree", va.max_degree);
    auto* fermat = verify->add_subcommand("fermat", "X^{q+1} + Y^{q+1} = Z^{q+1} over F_{q^2}");
    fermat->add_option("--q", va.fermat_q, "prime powers (repeatable)");

    DynamicsArgs da;
    auto* dyn = app.add_subcommand("dynamics", "Lefschetz numbers and diagonal periods");
    dyn->add_option("--n-max", da.n_max);
    dyn->add_option("--q-max", da.q_max);
    dyn->add_option("--g-max", da.g_max);
    dyn->add_option("--k-max", da.k_max);
    dyn->add_option("--kn-max", da.kn_max);
    dyn->add_option("--lambda", da.lambda, "observed Lefschetz number for the bound check");
    dyn->add_option("--n", da.n);
    dyn->add_option("--q", da.q);
    dyn->add_option("--b-middle", da.b_middle);

    GenArgs ga;
    std::string out_dir;
    auto* gen = app.add_subcommand("gen", "random smooth complete intersections");
    gen->add_option("--N", ga.ambient, "ambient dimension");
    gen->add_option("--degrees", ga.degrees)->delimiter(',');
    gen->add_option("--p", ga.p);
    gen->add_option("--count", ga.count);
    gen->add_option("--probe-depth", ga.probe_depth);
    gen->add_option("--out", out_dir, "write one spec file per member here");

    bool standard = false;
    auto* rep = app.add_subcommand("report", "corpus reports and empirical constants");
    add_spec(rep, false);
    rep->add_flag("--standard", standard, "include the built-in seeded corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    if (!cache.empty()) cfg.cache_dir = cache;
    if (!out_dir.empty()) ga.out_dir = out_dir;

    try {
        if (*count) return cmd_count(cfg, smooth, out);
        if (*zeta) return cmd_zeta(cfg, fe, out);
        if (*verify) {
            for (auto* sub : verify->get_subcommands()) {
                if (*sub) return cmd_verify(cfg, sub->get_name(), va, out);
            }
        }
        if (*dyn) return cmd_dynamics(cfg, da, out);
        if (*gen) return cmd_gen(cfg, ga, out);
        if (*rep) return cmd_report(cfg, standard, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::Parse: return kExitParse;
            case ErrorKind::Budget: return kExitBudget;
            case ErrorKind::Integrity: return kExitIntegrity;
            case ErrorKind::Math: return kExitCheckFailed;
        }
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIntegrity;
    }
    return kExitParse;
}

}  // namespace fqlab
