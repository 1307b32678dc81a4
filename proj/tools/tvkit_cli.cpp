#include "tvkit_cli.hpp"

#include <tvkit/tvkit.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

namespace tvkit::cli
{
    namespace
    {
        using Json = nlohmann::ordered_json;

        /// Everything any subcommand can read. Only the active subcommand's
        /// flags are registered, so unknown flags are rejected by the parser.
        struct Config
        {
            std::string command;
            std::vector<std::string> inputs;
            std::string fixture;
            double fixture_p = 2.0;
            std::size_t n = 0; // 0: 16 for fixtures, 512 for generators
            std::string gen;
            double alpha = 1.8;
            double scale = 1.0;
            double horizon = 1.0;
            std::string norm = "euclidean";
            bool norm_given = false;
            double p = 2.0;
            double q = 2.0;
            bool pq_given = false;
            double c = 1.0;
            std::vector<double> lambdas {2.0};
            double tol = 1e-9;
            std::uint64_t seed = 0;
            bool seed_given = false;
            std::size_t trials = 1;
            std::string format = "json";
            std::string out_file;
            int phi_kind = 1;
            double gamma = 2.0;
            double eps_cont = 0.0;
            std::string kind = "step";
            std::string completion = "auto";
            std::string tag = "auto";
        };

        class UsageError : public std::runtime_error
        {
            using std::runtime_error::runtime_error;
        };

        struct PathPair
        {
            OperatorPath f;
            SampledPath g;
        };

        /// A computed report; `table` replaces the JSON when --format csv
        /// asks for path output (gen, approx).
        struct Report
        {
            Json json;
            std::optional<SampledPath> table;
        };

        std::size_t effective_n (const Config &cfg, bool generator) { return cfg.n != 0 ? cfg.n : (generator ? 512 : 16); }

        SampledPath apply_norm (SampledPath p, const Config &cfg)
        {
            return cfg.norm_given ? p.with_norm (parse_norm (cfg.norm)) : p;
        }

        SampledPath generate (const Config &cfg, std::uint64_t seed)
        {
            if (cfg.gen != "alpha-stable")
                throw UsageError ("unknown generator '" + cfg.gen + "' (expected alpha-stable)");
            if (!cfg.seed_given)
                throw UsageError ("--seed is required with --gen");
            return apply_norm (gen_alpha_stable (effective_n (cfg, true), cfg.alpha, cfg.scale, seed, cfg.horizon), cfg);
        }

        bool stochastic (const Config &cfg) { return !cfg.gen.empty (); }

        /// One path for trial t: --input, --fixture or --gen.
        SampledPath load_single (const Config &cfg, std::size_t trial)
        {
            const int sources = !cfg.inputs.empty () + !cfg.fixture.empty () + !cfg.gen.empty ();
            if (sources != 1)
                throw UsageError ("give exactly one of --input, --fixture, --gen");
            if (!cfg.inputs.empty ())
            {
                if (cfg.inputs.size () != 1)
                    throw UsageError (cfg.command + " takes one --input");
                return apply_norm (io::read_path_file (cfg.inputs[0]), cfg);
            }
            if (!cfg.fixture.empty ())
                return apply_norm (fixtures::by_name (cfg.fixture, cfg.fixture_p, effective_n (cfg, false)), cfg);
            return generate (cfg, derive_seed (cfg.seed, trial));
        }

        /// Integrand with d*d columns, or one column used as a multiple of the identity.
        OperatorPath as_integrand (const SampledPath &f, std::size_t d)
        {
            if (f.dim () == d * d)
                return OperatorPath (f.times (), f.flat_values (), d, f.norm ());
            if (f.dim () == 1)
                return OperatorPath::diagonal (f, d, f.norm ());
            throw UsageError ("integrand file needs 1 or " + std::to_string (d * d) + " value columns for a " + std::to_string (d) +
                              "-dimensional integrator");
        }

        /// (f, g) for trial t: two --input files (integrand first) or --gen.
        PathPair load_pair (const Config &cfg, std::size_t trial)
        {
            if (!cfg.fixture.empty ())
                throw UsageError (cfg.command + " needs two --input files or --gen");
            if (!cfg.gen.empty ())
            {
                if (!cfg.inputs.empty ())
                    throw UsageError ("give either --input files or --gen, not both");
                const SampledPath f = generate (cfg, derive_seed (cfg.seed, 2 * trial));
                const SampledPath g = generate (cfg, derive_seed (cfg.seed, 2 * trial + 1));
                return {OperatorPath::from_scalar (f), g};
            }
            if (cfg.inputs.size () != 2)
                throw UsageError (cfg.command + " needs two --input files (integrand, integrator) or --gen");
            const SampledPath g = apply_norm (io::read_path_file (cfg.inputs[1]), cfg);
            SampledPath f = io::read_path_file (cfg.inputs[0]).with_norm (g.norm ());
            return {as_integrand (f, g.dim ()), g};
        }

        Completion completion_of (const Config &cfg)
        {
            if (cfg.completion == "step")
                return Completion::step;
            if (cfg.completion == "linear")
                return Completion::linear;
            // Generated paths move at every sample, so their step completions
            // always share jumps; default to linear for them.
            return stochastic (cfg) ? Completion::linear : Completion::step;
        }

        std::optional<TagRule> tag_of (const Config &cfg)
        {
            if (cfg.tag == "auto")
                return std::nullopt;
            return parse_tag_rule (cfg.tag);
        }

        const char *tag_name (TagRule t) { return t == TagRule::left ? "left" : t == TagRule::mid ? "mid" : "right"; }

        Json describe (const SampledPath &p)
        {
            return Json {{"n", p.size ()}, {"dim", p.dim ()}, {"norm", std::string (to_string (p.norm ()))}};
        }

        Json vec (const std::vector<double> &v) { return Json (v); }

        // ---- single-path commands -------------------------------------------------

        Report cmd_ttv (const Config &cfg, std::size_t trial)
        {
            const SampledPath p = load_single (cfg, trial);
            const TtvProfile prof = ttv_profile (p);
            Json j {{"command", "ttv"}, {"path", describe (p)}, {"c", cfg.c}};
            j["value"] = prof.truncated_variation (cfg.c);
            j["total_variation"] = prof.total_variation ();
            j["oscillation"] = prof.oscillation ();
            return {j, std::nullopt};
        }

        Report cmd_pvar (const Config &cfg, std::size_t trial)
        {
            const SampledPath p = load_single (cfg, trial);
            const double v = p_variation (p, cfg.p);
            Json j {{"command", "pvar"}, {"path", describe (p)}, {"p", cfg.p}};
            j["value"] = v;
            j["norm_pvar"] = std::pow (v, 1.0 / cfg.p);
            return {j, std::nullopt};
        }

        Report cmd_phivar (const Config &cfg, std::size_t trial)
        {
            const SampledPath p = load_single (cfg, trial);
            const PhiSpec phi = PhiSpec::family (cfg.phi_kind, cfg.p, cfg.gamma);
            Json j {{"command", "phivar"}, {"path", describe (p)}, {"phi_kind", cfg.phi_kind}, {"p", cfg.p}, {"gamma", cfg.gamma}};
            j["value"] = phi_variation (p, phi);
            j["phi_monotone_on_grid"] = phi_looks_valid (phi);
            return {j, std::nullopt};
        }

        Report cmd_seminorm (const Config &cfg, std::size_t trial)
        {
            const SampledPath p = load_single (cfg, trial);
            const SeminormReport r = p_tv_seminorm (p, cfg.p);
            Json j {{"command", "seminorm"}, {"path", describe (p)}, {"p", cfg.p}};
            j["value"] = r.value;
            j["value_pow"] = r.value_pow;
            j["argmax_k"] = r.argmax_k ? Json (*r.argmax_k) : Json (nullptr);
            j["argmax_delta"] = r.argmax_delta ? Json (*r.argmax_delta) : Json (nullptr);
            j["tv_p_norm"] = p.value_norm (0) + r.value;
            return {j, std::nullopt};
        }

        Report cmd_approx (const Config &cfg, std::size_t trial)
        {
            const SampledPath p = load_single (cfg, trial);
            if (cfg.kind != "step" && cfg.kind != "linear")
                throw UsageError ("--kind must be step or linear");
            const Approximant a = cfg.kind == "step" ? step_approx (p, cfg.c) : linear_approx (p, cfg.c, cfg.eps_cont);
            const SandwichReport s = sandwich (p, cfg.c, cfg.lambdas);
            Json j {{"command", "approx"}, {"path", describe (p)}, {"c", cfg.c}, {"kind", cfg.kind}};
            if (cfg.kind == "linear")
                j["eps_cont"] = cfg.eps_cont;
            j["tv"] = a.tv;
            j["sup_distance"] = sup_distance (a.samples, p);
            j["knot_times"] = vec (a.skeleton.taus);
            Json branches = Json::array ();
            for (Branch b : a.skeleton.branches)
                branches.push_back (b == Branch::big_jump ? "big" : "small");
            j["branches"] = branches;
            j["sandwich"] = Json {{"lower", s.lower}, {"upper", s.upper}, {"witness_tv", s.witness_tv}, {"best_lambda", s.best_lambda}};
            const Json path = io::to_json (a.samples);
            j["approximant"] = Json {{"times", path["times"]}, {"values", path["values"]}};
            return {j, a.samples};
        }

        Report cmd_gen (const Config &cfg, std::size_t)
        {
            if (cfg.gen.empty ())
                throw UsageError ("gen needs --gen alpha-stable");
            if (!cfg.inputs.empty () || !cfg.fixture.empty ())
                throw UsageError ("gen takes no --input or --fixture");
            const SampledPath p = generate (cfg, cfg.seed);
            const nlohmann::json pj = io::to_json (p);
            return {Json::parse (pj.dump ()), p};
        }

        // ---- pair commands --------------------------------------------------------

        Report cmd_integrate (const Config &cfg, std::size_t trial, bool require_pq)
        {
            if (require_pq && !cfg.pq_given)
                throw UsageError (cfg.command + " needs --p and --q");
            const PathPair pp = load_pair (cfg, trial);
            const Completion comp = completion_of (cfg);
            Json j {{"command", cfg.command}, {"integrator", describe (pp.g)}, {"completion", comp == Completion::step ? "step" : "linear"}};

            const IntegralReport r = [&] {
                if (cfg.pq_given)
                {
                    LyOptions opt;
                    opt.completion = comp;
                    opt.tol = cfg.tol;
                    opt.tag = tag_of (cfg);
                    return improved_ly_check (pp.f, pp.g, cfg.p, cfg.q, opt);
                }
                if (comp == Completion::step)
                {
                    IntegralReport s;
                    s.value = step_integral (pp.f, pp.g);
                    s.converged = true;
                    return s;
                }
                RsOptions ro;
                ro.tol = cfg.tol;
                ro.tag = tag_of (cfg).value_or (TagRule::mid);
                return rs_integral (linear_function (pp.f), linear_function (pp.g), ro);
            }();
            if (comp == Completion::linear)
                j["tag"] = tag_name (tag_of (cfg).value_or (TagRule::mid));
            j["value"] = vec (r.value);
            j["refinement_levels"] = r.refinement_levels;
            j["cauchy_gap"] = r.cauchy_gap;
            if (cfg.pq_given && r.ly)
            {
                j["p"] = cfg.p;
                j["q"] = cfg.q;
                j["bound_S"] = r.bound_S ? Json (*r.bound_S) : Json (nullptr);
                const LyReport &ly = *r.ly;
                j["ly"] = Json {{"lhs", ly.lhs}, {"rhs", ly.rhs}, {"ratio", ly.ratio}, {"C_pq", ly.C_pq}};
            }
            return {j, std::nullopt};
        }

        Report cmd_irregularity (const Config &cfg, std::size_t trial)
        {
            if (!cfg.pq_given)
                throw UsageError ("irregularity needs --p and --q");
            const PathPair pp = load_pair (cfg, trial);
            const IrregularityReport r = irregularity_check (pp.f, pp.g, cfg.p, cfg.q, std::min (cfg.tol, 1e-12));
            Json j {{"command", "irregularity"}, {"integrator", describe (pp.g)}, {"p", cfg.p}, {"q", cfg.q}};
            j["lhs"] = r.lhs;
            j["rhs"] = r.rhs;
            j["ratio"] = r.ratio;
            j["D_pq"] = r.D_pq;
            return {j, std::nullopt};
        }

        // ---- output ---------------------------------------------------------------

        std::string csv_cell (const Json &v)
        {
            if (v.is_number_float ())
                return io::format_double (v.get<double> ());
            if (v.is_string ())
                return v.get<std::string> ();
            if (v.is_null ())
                return "";
            return v.dump ();
        }

        /// Flattens nested objects to dotted keys and arrays to key[i].
        void flatten (const Json &j, const std::string &prefix, std::vector<std::pair<std::string, std::string>> &out)
        {
            if (j.is_object ())
            {
                for (auto it = j.begin (); it != j.end (); ++it)
                    flatten (it.value (), prefix.empty () ? it.key () : prefix + "." + it.key (), out);
            }
            else if (j.is_array ())
            {
                for (std::size_t i = 0; i < j.size (); ++i)
                    flatten (j[i], prefix + "[" + std::to_string (i) + "]", out);
            }
            else
                out.emplace_back (prefix, csv_cell (j));
        }

        void write_csv_rows (std::ostream &os, const std::vector<Json> &rows)
        {
            std::vector<std::string> header;
            std::vector<std::map<std::string, std::string>> cells;
            for (const Json &r : rows)
            {
                std::vector<std::pair<std::string, std::string>> flat;
                flatten (r, "", flat);
                std::map<std::string, std::string> m;
                for (auto &[k, v] : flat)
                {
                    if (std::find (header.begin (), header.end (), k) == header.end ())
                        header.push_back (k);
                    m[k] = v;
                }
                cells.push_back (std::move (m));
            }
            for (std::size_t i = 0; i < header.size (); ++i)
                os << (i ? "," : "") << header[i];
            os << '\n';
            for (const auto &m : cells)
            {
                for (std::size_t i = 0; i < header.size (); ++i)
                {
                    auto it = m.find (header[i]);
                    os << (i ? "," : "") << (it == m.end () ? "" : it->second);
                }
                os << '\n';
            }
        }

        using Command = std::function<Report (const Config &, std::size_t)>;

        /// Runs trials 0..N-1 on a small thread pool; results keep trial order.
        std::vector<Report> run_trials (const Command &cmd, const Config &cfg)
        {
            const std::size_t n = cfg.trials;
            std::vector<std::optional<Report>> results (n);
            std::vector<std::string> errors (n);
            std::atomic<std::size_t> next {0};
            auto worker = [&] {
                for (std::size_t t = next++; t < n; t = next++)
                {
                    try
                    {
                        results[t] = cmd (cfg, t);
                    }
                    catch (const std::exception &e)
                    {
                        errors[t] = e.what ();
                    }
                }
            };
            const std::size_t hw = std::max<std::size_t> (1, std::thread::hardware_concurrency ());
            const std::size_t workers = std::min (n, hw);
            if (workers <= 1)
                worker ();
            else
            {
                std::vector<std::thread> pool;
                for (std::size_t w = 0; w < workers; ++w)
                    pool.emplace_back (worker);
                for (auto &th : pool)
                    th.join ();
            }
            std::vector<Report> out;
            for (std::size_t t = 0; t < n; ++t)
            {
                if (!errors[t].empty ())
                    throw std::runtime_error (n > 1 ? "trial " + std::to_string (t) + ": " + errors[t] : errors[t]);
                out.push_back (std::move (*results[t]));
            }
            return out;
        }

        /// Ratio summary for ensembles of bound checks.
        Json ratio_summary (const std::vector<Report> &reports)
        {
            double worst = 0.0;
            std::size_t violations = 0;
            bool any = false;
            for (const auto &r : reports)
            {
                const Json *ratio = nullptr;
                if (r.json.contains ("ly"))
                    ratio = &r.json["ly"]["ratio"];
                else if (r.json.contains ("ratio"))
                    ratio = &r.json["ratio"];
                if (!ratio)
                    continue;
                any = true;
                const double v = ratio->is_number () ? ratio->get<double> () : std::numeric_limits<double>::infinity ();
                worst = std::max (worst, v);
                violations += !(v <= 1.0);
            }
            if (!any)
                return Json ();
            return Json {{"max_ratio", worst}, {"violations", violations}};
        }

        void emit (const Config &cfg, const std::vector<Report> &reports, std::ostream &os)
        {
            const bool path_output = cfg.command == "gen" || cfg.command == "approx";
            if (cfg.format == "csv")
            {
                if (path_output && reports.size () == 1)
                {
                    io::write_csv (os, *reports.front ().table);
                    return;
                }
                std::vector<Json> rows;
                for (std::size_t t = 0; t < reports.size (); ++t)
                {
                    Json r = reports[t].json;
                    if (path_output)
                        r.erase ("approximant");
                    if (reports.size () > 1)
                    {
                        Json row {{"trial", t}};
                        row.update (r);
                        r = std::move (row);
                    }
                    rows.push_back (std::move (r));
                }
                write_csv_rows (os, rows);
                return;
            }
            Json doc;
            if (reports.size () == 1)
                doc = reports.front ().json;
            else
            {
                doc = Json {{"command", cfg.command}, {"trials", reports.size ()}};
                Json arr = Json::array ();
                for (std::size_t t = 0; t < reports.size (); ++t)
                {
                    Json row {{"trial", t}};
                    row.update (reports[t].json);
                    row.erase ("command");
                    arr.push_back (std::move (row));
                }
                doc["results"] = std::move (arr);
                if (Json s = ratio_summary (reports); !s.is_null ())
                    doc["summary"] = std::move (s);
            }
            if (stochastic (cfg))
                doc["seed"] = cfg.seed;
            os << doc.dump (2) << '\n';
        }

        // ---- flag registration ----------------------------------------------------

        void add_source (CLI::App *app, Config &cfg, bool pair)
        {
            app->add_option ("--input", cfg.inputs, pair ? "Path files: integrand then integrator (.csv or .json)" : "Path file (.csv or .json)");
            if (!pair)
            {
                app->add_option ("--fixture", cfg.fixture, "Built-in path: circle3 | stepSplit | logSeq");
                app->add_option ("--fixture-p", cfg.fixture_p, "Exponent p of the logSeq fixture")->capture_default_str ();
            }
            app->add_option ("--n", cfg.n, "Samples for logSeq (default 16) or the generator (default 512)");
            app->add_option ("--gen", cfg.gen, "Generator: alpha-stable (needs --seed)");
            app->add_option ("--alpha", cfg.alpha, "Stability index of the generator, in (0, 2]")->capture_default_str ();
            app->add_option ("--scale", cfg.scale, "Scale of one unit of time of the generated process")->capture_default_str ();
            app->add_option ("--horizon", cfg.horizon, "Time horizon: samples on [0, horizon]")->capture_default_str ();
            app->add_option ("--seed", cfg.seed, "Seed, required for generated paths; trial t uses a seed derived from it");
            app->add_option ("--trials", cfg.trials, "Independent generated trials, run in parallel, reported in trial order")
                ->capture_default_str ()
                ->check (CLI::PositiveNumber);
            app->add_option ("--norm", cfg.norm, "Norm on values: euclidean | sup | l1 (default: euclidean, or the JSON file's)")
                ->check (CLI::IsMember ({"euclidean", "sup", "supremum", "l1"}));
            app->add_option ("--format", cfg.format, "Output format: json | csv")->capture_default_str ()->check (CLI::IsMember ({"json", "csv"}));
            app->add_option ("--out", cfg.out_file, "Write the report to FILE instead of stdout");
        }

        CLI::Option *add_p (CLI::App *app, Config &cfg, const std::string &what)
        {
            return app->add_option ("--p", cfg.p, what)->capture_default_str ()->check (CLI::Range (1.0, 1e300));
        }

    } // namespace

    int run (const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        Config cfg;
        CLI::App app {"tvkit: truncated variation, p-TV seminorms, approximants and Riemann-Stieltjes bounds", "tvkit"};
        app.require_subcommand (1);
        app.fallthrough (false);

        std::map<std::string, Command> commands;

        auto *ttv_cmd = app.add_subcommand ("ttv", "Truncated variation TTV(f, c) of the step completion");
        add_source (ttv_cmd, cfg, false);
        ttv_cmd->add_option ("--c", cfg.c, "Truncation level c >= 0, in units of the path values")->capture_default_str ();
        commands["ttv"] = cmd_ttv;

        auto *pvar_cmd = app.add_subcommand ("pvar", "p-variation: sup over partitions of sum |increment|^p");
        add_source (pvar_cmd, cfg, false);
        add_p (pvar_cmd, cfg, "Exponent p >= 1");
        commands["pvar"] = cmd_pvar;

        auto *phi_cmd = app.add_subcommand ("phivar", "phi-variation for phi(x) = x^p / log-correction (kind 1 or 2)");
        add_source (phi_cmd, cfg, false);
        add_p (phi_cmd, cfg, "Power p > 1 of phi");
        phi_cmd->add_option ("--phi-kind", cfg.phi_kind, "1: x^p/ln(1+1/x)^gamma, 2: x^p/(ln(1+1/x) ln(ln(e+1/x))^gamma)")
            ->capture_default_str ();
        phi_cmd->add_option ("--gamma", cfg.gamma, "Log exponent gamma > 1")->capture_default_str ();
        commands["phivar"] = cmd_phivar;

        auto *semi_cmd = app.add_subcommand ("seminorm", "p-TV seminorm (sup_delta delta^(p-1) TTV(f, delta))^(1/p)");
        add_source (semi_cmd, cfg, false);
        add_p (semi_cmd, cfg, "Exponent p >= 1");
        commands["seminorm"] = cmd_seminorm;

        auto *approx_cmd = app.add_subcommand ("approx", "Greedy approximant within c/2 (step) or c (linear) and the TV sandwich");
        add_source (approx_cmd, cfg, false);
        approx_cmd->add_option ("--c", cfg.c, "Approximation width c > 0")->capture_default_str ();
        approx_cmd->add_option ("--lambda", cfg.lambdas, "Comma-separated lambdas > 1 for the upper bound")->delimiter (',')->capture_default_str ();
        approx_cmd->add_option ("--kind", cfg.kind, "step | linear")->capture_default_str ();
        approx_cmd->add_option ("--eps-cont", cfg.eps_cont, "Linear kind: increments <= eps-cont count as continuous")->capture_default_str ();
        commands["approx"] = cmd_approx;

        auto add_pair_flags = [&cfg] (CLI::App *sub, bool with_completion) {
            add_source (sub, cfg, true);
            sub->add_option ("--p", cfg.p, "Integrand exponent p > 1")->check (CLI::Range (1.0, 1e300));
            sub->add_option ("--q", cfg.q, "Integrator exponent q > 1, with 1/p + 1/q > 1")->check (CLI::Range (1.0, 1e300));
            sub->add_option ("--tol", cfg.tol, "Refinement and series tolerance")->capture_default_str ();
            if (with_completion)
            {
                sub->add_option ("--completion", cfg.completion, "step | linear | auto (linear for --gen, else step)")
                    ->capture_default_str ()
                    ->check (CLI::IsMember ({"step", "linear", "auto"}));
                sub->add_option ("--tag", cfg.tag, "Tag rule for refinement sums: left | mid | right | auto (mid)")
                    ->capture_default_str ()
                    ->check (CLI::IsMember ({"left", "mid", "right", "auto"}));
            }
        };

        auto *int_cmd = app.add_subcommand ("integrate", "int f dg; with --p/--q also the bound S and the Loeve-Young comparison");
        add_pair_flags (int_cmd, true);
        commands["integrate"] = [] (const Config &c, std::size_t t) { return cmd_integrate (c, t, false); };

        auto *ly_cmd = app.add_subcommand ("ly-check", "Compare |int f dg - f(a)(g(b)-g(a))| with the improved Loeve-Young bound");
        add_pair_flags (ly_cmd, true);
        commands["ly-check"] = [] (const Config &c, std::size_t t) { return cmd_integrate (c, t, true); };

        auto *irr_cmd = app.add_subcommand ("irregularity", "Compare the q-TV seminorm of int_a^. (f - f(a)) dg with its D_pq bound");
        add_pair_flags (irr_cmd, false);
        commands["irregularity"] = cmd_irregularity;

        auto *gen_cmd = app.add_subcommand ("gen", "Generate a path (alpha-stable Levy process sampled on a uniform grid)");
        add_source (gen_cmd, cfg, false);
        commands["gen"] = cmd_gen;

        try
        {
            std::vector<std::string> rev (args.rbegin (), args.rend ());
            app.parse (rev);
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit (e, out, err);
        }
        catch (const CLI::CallForAllHelp &e)
        {
            return app.exit (e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            std::string msg = e.what ();
            std::replace (msg.begin (), msg.end (), '\n', ' ');
            err << "tvkit: error: " << msg << '\n';
            return 2;
        }

        CLI::App *active = app.get_subcommands ().front ();
        cfg.command = active->get_name ();
        cfg.norm_given = active->count ("--norm") > 0;
        cfg.seed_given = active->count ("--seed") > 0;
        if (cfg.command == "integrate" || cfg.command == "ly-check" || cfg.command == "irregularity")
            cfg.pq_given = active->count ("--p") > 0 && active->count ("--q") > 0;

        try
        {
            if (cfg.trials > 1 && (!stochastic (cfg) || cfg.command == "gen"))
                throw UsageError ("--trials > 1 needs --gen and a computing subcommand");
            const std::vector<Report> reports = run_trials (commands.at (cfg.command), cfg);
            if (cfg.out_file.empty ())
                emit (cfg, reports, out);
            else
            {
                std::ostringstream buf;
                emit (cfg, reports, buf);
                std::ofstream f (cfg.out_file, std::ios::binary);
                if (!(f << buf.str ()))
                    throw UsageError ("cannot write '" + cfg.out_file + "'");
            }
            return 0;
        }
        catch (const std::exception &e)
        {
            std::string msg = e.what ();
            std::replace (msg.begin (), msg.end (), '\n', ' ');
            err << "tvkit: error: " << msg << '\n';
            return 2;
        }
    }

} // namespace tvkit::cli
