#include "jumpweight/cli.hpp"

#include "jumpweight/asymptotics.hpp"
#include "jumpweight/calculus.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace jw {

using ojson = nlohmann::ordered_json;

int auto_digits(int nmax, int slope) { return 60 + slope * nmax; }

std::vector<GridPoint> parse_grid(const std::string& text)
{
    std::vector<GridPoint> out;
    std::string norm = text;
    for (char& c : norm)
        if (c == '\n' || c == '\r') c = ';';
    std::stringstream ss(norm);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos || item[first] == '#') continue;
        std::vector<std::string> f;
        std::stringstream is(item);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            auto a = tok.find_first_not_of(" \t"), b = tok.find_last_not_of(" \t");
            f.push_back(a == std::string::npos ? "" : tok.substr(a, b - a + 1));
        }
        if (f.size() != 4)
            throw std::invalid_argument("grid point '" + item + "' must have four fields A,B,s,t");
        out.push_back({f[0], f[1], f[2], f[3]});
    }
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

namespace {

std::uint64_t splitmix(std::uint64_t& x)
{
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<double> sample_points(std::uint64_t seed, int n, int count, double s, double R)
{
    std::uint64_t st = seed;
    std::uint64_t key = splitmix(st) ^ (0x632be59bd9b4e019ULL * static_cast<std::uint64_t>(n + 1));
    std::mt19937_64 gen(key);
    std::vector<double> xs;
    while (static_cast<int>(xs.size()) < count) {
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        double x = s - 3 + 6 * u;
        // stay well clear of the jump and of the apparent singularity
        if (std::abs(x - s) < 0.05 || std::abs(2 * (x - s) + R) < 0.05) continue;
        xs.push_back(x);
    }
    return xs;
}

bool equation_selected(const std::string& id, const std::vector<std::string>& filter)
{
    if (filter.empty()) return true;
    for (const auto& f : filter) {
        if (id == f) return true;
        if (id.size() > f.size() && id.compare(0, f.size(), f) == 0 && id[f.size()] == '-')
            return true;
    }
    return false;
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Emit {
    const RunConfig& cfg;
    const GridPoint& pt;
    int digits;

    std::string num(const Real& x) const { return to_string(x, std::max(digits - 5, 6)); }

    ojson params() const
    {
        return ojson{{"A", pt.A}, {"B", pt.B}, {"s", pt.s}, {"t", pt.t}};
    }

    std::string n_field(const CheckReport& r) const
    {
        if (r.n_lo == r.n_hi) return std::to_string(r.n_lo);
        return std::to_string(r.n_lo) + ".." + std::to_string(r.n_hi);
    }

    std::string branch_field(const CheckReport& r) const
    {
        if (r.degenerate) return "degenerate";
        if (r.informational) return r.branch.empty() ? "informational" : r.branch + ";informational";
        return r.branch;
    }

    void reports(std::ostream& os, const std::vector<CheckReport>& reps) const
    {
        if (cfg.format == "json") {
            ojson arr = ojson::array();
            for (const auto& r : reps) {
                ojson o;
                o["schema_version"] = kSchemaVersion;
                o["equation"] = r.id;
                o["n"] = r.n_lo;
                if (r.n_hi != r.n_lo) o["n_hi"] = r.n_hi;
                o["residual"] = num(r.residual);
                o["tolerance"] = num(r.tolerance);
                if (r.kind == CheckKind::Window) o["lower"] = num(r.lower);
                o["kind"] = r.kind == CheckKind::Window ? "window" : "residual";
                o["scale"] = num(r.scale);
                o["digits"] = r.digits ? r.digits : digits;
                o["branch"] = branch_field(r);
                o["pass"] = r.pass;
                o["counts"] = r.counts();
                if (!r.note.empty()) o["note"] = r.note;
                o["params"] = params();
                arr.push_back(std::move(o));
            }
            os << arr.dump(1) << "\n";
            return;
        }
        os << kCsvHeader << "\n";
        for (const auto& r : reps) {
            std::string tol = r.kind == CheckKind::Window ? num(r.lower) + ".." + num(r.tolerance)
                                                          : num(r.tolerance);
            os << r.id << "," << n_field(r) << "," << num(r.residual) << "," << tol << ","
               << (r.digits ? r.digits : digits) << "," << branch_field(r) << ","
               << (r.pass ? "true" : "false") << "\n";
        }
    }

    void table(std::ostream& os, const std::vector<std::string>& cols,
               const std::vector<std::vector<std::string>>& rows) const
    {
        if (cfg.format == "json") {
            ojson arr = ojson::array();
            for (const auto& row : rows) {
                ojson o;
                o["schema_version"] = kSchemaVersion;
                for (size_t i = 0; i < cols.size(); ++i) {
                    if (i == 0)
                        o[cols[i]] = std::stoi(row[i]);
                    else
                        o[cols[i]] = row[i];
                }
                o["digits"] = digits;
                o["params"] = params();
                arr.push_back(std::move(o));
            }
            os << arr.dump(1) << "\n";
            return;
        }
        for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
        os << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
    }
};

Real algebraic_tol(int D, long bits)
{
    return pow10(D >= 50 ? -40 : -D + 10, bits);
}

std::vector<CheckReport> filtered(std::vector<CheckReport> reps, const RunConfig& cfg)
{
    std::vector<CheckReport> out;
    for (auto& r : reps)
        if (equation_selected(r.id, cfg.equations)) out.push_back(std::move(r));
    return out;
}

// Evaluate fn(i) for i in [0, count) on up to `threads` workers; results in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(int count, int threads, Fn fn)
{
    std::vector<T> out(count);
    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errs(count);
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

void append(std::vector<CheckReport>& a, std::vector<CheckReport> b)
{
    for (auto& r : b) a.push_back(std::move(r));
}

int cmd_moments(const RunConfig& cfg, const WeightParams& wp, const NumericContext& ctx,
                const Emit& em, std::ostream& os)
{
    MomentTable tbl = moments(wp, cfg.nmax, ctx);
    std::vector<std::vector<std::string>> rows;
    for (int j = 0; j <= cfg.nmax; ++j)
        rows.push_back({std::to_string(j), em.num(tbl.mu[j]), em.num(tbl.M[j]), em.num(tbl.I[j])});
    em.table(os, {"j", "mu", "gaussian", "tail"}, rows);
    return kExitOk;
}

int cmd_recurrence(const RunConfig& cfg, const WeightParams& wp, const NumericContext& ctx,
                   const Emit& em, std::ostream& os)
{
    Pipeline pl = build_pipeline(wp, cfg.nmax, ctx);
    std::vector<std::vector<std::string>> rows;
    for (int n = 0; n <= cfg.nmax; ++n)
        rows.push_back({std::to_string(n), em.num(pl.sys.alpha[n]), em.num(pl.sys.beta[n]),
                        em.num(pl.sys.h[n]), em.num(pl.sys.p[n]), em.num(pl.sys.logD[n]),
                        em.num(pl.aux.R[n]), em.num(pl.aux.r[n]), em.num(pl.aux.sigma[n])});
    em.table(os, {"n", "alpha", "beta", "h", "p", "logD", "R", "r", "sigma"}, rows);
    return kExitOk;
}

FDScheme scheme_for(const RunConfig& cfg, const NumericContext& ctx)
{
    if (!cfg.fd_step) return make_scheme(ctx);
    Real h;
    try {
        h = Real::make(*cfg.fd_step, ctx.bits());
    } catch (const std::exception&) {
        throw UsageError("invalid --fd-step '" + *cfg.fd_step + "'");
    }
    if (!(h > 0)) throw UsageError("--fd-step must be positive");
    try {
        return make_scheme(h, ctx);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

int cmd_verify(const RunConfig& cfg, const WeightParams& wp, const NumericContext& ctx,
               const Emit& em, std::ostream& os)
{
    long bits = ctx.bits();
    FDScheme sc = scheme_for(cfg, ctx);
    Pipeline pl = build_pipeline(wp, cfg.nmax, ctx);
    Real tol = algebraic_tol(ctx.digits, bits);
    std::vector<CheckReport> reps = check_algebraic(pl.sys, pl.aux, wp, tol);

    double s = wp.s.to_double();
    for (int n = 0; n <= cfg.nmax; ++n) {
        std::vector<Real> xs;
        for (double x : sample_points(cfg.seed, n, 5, s, pl.aux.R[n].to_double()))
            xs.push_back(Real::make(x, bits));
        auto r = check_ode_exact(pl.sys, pl.aux, wp, n, xs, tol);
        r.note = "seeded sample points";
        reps.push_back(std::move(r));
    }

    Real tol1 = pow10(-16, bits), tol2 = pow10(-12, bits);
    auto per_n = parallel_map<std::vector<CheckReport>>(cfg.nmax + 1, cfg.threads, [&](int n) {
        ParamPoint pt{wp, n, sc, ctx};
        return check_calculus(pt, tol1, tol2);
    });
    for (auto& v : per_n) append(reps, std::move(v));

    reps = filtered(std::move(reps), cfg);
    em.reports(os, reps);
    return all_pass(reps) ? kExitOk : kExitFail;
}

int cmd_asymptotics(const RunConfig& cfg, const WeightParams& wp, const NumericContext& ctx,
                    const Emit& em, std::ostream& os)
{
    auto reps = filtered(check_asymptotics(wp, ctx), cfg);
    em.reports(os, reps);
    return all_pass(reps) ? kExitOk : kExitFail;
}

int cmd_heun(const RunConfig& cfg, const WeightParams& wp, const NumericContext& ctx,
             const Emit& em, std::ostream& os)
{
    if (cfg.nmax < 1) throw UsageError("heun needs --nmax >= 1");
    long bits = ctx.bits();
    std::set<int> nset;
    for (int k = 1; k <= 4; ++k) nset.insert(std::max(1, cfg.nmax * k / 4));
    std::vector<int> ns(nset.begin(), nset.end());
    std::vector<Pipeline> pls = exact_pipelines(wp, ns, ctx);
    Real s = wp.s.at(bits);
    std::vector<Real> x1{s + 1};
    std::vector<CheckReport> reps;
    Real tol = algebraic_tol(ctx.digits, bits);
    std::vector<Real> curve;
    for (size_t i = 0; i < ns.size(); ++i) {
        auto r = heun_residual(pls[i].sys, pls[i].aux, wp, ns[i], x1);
        curve.push_back(r.residual);
        reps.push_back(std::move(r));
        // the exact ODE at the same point: the gap is the asymptotic error
        reps.push_back(check_ode_exact(pls[i].sys, pls[i].aux, wp, ns[i], x1, tol));
    }
    if (curve.size() > 1) {
        Real worst = Real::zero(bits);
        bool dec = true;
        for (size_t i = 1; i < curve.size(); ++i) {
            dec = dec && curve[i] < curve[i - 1];
            worst = max(worst, curve[i] / curve[i - 1]);
        }
        auto tr = window_report("6.3-limit-decay", ns.front(), ns.back(), worst, 0, 1);
        tr.pass = dec;
        tr.informational = true;
        tr.branch = "curve";
        reps.push_back(std::move(tr));
    }
    HeunParams hp = heun_parameters(wp, cfg.nmax, ctx);
    std::vector<Real> hx{s + 1, s + 2, s - 1, s + Real::make(1, bits) / 2};
    auto eq = heun_equivalence(pls.back().sys, wp, cfg.nmax, hx, pow10(-30, bits));
    eq.note = "gamma=" + to_string(hp.gamma, 12) + " delta=" + to_string(hp.delta, 12) +
              " alpha=" + to_string(hp.alpha, 12) + " q=" + to_string(hp.q, 12);
    reps.push_back(std::move(eq));
    if (!wp.A.is_zero())
        for (auto& r : reps)
            if (r.id.rfind("6.3", 0) == 0) r.branch = "regime-unsupported";
    reps = filtered(std::move(reps), cfg);
    stamp_digits(reps, ctx.digits);
    em.reports(os, reps);
    return all_pass(reps) ? kExitOk : kExitFail;
}

WeightParams parse_params(const GridPoint& p, long bits)
{
    WeightParams wp;
    try {
        wp = WeightParams::parse(p.A, p.B, p.t, p.s, bits);
    } catch (const std::exception& e) {
        throw UsageError(std::string("invalid parameter: ") + e.what());
    }
    std::string why;
    if (!is_valid(wp, &why)) throw UsageError("invalid weight parameters: " + why);
    return wp;
}

// One command at one parameter point, with the precision retry loop.
int run_point(const RunConfig& cfg, const GridPoint& pt, std::ostream& os, std::ostream& err)
{
    int slope = 12;
    for (int attempt = 0;; ++attempt) {
        int D = cfg.digits ? *cfg.digits : auto_digits(cfg.nmax, slope);
        std::ostringstream buf;
        try {
            NumericContext ctx(D);
            WeightParams wp = parse_params(pt, ctx.bits());
            Emit em{cfg, pt, D};
            int rc;
            if (cfg.command == "moments")
                rc = cmd_moments(cfg, wp, ctx, em, buf);
            else if (cfg.command == "recurrence")
                rc = cmd_recurrence(cfg, wp, ctx, em, buf);
            else if (cfg.command == "verify")
                rc = cmd_verify(cfg, wp, ctx, em, buf);
            else if (cfg.command == "asymptotics")
                rc = cmd_asymptotics(cfg, wp, ctx, em, buf);
            else if (cfg.command == "heun")
                rc = cmd_heun(cfg, wp, ctx, em, buf);
            else
                throw UsageError("unknown command '" + cfg.command + "'");
            os << buf.str();
            return rc;
        } catch (const PositivityLost& e) {
            if (cfg.digits) {
                err << "error: " << e.what() << "; raise --digits or use --digits auto\n";
                return kExitUsage;
            }
            if (attempt == 3) {
                err << "error: " << e.what() << " after 3 precision retries\n";
                return kExitFail;
            }
            slope *= 2;
        } catch (const UsageError& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::domain_error& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitFail;
        }
    }
}

int run_sweep(const RunConfig& cfg, std::ostream& os)
{
    if (cfg.grid.empty()) throw UsageError("sweep needs a non-empty --grid or --grid-file");
    if (cfg.sweep_command == "sweep") throw UsageError("sweep cannot run sweep");
    RunConfig sub = cfg;
    sub.command = cfg.sweep_command;
    sub.threads = 1;
    struct Block {
        int rc = 0;
        std::string out, err;
    };
    auto blocks = parallel_map<Block>(static_cast<int>(cfg.grid.size()), cfg.threads, [&](int i) {
        std::ostringstream o, e;
        Block b;
        b.rc = run_point(sub, cfg.grid[i], o, e);
        b.out = o.str();
        b.err = e.str();
        return b;
    });
    int rc = kExitOk;
    if (cfg.format == "json") {
        ojson arr = ojson::array();
        for (size_t i = 0; i < blocks.size(); ++i) {
            const auto& g = cfg.grid[i];
            ojson o;
            o["schema_version"] = kSchemaVersion;
            o["point"] = i;
            o["command"] = sub.command;
            o["params"] = ojson{{"A", g.A}, {"B", g.B}, {"s", g.s}, {"t", g.t}};
            o["status"] = blocks[i].rc;
            if (!blocks[i].err.empty()) o["error"] = blocks[i].err.substr(0, blocks[i].err.find_last_not_of('\n') + 1);
            o["reports"] = blocks[i].out.empty() ? ojson::array() : ojson::parse(blocks[i].out);
            arr.push_back(std::move(o));
        }
        os << arr.dump(1) << "\n";
    } else {
        for (size_t i = 0; i < blocks.size(); ++i) {
            const auto& g = cfg.grid[i];
            os << "# point " << i << " command=" << sub.command << " A=" << g.A << " B=" << g.B
               << " s=" << g.s << " t=" << g.t << " status=" << blocks[i].rc << "\n";
            std::istringstream es(blocks[i].err);
            for (std::string line; std::getline(es, line);) os << "# " << line << "\n";
            os << blocks[i].out;
        }
    }
    for (const auto& b : blocks)
        if (b.rc != kExitOk) rc = kExitFail;
    return rc;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.format != "csv" && cfg.format != "json") {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
    }
    if (cfg.nmax < 0) {
        err << "error: --nmax must be non-negative\n";
        return kExitUsage;
    }
    if (cfg.digits && *cfg.digits < 30) {
        err << "error: --digits must be at least 30\n";
        return kExitUsage;
    }
    std::ofstream file;
    std::ostream* os = &out;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) {
            err << "error: cannot open output file '" << cfg.output << "'\n";
            return kExitUsage;
        }
        os = &file;
    }
    if (cfg.command == "sweep") {
        try {
            return run_sweep(cfg, *os);
        } catch (const UsageError& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return run_point(cfg, cfg.params, *os, err);
}

int parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
               std::ostream& err)
{
    CLI::App app{"High-precision verification harness for orthogonal polynomials with a "
                 "jump-discontinuous Gaussian weight"};
    app.require_subcommand(1);

    std::string digits = "auto";
    if (const char* env = std::getenv("JUMPWEIGHT_DIGITS"); env && *env) digits = env;
    std::string fd = "auto";
    std::string equations;
    std::string grid, grid_file;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--A", cfg.params.A, "coefficient A of the weight")->capture_default_str();
        sub->add_option("--B", cfg.params.B, "jump height B")->capture_default_str();
        sub->add_option("--s", cfg.params.s, "jump location s")->capture_default_str();
        sub->add_option("--t", cfg.params.t, "linear exponent t")->capture_default_str();
        sub->add_option("--nmax", cfg.nmax, "largest index")->capture_default_str();
        sub->add_option("--digits", digits, "decimal digits or 'auto' (60 + 12 nmax)")
            ->capture_default_str();
        sub->add_option("--fd-step", fd, "finite-difference step or 'auto'")->capture_default_str();
        sub->add_option("--equations", equations, "comma-separated equation ids to keep");
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("-o,--output", cfg.output, "output file (default: standard output)");
        sub->add_option("--seed", cfg.seed, "seed for sampled points")->capture_default_str();
        sub->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
    };
    std::vector<std::pair<const char*, const char*>> cmds{
        {"moments", "print the moment table"},
        {"recurrence", "print recurrence coefficients and auxiliary sequences"},
        {"verify", "check every algebraic, ODE and derivative identity"},
        {"asymptotics", "compare large-n predictions with exact values"},
        {"heun", "limit ODE residual curve and biconfluent Heun parameters"},
        {"sweep", "run a command over a parameter grid"}};
    std::vector<CLI::App*> subs;
    for (auto [name, help] : cmds) {
        auto* sub = app.add_subcommand(name, help);
        common(sub);
        subs.push_back(sub);
    }
    CLI::App* sweep = subs.back();
    sweep->add_option("--grid", grid, "points 'A,B,s,t;A,B,s,t;...'");
    sweep->add_option("--grid-file", grid_file, "file with one A,B,s,t point per line")
        ->check(CLI::ExistingFile);
    sweep->add_option("--run", cfg.sweep_command, "command run at each point")
        ->check(CLI::IsMember({"moments", "recurrence", "verify", "asymptotics", "heun"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    for (auto* sub : subs)
        if (sub->parsed()) cfg.command = sub->get_name();

    try {
        if (digits == "auto") {
            cfg.digits.reset();
        } else {
            size_t pos = 0;
            int d = std::stoi(digits, &pos);
            if (pos != digits.size()) throw std::invalid_argument(digits);
            cfg.digits = d;
        }
    } catch (const std::exception&) {
        err << "error: --digits must be an integer or 'auto'\n";
        return kExitUsage;
    }
    if (fd == "auto")
        cfg.fd_step.reset();
    else
        cfg.fd_step = fd;
    cfg.equations.clear();
    if (!equations.empty()) {
        std::stringstream ss(equations);
        for (std::string id; std::getline(ss, id, ',');)
            if (!id.empty()) cfg.equations.push_back(id);
    }
    if (cfg.command == "sweep") {
        try {
            std::string text = grid;
            if (!grid_file.empty()) {
                std::ifstream f(grid_file);
                std::stringstream ss;
                ss << f.rdbuf();
                text += (text.empty() ? "" : ";") + ss.str();
            }
            cfg.grid = parse_grid(text);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return -1;
}

}  // namespace jw
