// reslim command-line front end: worst-case support construction, threshold
// curves, certificate sweeps, recovery phase maps, and bound-chain reports,
// emitted as versioned CSV tables with JSON sidecars.

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "reslim/certificates.hpp"
#include "reslim/converse.hpp"
#include "reslim/csv.hpp"
#include "reslim/random.hpp"
#include "reslim/support_set.hpp"
#include "reslim/trig_poly.hpp"
#include "reslim/tv_dual.hpp"

using json = nlohmann::json;
using namespace reslim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitParse = 4;
constexpr int kExitBudget = 5;

class parse_failure : public std::runtime_error {
  public:
    explicit parse_failure(const std::string& what) : std::runtime_error(what) {}
};

std::string git_hash() {
    FILE* pipe = popen("git rev-parse HEAD 2>/dev/null", "r");
    if (!pipe) return "unknown";
    char buf[128] = {0};
    std::string out;
    while (fgets(buf, sizeof(buf), pipe)) out += buf;
    pclose(pipe);
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return out.empty() ? "unknown" : out;
}

unsigned worker_count(size_t cells) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("RESLIM_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    if (n < 1) n = 1;
    if (static_cast<size_t>(n) > cells) n = static_cast<unsigned>(cells == 0 ? 1 : cells);
    return n;
}

/// Runs work(i) for i in [0, cells) on a small pool; the first exception is
/// rethrown on the caller thread once the pool drains.
template <typename Work>
void parallel_cells(size_t cells, Work&& work) {
    const unsigned workers = worker_count(cells);
    if (workers <= 1) {
        for (size_t i = 0; i < cells; ++i) work(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::mutex err_mutex;
    std::exception_ptr error;
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= cells) return;
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

void write_sidecar(const std::string& csv_path, const std::string& command, const json& config,
                   const json& extra, double wall_seconds) {
    json side;
    side["command"] = command;
    side["config"] = config;
    side["git_hash"] = git_hash();
    side["wall_time_s"] = wall_seconds;
    if (!extra.is_null()) side["extra"] = extra;
    std::ofstream out(csv_path + ".json", std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open sidecar for " + csv_path);
    out << side.dump(2) << "\n";
    if (!out) throw std::ios_base::failure("sidecar write failure");
}

// Per-cell checkpointing: completed rows are appended to <out>.partial as
// JSON lines holding the exact CSV field strings, so resumed runs emit
// byte-identical tables.
class Checkpoint {
  public:
    Checkpoint(const std::string& out_path, bool resume) : path_(out_path + ".partial") {
        if (resume) {
            std::ifstream in(path_);
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                try {
                    const json j = json::parse(line);
                    done_[j.at("key").get<std::string>()] =
                        j.at("row").get<std::vector<std::string>>();
                } catch (const json::exception&) {
                    // a torn last line from an interrupted run is expected
                }
            }
        } else {
            std::remove(path_.c_str());
        }
    }

    std::optional<std::vector<std::string>> lookup(const std::string& key) const {
        const auto it = done_.find(key);
        if (it == done_.end()) return std::nullopt;
        return it->second;
    }

    void record(const std::string& key, const std::vector<std::string>& row) {
        std::lock_guard<std::mutex> lock(mutex_);
        std::ofstream out(path_, std::ios::app | std::ios::binary);
        json j;
        j["key"] = key;
        j["row"] = row;
        out << j.dump() << "\n";
    }

    void discard() { std::remove(path_.c_str()); }

  private:
    std::string path_;
    std::map<std::string, std::vector<std::string>> done_;
    std::mutex mutex_;
};

std::vector<TorusPoint> parse_support_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open support file " + path);
    std::vector<TorusPoint> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const size_t b = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(a, b - a + 1);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw parse_failure("support file " + path + ": line " + std::to_string(lineno) +
                                ": expected one decimal torus coordinate, got '" + tok + "'");
        pts.emplace_back(v);
    }
    if (pts.empty()) throw parse_failure("support file " + path + ": no points");
    return pts;
}

std::complex<double> parse_complex(const std::string& raw) {
    // accepts 1, -0.5, 0.6+0.8i, -1i, 1-i and friends
    std::string s;
    for (const char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i') {
        char* end = nullptr;
        const double re = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) throw std::invalid_argument("bad complex literal " + raw);
        return {re, 0.0};
    }
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const auto parse_or_unit = [&raw](std::string t) {
        if (t.empty() || t == "+") t = "1";
        if (t == "-") t = "-1";
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size()) throw std::invalid_argument("bad complex literal " + raw);
        return v;
    };
    if (split == std::string::npos) return {0.0, parse_or_unit(s)};
    return {parse_or_unit(s.substr(0, split)), parse_or_unit(s.substr(split))};
}

std::vector<double> make_grid(double from, double to, double step) {
    std::vector<double> out;
    if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
    for (double v = from; v <= to + 1e-12 * std::max(1.0, std::abs(to)); v += step)
        out.push_back(v);
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

json config_echo(const CLI::App* cmd) {
    json cfg = json::object();
    for (const CLI::Option* opt : cmd->get_options()) {
        const auto& lnames = opt->get_lnames();
        if (lnames.empty()) continue;
        const std::string name = lnames.front();
        if (name.empty() || name == "help") continue;
        const auto& results = opt->results();
        if (results.empty()) continue;
        if (results.size() == 1)
            cfg[name] = results.front();
        else
            cfg[name] = results;
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

struct ConstructArgs {
    int m = 9;
    double delta = 2.5;
    double gamma = 0.5;
    std::string out;
};

int run_construct(const ConstructArgs& a, const json& cfg_echo) {
    const auto t0 = std::chrono::steady_clock::now();
    const converse::ConverseParams params(a.m, a.delta);
    const SupportSet x = converse::build_support(params);
    const size_t center = converse::center_index(x);
    const TrigPoly z = converse::vanishing_poly(x, center);

    csv::Writer w(a.out, csv::schema::kConstructHeader);
    const double d = params.spacing();
    for (size_t i = 0; i < x.size(); ++i) {
        const double xv = x.point(i).value();
        const double unwrapped = xv > 0.5 ? xv - 1.0 : xv;
        const long long k = std::llround(unwrapped / d);
        w.row({csv::schema::kConstructVersion, csv::fmt(a.m), csv::fmt(a.delta), csv::fmt(k),
               csv::fmt(xv), csv::fmt(params.alpha), csv::fmt(params.beta),
               csv::fmt(x.min_separation()), "ok"});
    }
    w.flush();

    json extra;
    extra["alpha"] = params.alpha;
    extra["beta"] = params.beta;
    extra["min_separation"] = x.min_separation();
    extra["eta_center"] = converse::eta(x, center);
    {
        json zj;
        zj["degree"] = z.degree();
        double max_abs = 0.0;
        for (const auto& c : z.coeffs()) max_abs = std::max(max_abs, std::abs(c));
        zj["max_abs_coeff"] = max_abs;
        zj["log10_max_abs_coeff"] = max_abs > 0.0 ? std::log10(max_abs) : 0.0;
        zj["coeff_abs_sum"] = z.coeff_abs_sum();
        if (a.m <= 64) {
            json list = json::array();
            for (const auto& c : z.coeffs()) list.push_back({c.real(), c.imag()});
            zj["coeffs"] = list;
        }
        extra["vanishing_poly"] = zj;
    }
    {
        const TrigPoly p = multiply(z, converse::r_gamma({a.gamma, 0.0}));
        const certificates::FactorCheck fc = certificates::forced_factor_check(x, center, p);
        json fj;
        fj["gamma"] = a.gamma;
        fj["residual"] = fc.residual;
        fj["value_at_node"] = {fc.value_at_node.real(), fc.value_at_node.imag()};
        fj["derivative_at_node"] = {fc.derivative_at_node.real(), fc.derivative_at_node.imag()};
        fj["eta_l"] = fc.eta_l;
        extra["forced_factorization"] = fj;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_sidecar(a.out, "construct", cfg_echo, extra, wall);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// mdelta-curve
// ---------------------------------------------------------------------------

struct MdeltaArgs {
    std::vector<double> deltas;
    double from = 2.1, to = 4.0, step = 0.1;
    std::string mode = "analytic";
    long long cap = 401;
    std::string out;
    bool resume = false;
};

int run_mdelta(const MdeltaArgs& a, const json& cfg_echo) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> deltas = a.deltas.empty() ? make_grid(a.from, a.to, a.step) : a.deltas;
    const bool analytic = a.mode == "analytic";
    if (!analytic && a.mode != "numeric")
        throw std::invalid_argument("mode must be 'analytic' or 'numeric'");

    Checkpoint ckpt(a.out, a.resume);
    std::vector<std::vector<std::string>> rows(deltas.size());
    parallel_cells(deltas.size(), [&](size_t i) {
        const double delta = deltas[i];
        const std::string key = "delta=" + csv::fmt(delta) + ";mode=" + a.mode;
        if (const auto cached = ckpt.lookup(key)) {
            rows[i] = *cached;
            return;
        }
        std::vector<std::string> row;
        try {
            converse::ThresholdConfig tc;
            tc.numeric_cap = a.cap;
            const auto mode =
                analytic ? converse::ThresholdMode::analytic : converse::ThresholdMode::numeric;
            const auto threshold = converse::m_delta_threshold(delta, mode, tc);
            if (!threshold.has_value()) {
                row = {csv::schema::kMdeltaVersion, csv::fmt(delta), a.mode, "", "", "", "failed"};
            } else {
                const double logm = std::log(static_cast<double>(*threshold));
                row = {csv::schema::kMdeltaVersion,
                       csv::fmt(delta),
                       a.mode,
                       csv::fmt(*threshold),
                       csv::fmt(logm),
                       csv::fmt((delta - 2.0) * logm),
                       "ok"};
            }
        } catch (const std::invalid_argument&) {
            row = {csv::schema::kMdeltaVersion, csv::fmt(delta), a.mode, "", "", "", "failed"};
        } catch (const budget_error&) {
            row = {csv::schema::kMdeltaVersion, csv::fmt(delta), a.mode, "", "", "", "failed"};
        }
        ckpt.record(key, row);
        rows[i] = row;
    });

    csv::Writer w(a.out, csv::schema::kMdeltaHeader);
    for (const auto& row : rows) w.row(row);
    w.flush();
    ckpt.discard();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_sidecar(a.out, "mdelta-curve", cfg_echo, json(), wall);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

struct CertifyArgs {
    std::string support_file;
    std::string pattern = "fourier-sweep";
    std::string signs;
    int m = 64;
    int grid_mult = 16;
    int count = 8;
    std::uint64_t seed = 1;
    int max_iters = 10000;
    std::string out;
};

int run_certify(const CertifyArgs& a, const json& cfg_echo) {
    const auto t0 = std::chrono::steady_clock::now();
    const SupportSet x = SupportSet::from_points(parse_support_file(a.support_file));
    const size_t s = x.size();

    std::vector<certificates::SignPattern> patterns;
    if (a.pattern == "fourier-sweep") {
        for (size_t k = 0; k < s; ++k) patterns.push_back(certificates::SignPattern::fourier(s, k));
    } else if (a.pattern == "random") {
        Rng rng(a.seed);
        for (int k = 0; k < a.count; ++k)
            patterns.push_back(certificates::SignPattern::random(s, rng));
    } else if (a.pattern == "explicit") {
        std::vector<std::complex<double>> vals;
        std::stringstream ss(a.signs);
        std::string tok;
        while (std::getline(ss, tok, ',')) vals.push_back(parse_complex(tok));
        if (vals.size() != s)
            throw std::invalid_argument("explicit pattern needs exactly one sign per support point");
        patterns.push_back(certificates::SignPattern(std::move(vals)));
    } else {
        throw std::invalid_argument("pattern must be fourier-sweep, random, or explicit");
    }

    const int grid_n = a.grid_mult * (2 * a.m + 1);
    std::vector<std::vector<std::string>> rows(patterns.size());
    std::vector<int> verdicts(patterns.size(), 0);
    parallel_cells(patterns.size(), [&](size_t i) {
        const certificates::CertificateReport rep =
            certificates::construct_certificate(x, patterns[i], a.m);
        certificates::FeasibilityConfig fcfg;
        fcfg.max_iters = a.max_iters;
        const certificates::FeasibilityResult fe =
            certificates::certificate_feasibility(x, patterns[i], a.m, grid_n, fcfg);
        const char* fs = fe.status == certificates::Feasibility::feasible     ? "feasible"
                         : fe.status == certificates::Feasibility::infeasible ? "infeasible"
                                                                              : "inconclusive";
        verdicts[i] = static_cast<int>(fe.status);
        rows[i] = {csv::schema::kCertifyVersion,
                   csv::fmt(static_cast<long long>(i)),
                   a.pattern,
                   csv::fmt(static_cast<long long>(s)),
                   csv::fmt(a.m),
                   csv::fmt(rep.interp_residual),
                   csv::fmt(rep.off_support_max),
                   rep.valid ? "true" : "false",
                   fs,
                   csv::fmt(fe.best_offmax),
                   fe.status == certificates::Feasibility::inconclusive ? "inconclusive" : "ok"};
    });

    csv::Writer w(a.out, csv::schema::kCertifyHeader);
    for (const auto& row : rows) w.row(row);
    w.flush();

    int infeasible = 0, inconclusive = 0;
    for (const int v : verdicts) {
        if (v == 1) ++infeasible;
        if (v == 2) ++inconclusive;
    }
    json extra;
    extra["patterns"] = patterns.size();
    extra["infeasible"] = infeasible;
    extra["inconclusive"] = inconclusive;
    extra["verdict"] = inconclusive > 0 ? "inconclusive-present"
                       : infeasible > 0 ? "some-infeasible"
                                        : "all-feasible";
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_sidecar(a.out, "certify", cfg_echo, extra, wall);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// phase
// ---------------------------------------------------------------------------

struct PhaseArgs {
    std::vector<int> m_list = {16, 32, 64};
    double sepxm_from = 0.5, sepxm_to = 3.0, sepxm_step = 0.25;
    std::vector<double> sepxm;
    int trials = 20;
    int spikes = 2;
    std::uint64_t seed = 7;
    int grid_mult = 8;
    std::string out;
    bool resume = false;
};

int run_phase(const PhaseArgs& a, const json& cfg_echo) {
    const auto t0 = std::chrono::steady_clock::now();
    if (a.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (a.grid_mult < 8) throw std::invalid_argument("grid-mult must be at least 8");
    const std::vector<double> sepxm =
        a.sepxm.empty() ? make_grid(a.sepxm_from, a.sepxm_to, a.sepxm_step) : a.sepxm;

    struct Cell {
        int m;
        double sxm;
    };
    std::vector<Cell> cells;
    for (const int m : a.m_list)
        for (const double sv : sepxm) cells.push_back({m, sv});

    Checkpoint ckpt(a.out, a.resume);
    std::vector<std::vector<std::string>> rows(cells.size());
    parallel_cells(cells.size(), [&](size_t i) {
        const Cell cell = cells[i];
        const double sep = cell.sxm / cell.m;
        const std::string key = "m=" + csv::fmt(cell.m) + ";sep=" + csv::fmt(sep);
        if (const auto cached = ckpt.lookup(key)) {
            rows[i] = *cached;
            return;
        }
        const std::vector<double> one = {sep};
        // every (m, separation) cell owns a derived stream, so the table is
        // independent of scheduling and of which cells were checkpointed
        const std::uint64_t cell_seed =
            derive_seed(a.seed, static_cast<std::uint64_t>(cell.m) * 1000003ull +
                                    static_cast<std::uint64_t>(std::llround(cell.sxm * 1e6)));
        const int grid_n = tvdual::detail::next_power_of_two(a.grid_mult * (2 * cell.m + 1));
        const auto res =
            tvdual::phase_transition_map(cell.m, one, a.trials, cell_seed, {}, a.spikes, grid_n);
        const tvdual::PhaseRow& r = res.front();
        rows[i] = {csv::schema::kPhaseVersion, csv::fmt(cell.m),   csv::fmt(sep),
                   csv::fmt(cell.sxm),         csv::fmt(a.trials), csv::fmt(r.successes),
                   csv::fmt(r.success_rate),   "ok"};
        ckpt.record(key, rows[i]);
    });

    csv::Writer w(a.out, csv::schema::kPhaseHeader);
    for (const auto& row : rows) w.row(row);
    w.flush();
    ckpt.discard();

    // gnuplot nonuniform-matrix companion: rows by m, columns by sep*m
    {
        const std::string matrix_path = a.out + ".matrix.txt";
        std::ofstream mx(matrix_path, std::ios::binary);
        if (!mx) throw std::ios_base::failure("cannot open " + matrix_path);
        mx << "# success rate over (m, separation*m)\n";
        mx << "# gnuplot: plot 'file' nonuniform matrix with image\n";
        mx << sepxm.size() + 1;
        for (const double sv : sepxm) mx << " " << csv::fmt(sv);
        mx << "\n";
        size_t idx = 0;
        for (const int m : a.m_list) {
            mx << m;
            for (size_t j = 0; j < sepxm.size(); ++j) {
                mx << " " << rows[idx][6];
                ++idx;
            }
            mx << "\n";
        }
        if (!mx) throw std::ios_base::failure("matrix write failure");
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_sidecar(a.out, "phase", cfg_echo, json(), wall);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// facts-check
// ---------------------------------------------------------------------------

struct FactsArgs {
    std::vector<int> m_list = {9, 99, 999};
    std::vector<double> alpha_list = {0.1, 0.5, 0.9};
    int grid = 64;
    std::string out;
};

int run_facts(const FactsArgs& a, const json& cfg_echo) {
    const auto t0 = std::chrono::steady_clock::now();
    csv::Writer w(a.out, csv::schema::kFactsHeader);
    for (const int m : a.m_list) {
        for (const double alpha : a.alpha_list) {
            const converse::FactsReport r = converse::verify_facts(m, alpha, a.grid);
            w.row({csv::schema::kFactsVersion, csv::fmt(m), csv::fmt(alpha),
                   csv::fmt(r.fact1_min_margin), csv::fmt(r.fact2_cot_margin),
                   csv::fmt(r.fact2_cot_ratio), csv::fmt(r.fact2_csc_margin), "ok"});
        }
    }
    w.flush();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_sidecar(a.out, "facts-check", cfg_echo, json(), wall);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::vector<int> m_list = {9, 21, 51, 101, 201};
    std::vector<double> delta_list = {2.2, 2.5, 3.0};
    bool numeric = true;
    int max_degree = 2001;
    std::string out;
    bool resume = false;
};

int run_bounds(const BoundsArgs& a, const json& cfg_echo) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Cell {
        int m;
        double delta;
    };
    std::vector<Cell> cells;
    for (const int m : a.m_list)
        for (const double d : a.delta_list) cells.push_back({m, d});

    Checkpoint ckpt(a.out, a.resume);
    std::vector<std::vector<std::string>> rows(cells.size());
    parallel_cells(cells.size(), [&](size_t i) {
        const Cell cell = cells[i];
        const std::string key = "m=" + csv::fmt(cell.m) + ";delta=" + csv::fmt(cell.delta);
        if (const auto cached = ckpt.lookup(key)) {
            rows[i] = *cached;
            return;
        }
        std::vector<std::string> row;
        try {
            converse::LSearchConfig lcfg;
            lcfg.max_degree = a.max_degree;
            const converse::BoundReport rep = converse::bound_report(
                converse::ConverseParams(cell.m, cell.delta), a.numeric, lcfg);
            row = {csv::schema::kBoundsVersion,
                   csv::fmt(cell.m),
                   csv::fmt(cell.delta),
                   rep.numeric_L ? csv::fmt(*rep.numeric_L) : "",
                   rep.gamma_star ? csv::fmt(*rep.gamma_star) : "",
                   csv::fmt(rep.log_inf_z_tilde),
                   csv::fmt(rep.kappa_numeric),
                   csv::fmt(rep.kappa_analytic),
                   csv::fmt(rep.c_delta),
                   csv::fmt(rep.analytic_lower_bound),
                   rep.numeric_L ? (rep.chain_L_ge_product ? "true" : "false") : "",
                   rep.chain_product_ge_analytic ? "true" : "false",
                   "ok"};
        } catch (const budget_error&) {
            row = {csv::schema::kBoundsVersion, csv::fmt(cell.m), csv::fmt(cell.delta), "", "", "",
                   "", "", "", "", "", "", "failed"};
        } catch (const std::invalid_argument&) {
            row = {csv::schema::kBoundsVersion, csv::fmt(cell.m), csv::fmt(cell.delta), "", "", "",
                   "", "", "", "", "", "", "failed"};
        }
        ckpt.record(key, row);
        rows[i] = row;
    });

    csv::Writer w(a.out, csv::schema::kBoundsHeader);
    for (const auto& row : rows) w.row(row);
    w.flush();
    ckpt.discard();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_sidecar(a.out, "bounds", cfg_echo, json(), wall);
    return kExitOk;
}

/// Values from an optional JSON config file are injected as trailing
/// arguments for options the explicit command line does not mention.
std::vector<std::string> augment_with_config(const std::vector<std::string>& args,
                                             const CLI::App& app) {
    std::string config_path;
    std::string subcommand;
    std::vector<std::string> stripped;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
            continue;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            continue;
        }
        if (subcommand.empty() && !args[i].empty() && args[i][0] != '-' &&
            app.get_subcommand_no_throw(args[i]) != nullptr)
            subcommand = args[i];
        stripped.push_back(args[i]);
    }
    if (config_path.empty() || subcommand.empty()) return stripped;
    const std::vector<std::string> base = stripped;

    std::ifstream in(config_path);
    if (!in) throw std::ios_base::failure("cannot open config file " + config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw parse_failure(std::string("config file parse error: ") + e.what());
    }
    if (!cfg.is_object()) throw parse_failure("config file must hold a JSON object");

    const CLI::App* sub = app.get_subcommand_no_throw(subcommand);
    std::vector<std::string> out = base;
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (sub->get_option_no_throw(flag) == nullptr) continue;
        bool present = false;
        for (const std::string& s : base)
            if (s == flag || s.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue; // explicit flags take precedence
        std::string sv;
        if (value.is_array()) {
            for (const auto& v : value) {
                if (!sv.empty()) sv += ",";
                sv += v.is_string() ? v.get<std::string>() : v.dump();
            }
        } else if (value.is_boolean()) {
            if (!value.get<bool>()) continue;
            out.push_back(flag);
            continue;
        } else {
            sv = value.is_string() ? value.get<std::string>() : value.dump();
        }
        out.push_back(flag + "=" + sv);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resolution-limit laboratory for TV-regularized line spectral estimation"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; explicit flags take precedence");

    ConstructArgs ca;
    CLI::App* construct = app.add_subcommand("construct", "emit the worst-case equispaced support");
    construct->add_option("--m", ca.m, "odd trigonometric degree")->required();
    construct->add_option("--delta", ca.delta, "second-order separation term (> 1)")->required();
    construct->add_option("--gamma", ca.gamma, "gamma for the factorization report");
    construct->add_option("--out", ca.out, "output CSV path")->required();

    MdeltaArgs ma;
    CLI::App* mdelta = app.add_subcommand("mdelta-curve", "observation-count threshold against delta");
    mdelta->add_option("--deltas", ma.deltas, "explicit delta list")->delimiter(',');
    mdelta->add_option("--delta-from", ma.from, "grid start");
    mdelta->add_option("--delta-to", ma.to, "grid end");
    mdelta->add_option("--delta-step", ma.step, "grid step");
    mdelta->add_option("--mode", ma.mode, "analytic or numeric");
    mdelta->add_option("--cap", ma.cap, "numeric-mode degree cap");
    mdelta->add_option("--out", ma.out, "output CSV path")->required();
    mdelta->add_flag("--resume", ma.resume, "resume from a partial run");

    CertifyArgs ce;
    CLI::App* certify = app.add_subcommand("certify", "certificate construction and feasibility sweep");
    certify->add_option("--support", ce.support_file, "support file, one coordinate per line")
        ->required();
    certify->add_option("--pattern", ce.pattern, "fourier-sweep, random, or explicit");
    certify->add_option("--signs", ce.signs, "comma-separated unimodular signs for explicit mode");
    certify->add_option("--m", ce.m, "certificate degree")->required();
    certify->add_option("--grid-mult", ce.grid_mult, "feasibility grid multiple of 2m+1 (>= 8)");
    certify->add_option("--count", ce.count, "number of random patterns");
    certify->add_option("--seed", ce.seed, "random pattern seed");
    certify->add_option("--max-iters", ce.max_iters, "feasibility iteration budget");
    certify->add_option("--out", ce.out, "output CSV path")->required();

    PhaseArgs ph;
    CLI::App* phase = app.add_subcommand("phase", "recovery success map around the resolution limit");
    phase->add_option("--m-list", ph.m_list, "degrees")->delimiter(',');
    phase->add_option("--sepxm-from", ph.sepxm_from, "separation*m grid start");
    phase->add_option("--sepxm-to", ph.sepxm_to, "separation*m grid end");
    phase->add_option("--sepxm-step", ph.sepxm_step, "separation*m grid step");
    phase->add_option("--sepxm", ph.sepxm, "explicit separation*m list")->delimiter(',');
    phase->add_option("--trials", ph.trials, "trials per cell");
    phase->add_option("--spikes", ph.spikes, "spikes per random measure");
    phase->add_option("--seed", ph.seed, "base seed");
    phase->add_option("--grid-mult", ph.grid_mult, "solver grid multiple of 2m+1");
    phase->add_option("--out", ph.out, "output CSV path")->required();
    phase->add_flag("--resume", ph.resume, "resume from a partial run");

    FactsArgs fa;
    CLI::App* facts = app.add_subcommand("facts-check", "margins of the auxiliary inequalities");
    facts->add_option("--m-list", fa.m_list, "odd degrees")->delimiter(',');
    facts->add_option("--alpha-list", fa.alpha_list, "alpha values in (0,1)")->delimiter(',');
    facts->add_option("--grid", fa.grid, "grid size for the log-sine inequality");
    facts->add_option("--out", fa.out, "output CSV path")->required();

    BoundsArgs ba;
    CLI::App* bounds = app.add_subcommand("bounds", "bound-chain report over (m, delta) cells");
    bounds->add_option("--m-list", ba.m_list, "odd degrees")->delimiter(',');
    bounds->add_option("--delta-list", ba.delta_list, "delta values")->delimiter(',');
    bounds->add_flag("--numeric,!--no-numeric", ba.numeric, "compute the numeric pinch objective");
    bounds->add_option("--max-degree", ba.max_degree, "numeric evaluation cap");
    bounds->add_option("--out", ba.out, "output CSV path")->required();
    bounds->add_flag("--resume", ba.resume, "resume from a partial run");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = augment_with_config(args, app);
    } catch (const parse_failure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }

    try {
        // CLI11 wants the argument list reversed when fed pre-tokenized
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (construct->parsed()) return run_construct(ca, config_echo(construct));
        if (mdelta->parsed()) return run_mdelta(ma, config_echo(mdelta));
        if (certify->parsed()) return run_certify(ce, config_echo(certify));
        if (phase->parsed()) return run_phase(ph, config_echo(phase));
        if (facts->parsed()) return run_facts(fa, config_echo(facts));
        if (bounds->parsed()) return run_bounds(ba, config_echo(bounds));
        std::fprintf(stderr, "no subcommand selected\n");
        return kExitValidation;
    } catch (const parse_failure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const budget_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
