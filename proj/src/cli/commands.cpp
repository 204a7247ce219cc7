#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "amm_lab/arbitrage.hpp"
#include "amm_lab/cli.hpp"
#include "amm_lab/output.hpp"
#include "amm_lab/random_walk.hpp"
#include "amm_lab/sim_harness.hpp"

namespace amm_lab::cli {

namespace {

using json = nlohmann::ordered_json;

struct Output {
    std::string body;
    int exit_code = kSuccess;
};

std::string join_numbers(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += format_number(xs[i]);
    }
    return s;
}

std::string join_ints(const std::vector<int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(xs[i]);
    }
    return s;
}

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string s;
    bool first = true;
    for (const auto& c : cells) {
        if (!first) s += ',';
        s += c;
        first = false;
    }
    s += '\n';
    return s;
}

json spec_json(const std::string& command, const SpecEntries& entries) {
    json j;
    j["command"] = command;
    for (const auto& [k, v] : entries) j[k] = v;
    return j;
}

/// Flags shared by every command.
struct Common {
    std::uint64_t seed = 42;
    std::string out_path;
    std::string format = "csv";
    std::string config_path;
    unsigned threads = 0;

    void add_to(CLI::App* app, bool parallel) {
        app->add_option("--seed", seed, "Master seed (u64)");
        app->add_option("--out", out_path, "Output file (default: stdout)");
        app->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        app->add_option("--config", config_path, "key=value config file; flags override it");
        if (parallel) {
            app->add_option("--threads", threads, "Worker threads, 0 = all cores");
        }
    }
};

struct PathFlags {
    std::size_t steps;
    double sigma;
    double mu = 0.0;
    double p0 = 1.0;
    std::string mode = "multiplicative";

    PathFlags(std::size_t s, double sig) : steps(s), sigma(sig) {}

    void add_to(CLI::App* app) {
        app->add_option("--steps", steps, "Number of price steps");
        app->add_option("--sigma", sigma, "Per-step volatility");
        app->add_option("--mu", mu, "Per-step drift");
        app->add_option("--p0", p0, "Initial price (pool and CEX)");
        app->add_option("--mode", mode, "Price process")
            ->check(CLI::IsMember({"multiplicative", "additive"}));
    }

    void append(SpecEntries& e) const {
        e.emplace_back("steps", std::to_string(steps));
        e.emplace_back("sigma", format_number(sigma));
        e.emplace_back("mu", format_number(mu));
        e.emplace_back("p0", format_number(p0));
        e.emplace_back("mode", mode);
    }
};

struct PoolFlags {
    double liquidity = 15000.0;
    double fee = 0.005;
    double flashloan_fee = 0.0;
    double txn_cost = 0.0;

    void add_to(CLI::App* app, bool with_fee) {
        app->add_option("--liquidity", liquidity, "Pool liquidity L");
        if (with_fee) app->add_option("--fee", fee, "Pool swap fee");
        app->add_option("--flashloan-fee", flashloan_fee, "Flashloan fee");
        app->add_option("--txn-cost", txn_cost, "Transaction cost per arbitrage (token A)");
    }
};

SimConfig make_sim_config(const PathFlags& path, const PoolFlags& pool, std::uint64_t seed) {
    SimConfig cfg;
    cfg.pool_price0 = path.p0;
    cfg.liquidity = pool.liquidity;
    cfg.fee = pool.fee;
    cfg.flashloan_fee = pool.flashloan_fee;
    cfg.txn_cost = pool.txn_cost;
    cfg.path.n_steps = path.steps;
    cfg.path.sigma = path.sigma;
    cfg.path.mu = path.mu;
    cfg.path.p0 = path.p0;
    cfg.path.mode = parse_path_mode(path.mode);
    cfg.path.seed = seed;
    return cfg;
}

/// One subcommand: registers its flags, describes its spec, runs.
class Command {
public:
    virtual ~Command() = default;
    virtual std::string name() const = 0;
    virtual SpecEntries entries() const = 0;
    virtual Output execute() = 0;
    Common common;
};

class ArbQuote final : public Command {
public:
    explicit ArbQuote(CLI::App* app) {
        common.add_to(app, false);
        auto* a = app->add_option("--alpha", alpha, "Pool/CEX price ratio");
        auto* d = app->add_option("--delta-alpha", delta_alpha, "alpha - 1");
        a->excludes(d);
        app->add_option("--fee", fee, "Pool swap fee");
        app->add_option("--price-impact", impact, "Price impact 1/x of the incoming reserve");
        app->add_option("--flashloan-fee", flashloan_fee, "Flashloan fee");
        app->add_option("--txn-cost", txn_cost, "Transaction cost");
        app->add_flag("--optimal-fee", optimal_fee_mode, "Quote at fee = delta_alpha / 2");
    }

    std::string name() const override { return "arb-quote"; }

    SpecEntries entries() const override {
        SpecEntries e;
        if (alpha) e.emplace_back("alpha", format_number(*alpha));
        if (delta_alpha) e.emplace_back("delta-alpha", format_number(*delta_alpha));
        e.emplace_back("fee", format_number(fee));
        e.emplace_back("price-impact", format_number(impact));
        e.emplace_back("flashloan-fee", format_number(flashloan_fee));
        e.emplace_back("txn-cost", format_number(txn_cost));
        e.emplace_back("optimal-fee", optimal_fee_mode ? "true" : "false");
        e.emplace_back("format", common.format);
        return e;
    }

    Output execute() override {
        if (!alpha && !delta_alpha) {
            throw std::invalid_argument("arb-quote needs --alpha or --delta-alpha");
        }
        ArbParams p;
        p.alpha = alpha ? *alpha : 1.0 + *delta_alpha;
        p.fee = optimal_fee_mode ? optimal_fee(p.alpha - 1.0).fee : fee;
        p.flashloan_fee = flashloan_fee;
        p.price_impact = impact;
        p.txn_cost = txn_cost;
        p.validate();

        const double threshold = arb_threshold(p.fee, p.flashloan_fee);
        const ArgmaxResult oracle = numeric_argmax(p);
        const bool closed = p.txn_cost == 0.0;
        const bool triggered = closed ? arb_condition(p.alpha, p.fee, p.flashloan_fee)
                                      : oracle.profit > 0.0;

        double flashloan = 0.0, profit = 0.0, revenue = 0.0;
        std::optional<double> keep, keep_small, fl_diff, pr_diff;
        if (triggered) {
            if (closed) {
                flashloan = optimal_flashloan(p);
                profit = optimal_profit(p);
                fl_diff = std::abs(oracle.flashloan - flashloan) / flashloan;
                pr_diff = std::abs(oracle.profit - profit) / profit;
            } else {
                flashloan = oracle.flashloan;
                profit = oracle.profit;
            }
            revenue = flashloan * p.fee;
            keep = revenue / (revenue + profit);
            const double da = p.alpha - 1.0;
            if (p.fee < da) {
                const double r = small_fee_revenue(da, p.fee, p.price_impact);
                keep_small = r / (r + small_fee_profit(da, p.fee, p.price_impact));
            }
        }

        std::string body;
        auto opt_num = [](const std::optional<double>& x) {
            return x ? format_number(*x) : std::string();
        };
        if (common.format == "json") {
            auto opt_json = [](const std::optional<double>& x) { return x ? json(*x) : json(); };
            json j;
            j["spec"] = spec_json(name(), entries());
            j["alpha"] = p.alpha;
            j["fee"] = p.fee;
            j["flashloan_fee"] = p.flashloan_fee;
            j["price_impact"] = p.price_impact;
            j["txn_cost"] = p.txn_cost;
            j["threshold"] = threshold;
            j["verdict"] = triggered ? "arbitrage" : "below threshold";
            j["flashloan"] = flashloan;
            j["profit"] = profit;
            j["revenue"] = revenue;
            j["retention"] = opt_json(keep);
            j["retention_small_fee"] = opt_json(keep_small);
            j["oracle_flashloan"] = oracle.flashloan;
            j["oracle_profit"] = oracle.profit;
            j["flashloan_rel_diff"] = opt_json(fl_diff);
            j["profit_rel_diff"] = opt_json(pr_diff);
            body = j.dump(2) + "\n";
        } else {
            body = spec_comment(name(), entries()) + "\n";
            body += "alpha,fee,flashloan_fee,price_impact,txn_cost,threshold,verdict,flashloan,"
                    "profit,revenue,retention,retention_small_fee,oracle_flashloan,"
                    "oracle_profit,flashloan_rel_diff,profit_rel_diff\n";
            body += csv_row({format_number(p.alpha), format_number(p.fee),
                             format_number(p.flashloan_fee), format_number(p.price_impact),
                             format_number(p.txn_cost), format_number(threshold),
                             triggered ? "arbitrage" : "below threshold", format_number(flashloan),
                             format_number(profit), format_number(revenue), opt_num(keep),
                             opt_num(keep_small), format_number(oracle.flashloan),
                             format_number(oracle.profit), opt_num(fl_diff), opt_num(pr_diff)});
        }
        return {std::move(body), triggered ? kSuccess : kNoArbitrage};
    }

private:
    std::optional<double> alpha;
    std::optional<double> delta_alpha;
    double fee = 0.005;
    double impact = 0.001;
    double flashloan_fee = 0.0;
    double txn_cost = 0.0;
    bool optimal_fee_mode = false;
};

class Simulate final : public Command {
public:
    explicit Simulate(CLI::App* app) {
        common.add_to(app, false);
        path.add_to(app);
        pool.add_to(app, true);
    }

    std::string name() const override { return "simulate"; }

    SpecEntries entries() const override {
        SpecEntries e;
        path.append(e);
        e.emplace_back("liquidity", format_number(pool.liquidity));
        e.emplace_back("fee", format_number(pool.fee));
        e.emplace_back("flashloan-fee", format_number(pool.flashloan_fee));
        e.emplace_back("txn-cost", format_number(pool.txn_cost));
        e.emplace_back("seed", std::to_string(common.seed));
        e.emplace_back("format", common.format);
        return e;
    }

    Output execute() override {
        const SimConfig cfg = make_sim_config(path, pool, common.seed);
        const auto records = run_single(cfg);
        const RunSummary summary = summarize(records);

        auto dir = [](const RunRecord& r) {
            return r.direction ? std::string(to_string(*r.direction)) : std::string("none");
        };
        if (common.format == "json") {
            json j;
            j["spec"] = spec_json(name(), entries());
            json rows = json::array();
            for (const auto& r : records) {
                json row;
                row["step"] = r.step;
                row["p_cex"] = r.p_cex;
                row["spot"] = r.spot;
                row["reserve_a"] = r.reserve_a;
                row["reserve_b"] = r.reserve_b;
                row["triggered"] = r.triggered;
                row["direction"] = dir(r);
                row["flashloan"] = r.flashloan;
                row["arb_profit"] = r.arb_profit;
                row["fee_revenue"] = r.fee_revenue;
                row["cum_fee_revenue"] = r.cum_fee_revenue;
                rows.push_back(std::move(row));
            }
            j["records"] = std::move(rows);
            json s;
            s["trigger_count"] = summary.trigger_count;
            s["total_revenue"] = summary.total_revenue;
            s["total_arb_profit"] = summary.total_arb_profit;
            s["mean_gap"] = summary.mean_gap ? json(*summary.mean_gap) : json();
            j["summary"] = std::move(s);
            return {j.dump(2) + "\n"};
        }
        std::string body = spec_comment(name(), entries()) + "\n";
        body += "step,p_cex,spot,reserve_a,reserve_b,triggered,direction,flashloan,arb_profit,"
                "fee_revenue,cum_fee_revenue\n";
        for (const auto& r : records) {
            body += csv_row({std::to_string(r.step), format_number(r.p_cex), format_number(r.spot),
                             format_number(r.reserve_a), format_number(r.reserve_b),
                             r.triggered ? "1" : "0", dir(r), format_number(r.flashloan),
                             format_number(r.arb_profit), format_number(r.fee_revenue),
                             format_number(r.cum_fee_revenue)});
        }
        return {std::move(body)};
    }

private:
    PathFlags path{100, 0.01};
    PoolFlags pool;
};

class FeeSweep final : public Command {
public:
    explicit FeeSweep(CLI::App* app) {
        common.add_to(app, true);
        path.add_to(app);
        pool.add_to(app, false);
        app->add_option("--fees", fees, "Comma-separated fee values (default: sigma x 0.1..4)")
            ->delimiter(',');
        app->add_option("--replicas", replicas, "Independent runs per fee");
    }

    std::string name() const override { return "fee-sweep"; }

    std::vector<double> fee_values() const {
        if (!fees.empty()) return fees;
        std::vector<double> out;
        for (double m : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) out.push_back(m * path.sigma);
        return out;
    }

    SpecEntries entries() const override {
        SpecEntries e;
        path.append(e);
        e.emplace_back("liquidity", format_number(pool.liquidity));
        e.emplace_back("flashloan-fee", format_number(pool.flashloan_fee));
        e.emplace_back("txn-cost", format_number(pool.txn_cost));
        e.emplace_back("fees", join_numbers(fee_values()));
        e.emplace_back("replicas", std::to_string(replicas));
        e.emplace_back("seed", std::to_string(common.seed));
        e.emplace_back("format", common.format);
        return e;
    }

    Output execute() override {
        const SimConfig cfg = make_sim_config(path, pool, common.seed);
        const auto fv = fee_values();
        const SweepStats stats = fee_sweep(cfg, fv, replicas, common.seed, common.threads);
        if (common.format == "json") {
            json j;
            j["spec"] = spec_json(name(), entries());
            json rows = json::array();
            for (const auto& r : stats.rows) {
                rows.push_back({{"fee", r.fee},
                                {"mean_revenue", r.mean_revenue},
                                {"stderr", r.std_error},
                                {"mean_triggers", r.mean_triggers},
                                {"replicas", r.replicas}});
            }
            j["rows"] = std::move(rows);
            return {j.dump(2) + "\n"};
        }
        std::string body = spec_comment(name(), entries()) + "\n";
        body += "fee,mean_revenue,stderr,mean_triggers,replicas\n";
        for (const auto& r : stats.rows) {
            body += csv_row({format_number(r.fee), format_number(r.mean_revenue),
                             format_number(r.std_error), format_number(r.mean_triggers),
                             std::to_string(r.replicas)});
        }
        return {std::move(body)};
    }

private:
    PathFlags path{1000, 0.001};
    PoolFlags pool;
    std::vector<double> fees;
    std::size_t replicas = 1000;
};

class Walk final : public Command {
public:
    explicit Walk(CLI::App* app) {
        common.add_to(app, false);
        app->add_option("--steps", steps, "Walk length");
        app->add_option("--k", k, "Trigger threshold (reward k^2)");
        app->add_option("--p-up", p_up, "Up-step probability");
    }

    std::string name() const override { return "walk"; }

    SpecEntries entries() const override {
        return {{"steps", std::to_string(steps)},
                {"k", std::to_string(k)},
                {"p-up", format_number(p_up)},
                {"seed", std::to_string(common.seed)},
                {"format", common.format}};
    }

    Output execute() override {
        const WalkResult w = simulate_walk({p_up, steps, k, common.seed});
        std::vector<bool> hit(w.levels.size(), false);
        for (auto t : w.trigger_steps) hit[t] = true;
        const double k2 = static_cast<double>(k) * k;

        if (common.format == "json") {
            json j;
            j["spec"] = spec_json(name(), entries());
            j["cumulative_reward"] = w.cumulative_reward;
            j["trigger_count"] = w.trigger_steps.size();
            j["levels"] = w.levels;
            j["trigger_steps"] = w.trigger_steps;
            j["inter_trigger_gaps"] = w.inter_trigger_gaps;
            return {j.dump(2) + "\n"};
        }
        std::string body = spec_comment(name(), entries()) + "\n";
        body += "step,level,triggered,cumulative_reward\n";
        double cum = 0.0;
        for (std::size_t t = 0; t < w.levels.size(); ++t) {
            if (hit[t]) cum += k2;
            body += csv_row({std::to_string(t), std::to_string(w.levels[t]), hit[t] ? "1" : "0",
                             format_number(cum)});
        }
        return {std::move(body)};
    }

private:
    std::size_t steps = 10000;
    int k = 1;
    double p_up = 0.5;
};

class WalkCompare final : public Command {
public:
    explicit WalkCompare(CLI::App* app) {
        common.add_to(app, true);
        app->add_option("--steps", steps, "Walk length");
        app->add_option("--replicas", replicas, "Walks per threshold");
        app->add_option("--k", ks, "Comma-separated thresholds")->delimiter(',');
        app->add_option("--p-up", p_up, "Up-step probability");
    }

    std::string name() const override { return "walk-compare"; }

    SpecEntries entries() const override {
        return {{"steps", std::to_string(steps)},
                {"replicas", std::to_string(replicas)},
                {"k", join_ints(ks)},
                {"p-up", format_number(p_up)},
                {"seed", std::to_string(common.seed)},
                {"format", common.format}};
    }

    Output execute() override {
        const auto rows = compare_strategies(steps, replicas, ks, common.seed, p_up, common.threads);
        if (common.format == "json") {
            json j;
            j["spec"] = spec_json(name(), entries());
            json arr = json::array();
            for (const auto& r : rows) {
                arr.push_back({{"k", r.k},
                               {"mean_reward", r.mean_reward},
                               {"stderr", r.std_error},
                               {"reward_rate", r.reward_rate},
                               {"rate_stderr", r.rate_std_error},
                               {"replicas", r.replicas}});
            }
            j["rows"] = std::move(arr);
            return {j.dump(2) + "\n"};
        }
        std::string body = spec_comment(name(), entries()) + "\n";
        body += "k,mean_reward,stderr,reward_rate,rate_stderr,replicas\n";
        for (const auto& r : rows) {
            body += csv_row({std::to_string(r.k), format_number(r.mean_reward),
                             format_number(r.std_error), format_number(r.reward_rate),
                             format_number(r.rate_std_error), std::to_string(r.replicas)});
        }
        return {std::move(body)};
    }

private:
    std::size_t steps = 10000;
    std::size_t replicas = 1000;
    std::vector<int> ks{1, 2};
    double p_up = 0.5;
};

struct Cli {
    CLI::App app{"Constant-product AMM arbitrage and fee experiments", "amm-lab"};
    std::vector<std::pair<CLI::App*, std::unique_ptr<Command>>> commands;

    Cli() {
        app.require_subcommand(1);
        add<ArbQuote>("arb-quote", "Optimal arbitrage closed forms vs numeric oracle");
        add<Simulate>("simulate", "Single AMM vs CEX arbitrage run");
        add<FeeSweep>("fee-sweep", "Mean fee revenue across fee values");
        add<Walk>("walk", "Random walk with threshold-k rewards");
        add<WalkCompare>("walk-compare", "Mean reward per threshold k");
    }

    template <typename C>
    void add(const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, std::make_unique<C>(sub));
    }

    void parse(std::vector<std::string> args) {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    }

    std::pair<CLI::App*, Command*> active() {
        for (auto& [sub, cmd] : commands) {
            if (sub->parsed()) return {sub, cmd.get()};
        }
        throw std::logic_error("no subcommand parsed");
    }
};

// Config-file entries go in front of the command line so explicit flags
// win; keys already given as flags are dropped.
std::vector<std::string> merge_config(Cli& first, const std::vector<std::string>& args) {
    auto [sub, cmd] = first.active();
    if (cmd->common.config_path.empty()) return args;
    const SpecEntries entries = read_config_file(cmd->common.config_path);

    std::vector<std::string> merged;
    auto it = std::find(args.begin(), args.end(), sub->get_name());
    merged.insert(merged.end(), args.begin(), it + 1);
    for (const auto& [key, value] : entries) {
        if (key == "config") throw std::invalid_argument("config files cannot nest");
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw std::invalid_argument("unknown config key '" + key + "' for " + sub->get_name());
        }
        if (opt->count() == 0) merged.push_back("--" + key + "=" + value);
    }
    merged.insert(merged.end(), it + 1, args.end());
    return merged;
}

void emit(const Common& c, const std::string& body, std::ostream& out) {
    if (c.out_path.empty()) {
        out << body;
        out.flush();
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file '" + c.out_path + "'");
    f << body;
    if (!f) throw std::runtime_error("failed writing '" + c.out_path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto cli = std::make_unique<Cli>();
    try {
        cli->parse(args);
        const auto merged = merge_config(*cli, args);
        if (merged != args) {
            cli = std::make_unique<Cli>();
            cli->parse(merged);
        }
    } catch (const CLI::CallForHelp&) {
        out << cli->app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "amm-lab: " << e.what() << "\n";
        return kValidationError;
    } catch (const std::invalid_argument& e) {
        err << "amm-lab: " << e.what() << "\n";
        return kValidationError;
    }

    Command* cmd = cli->active().second;
    try {
        const Output result = cmd->execute();
        emit(cmd->common, result.body, out);
        if (result.exit_code == kNoArbitrage) {
            err << "amm-lab: no arbitrage: mismatch below threshold\n";
        }
        return result.exit_code;
    } catch (const no_arbitrage_error& e) {
        err << "amm-lab: no arbitrage: " << e.what() << "\n";
        return kNoArbitrage;
    } catch (const std::invalid_argument& e) {
        err << "amm-lab: " << e.what() << "\n";
        return kValidationError;
    } catch (const std::exception& e) {
        err << "amm-lab: " << e.what() << "\n";
        return kRuntimeError;
    }
}

}  // namespace amm_lab::cli
