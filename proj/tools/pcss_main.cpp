// Command-line front end. Links the C API only; everything here is argument
// plumbing, fixtures, and file I/O.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcss/capi.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void bail(pcss_status status) {
    int code = status == PCSS_ERR_TOO_LARGE ? kExitInfeasible : kExitInput;
    throw CliError{code, std::string(pcss_status_name(status)) + ": " + pcss_last_error()};
}

void check(pcss_status status) {
    if (status != PCSS_OK) {
        bail(status);
    }
}

std::string take_string(char* ptr) {
    std::string out = ptr == nullptr ? "" : ptr;
    pcss_string_free(ptr);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        throw CliError{kExitInput, "cannot read " + path};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (!path) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out.good()) {
        throw CliError{kExitInput, "cannot write " + *path};
    }
    out << content;
}

int default_threads() {
    if (const char* env = std::getenv("PCSS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) {
            return v;
        }
    }
    return 1;
}

// ---- shared option groups --------------------------------------------------

struct CodeOpts {
    std::string code = "hamming7";
    std::string format = "auto";  // auto | parity | generator | alist

    void attach(CLI::App* app) {
        app->add_option("--code", code,
                        "classical code: 'hamming7' or a file path (matrix text / .alist)")
            ->capture_default_str();
        app->add_option("--code-format", format,
                        "how to read --code files: auto|parity|generator|alist")
            ->check(CLI::IsMember({"auto", "parity", "generator", "alist"}))
            ->capture_default_str();
    }

    pcss_code* load() const {
        pcss_code* out = nullptr;
        if (code == "hamming7") {
            check(pcss_code_hamming7(&out));
            return out;
        }
        std::string text = read_file(code);
        std::string fmt = format;
        if (fmt == "auto") {
            fmt = code.ends_with(".alist") ? "alist" : "parity";
        }
        if (fmt == "alist") {
            check(pcss_code_from_alist(text.c_str(), &out));
        } else if (fmt == "generator") {
            check(pcss_code_from_generator(text.c_str(), &out));
        } else {
            check(pcss_code_from_parity(text.c_str(), &out));
        }
        return out;
    }

    json echo() const { return json{{"code", code}, {"format", format}}; }
};

struct HashOpts {
    std::string hash;  // named fixture or JSON file path
    std::string field = "4";
    std::string a;
    std::string b = "0";
    int m = 1;
    bool random = false;
    std::uint64_t seed = 0;

    void attach(CLI::App* app) {
        app->add_option("--hash", hash,
                        "hash fixture ('steane-hash', 'zeta-hash') or JSON file path");
        app->add_option("--field", field, "field spec: k or k:modulus-bits (low degree first)")
            ->capture_default_str();
        app->add_option("--a", a, "field element: zeta, zeta^P, 1, or a coefficient string");
        app->add_option("--b", b, "constant term of the hash (same syntax as --a)")
            ->capture_default_str();
        app->add_option("--m", m, "number of output bits")->capture_default_str();
        app->add_flag("--random-hash", random, "sample (a, b) uniformly from the family");
        app->add_option("--seed", seed, "seed for --random-hash")->capture_default_str();
    }

    pcss_hash* load() const {
        pcss_hash* out = nullptr;
        if (hash == "steane-hash") {
            check(pcss_hash_from_field("4", "zeta^-2", "0", 1, &out));
        } else if (hash == "zeta-hash") {
            check(pcss_hash_from_field("4", "zeta", "0", 1, &out));
        } else if (!hash.empty()) {
            std::string text = read_file(hash);
            check(pcss_hash_from_json(text.c_str(), &out));
        } else if (random) {
            check(pcss_hash_sample(field.c_str(), m, seed, &out));
        } else if (!a.empty()) {
            check(pcss_hash_from_field(field.c_str(), a.c_str(), b.c_str(), m, &out));
        } else {
            throw CliError{kExitInput,
                           "specify a hash: --hash NAME, --a ELEMENT, or --random-hash"};
        }
        return out;
    }

    json echo() const {
        json j{{"field", field}, {"m", m}};
        if (!hash.empty()) {
            j["hash"] = hash;
        }
        if (!a.empty()) {
            j["a"] = a;
            j["b"] = b;
        }
        if (random) {
            j["random_hash"] = true;
            j["seed"] = seed;
        }
        return j;
    }
};

struct ChannelOpts {
    std::string channel = "depolarizing:0.1";

    void attach(CLI::App* app) {
        app->add_option("--channel", channel,
                        "channel: depolarizing:P or pauli:pI,pX,pY,pZ")
            ->capture_default_str();
    }

    std::vector<double> probs() const {
        auto colon = channel.find(':');
        if (colon == std::string::npos) {
            throw CliError{kExitInput, "channel spec needs a ':', got " + channel};
        }
        std::string kind = channel.substr(0, colon);
        std::string args = channel.substr(colon + 1);
        try {
            if (kind == "depolarizing") {
                double p = std::stod(args);
                return {1.0 - p, p / 3.0, p / 3.0, p / 3.0};
            }
            if (kind == "pauli") {
                std::vector<double> p;
                std::istringstream in(args);
                std::string tok;
                while (std::getline(in, tok, ',')) {
                    p.push_back(std::stod(tok));
                }
                if (p.size() != 4) {
                    throw CliError{kExitInput, "pauli channel needs 4 probabilities"};
                }
                return p;
            }
        } catch (const std::invalid_argument&) {
            throw CliError{kExitInput, "bad number in channel spec: " + channel};
        }
        throw CliError{kExitInput, "unknown channel kind: " + channel};
    }

    pcss_channel* load(int n) const {
        std::vector<double> p = probs();
        pcss_channel* out = nullptr;
        check(pcss_channel_create(p[0], p[1], p[2], p[3], n, &out));
        return out;
    }

    double bitflip_marginal() const {
        std::vector<double> p = probs();
        return p[1] + p[2];  // X + Y
    }

    json echo() const { return json{{"channel", channel}}; }
};

json embed_config(const std::string& payload, json config) {
    json j = json::parse(payload);
    j["config"] = std::move(config);
    return j;
}

std::string with_config_line(const std::string& payload, const json& config) {
    return "# config: " + config.dump() + "\n" + payload;
}

// ---- subcommands -------------------------------------------------------------

struct ConstructCmd {
    CodeOpts code;
    HashOpts hash;
    bool canonical = false;
    std::optional<std::string> output;

    int run(const std::string& name) {
        pcss_code* c = code.load();
        pcss_hash* h = hash.load();
        pcss_qcode* q = nullptr;
        pcss_status st = pcss_qcode_construct(c, h, &q);
        if (st != PCSS_OK) {
            pcss_code_free(c);
            pcss_hash_free(h);
            bail(st);
        }
        char* stabs_ptr = nullptr;
        check(pcss_qcode_stabilizers(q, canonical ? 1 : 0, &stabs_ptr));
        std::string stabs = take_string(stabs_ptr);
        char* json_ptr = nullptr;
        check(pcss_qcode_to_json(q, &json_ptr));

        json config = {{"subcommand", name}, {"canonical", canonical}};
        config.update(code.echo());
        config.update(hash.echo());
        json out = embed_config(take_string(json_ptr), config);
        out["stabilizers_text"] = stabs;

        std::cout << stabs;
        if (output) {
            write_output(output, out.dump(2) + "\n");
        }

        pcss_qcode_free(q);
        pcss_hash_free(h);
        pcss_code_free(c);
        return kExitOk;
    }
};

struct DistanceCmd {
    CodeOpts code;
    HashOpts hash;
    std::optional<std::string> output;

    int run(const std::string& name) {
        pcss_code* c = code.load();
        pcss_hash* h = hash.load();
        pcss_qcode* q = nullptr;
        pcss_status st = pcss_qcode_construct(c, h, &q);
        std::string payload;
        if (st == PCSS_OK) {
            char* ptr = nullptr;
            st = pcss_qcode_distance(q, &ptr);
            if (st == PCSS_OK) {
                payload = take_string(ptr);
            }
        }
        pcss_qcode_free(q);
        pcss_hash_free(h);
        pcss_code_free(c);
        if (st != PCSS_OK) {
            bail(st);
        }
        json config = {{"subcommand", name}};
        config.update(code.echo());
        config.update(hash.echo());
        write_output(output, embed_config(payload, config).dump(2) + "\n");
        return kExitOk;
    }
};

struct BoundsCmd {
    ChannelOpts channel;
    int n = 0, k = 0, m = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::string mode = "asymptotic";
    std::string preset;
    std::optional<std::string> output;

    void apply_preset() {
        if (preset.empty()) {
            return;
        }
        if (preset != "gallager-paper") {
            throw CliError{kExitInput, "unknown preset: " + preset};
        }
        n = 19839;
        k = 9839;
        epsilon = 2.62e-5;
        channel.channel = "depolarizing:0.114";
    }

    int run(const std::string& name) {
        apply_preset();
        pcss_channel* ch = channel.load(n);
        char* ptr = nullptr;
        pcss_status st = pcss_bounds_point(ch, n, k, m, epsilon, mode.c_str(), delta, &ptr);
        pcss_channel_free(ch);
        if (st != PCSS_OK) {
            bail(st);
        }
        json config = {{"subcommand", name},   {"n", n},       {"k", k},      {"m", m},
                       {"epsilon", epsilon},   {"mode", mode}, {"delta", delta}};
        config.update(channel.echo());
        write_output(output, embed_config(take_string(ptr), config).dump(2) + "\n");
        return kExitOk;
    }
};

struct CurveCmd {
    ChannelOpts channel;
    int n = 0, k = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    int points = 200;
    std::string mode = "asymptotic";
    std::string preset;
    std::optional<std::string> output;

    int run(const std::string& name) {
        if (!preset.empty()) {
            if (preset != "gallager-paper") {
                throw CliError{kExitInput, "unknown preset: " + preset};
            }
            n = 19839;
            k = 9839;
            epsilon = 2.62e-5;
            channel.channel = "depolarizing:0.114";
        }
        pcss_channel* ch = channel.load(n);
        char* ptr = nullptr;
        pcss_status st = pcss_rate_curve(ch, n, k, epsilon, mode.c_str(), delta, points, &ptr);
        pcss_channel_free(ch);
        if (st != PCSS_OK) {
            bail(st);
        }
        json config = {{"subcommand", name}, {"n", n},         {"k", k},
                       {"epsilon", epsilon}, {"mode", mode},   {"points", points},
                       {"delta", delta}};
        config.update(channel.echo());
        write_output(output, with_config_line(take_string(ptr), config));
        return kExitOk;
    }
};

struct SimulateCmd {
    CodeOpts code;
    HashOpts hash;
    ChannelOpts channel;
    bool exhaustive = false;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int threads = default_threads();
    std::string bound_mode = "asymptotic";
    double classical_epsilon = -1.0;  // < 0: derive from the code
    std::optional<std::string> output;

    int run(const std::string& name) {
        pcss_code* c = code.load();
        pcss_hash* h = hash.load();
        pcss_qcode* q = nullptr;
        pcss_status st = pcss_qcode_construct(c, h, &q);
        if (st != PCSS_OK) {
            pcss_code_free(c);
            pcss_hash_free(h);
            bail(st);
        }
        pcss_channel* ch = channel.load(pcss_code_n(c));

        double eps = classical_epsilon;
        const char* mode_ptr = bound_mode == "none" ? nullptr : bound_mode.c_str();
        if (eps < 0.0 && mode_ptr != nullptr) {
            // derive the classical block-error probability of the bit-flip
            // side with the exact leader-decoder accounting
            char* stats_ptr = nullptr;
            pcss_status est = pcss_code_epsilon_exact(c, channel.bitflip_marginal(), "leader",
                                                      0, 1, &stats_ptr);
            if (est != PCSS_OK) {
                throw CliError{kExitInput,
                               "cannot derive the classical epsilon for this code size; "
                               "pass --classical-epsilon"};
            }
            eps = json::parse(take_string(stats_ptr))["epsilon"].get<double>();
        }

        char* ptr = nullptr;
        if (exhaustive) {
            st = pcss_simulate_exhaustive(q, ch, eps < 0 ? 0.0 : eps, mode_ptr, &ptr);
        } else {
            st = pcss_simulate_monte_carlo(q, ch, trials, seed, threads, eps < 0 ? 0.0 : eps,
                                           mode_ptr, &ptr);
        }
        pcss_channel_free(ch);
        pcss_qcode_free(q);
        pcss_hash_free(h);
        pcss_code_free(c);
        if (st != PCSS_OK) {
            bail(st);
        }
        json config = {{"subcommand", name},  {"exhaustive", exhaustive},
                       {"trials", trials},    {"sim_seed", seed},
                       {"threads", threads},  {"bound_mode", bound_mode},
                       {"classical_epsilon", eps}};
        config.update(code.echo());
        config.update(hash.echo());
        config.update(channel.echo());
        write_output(output, embed_config(take_string(ptr), config).dump(2) + "\n");
        return kExitOk;
    }
};

struct EpsilonCmd {
    CodeOpts code;
    double flip_prob = 0.076;
    std::string decoder = "leader";
    int bp_max_iters = 100;
    bool monte_carlo = false;
    bool undetected_only = false;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int threads = default_threads();
    std::optional<std::string> output;

    int run(const std::string& name) {
        pcss_code* c = code.load();
        char* ptr = nullptr;
        pcss_status st;
        int include_detected = undetected_only ? 0 : 1;
        if (monte_carlo) {
            st = pcss_code_epsilon_monte_carlo(c, flip_prob, decoder.c_str(), bp_max_iters,
                                               include_detected, trials, seed, threads, &ptr);
        } else {
            st = pcss_code_epsilon_exact(c, flip_prob, decoder.c_str(), bp_max_iters,
                                         include_detected, &ptr);
        }
        pcss_code_free(c);
        if (st != PCSS_OK) {
            bail(st);
        }
        json config = {{"subcommand", name}, {"flip_prob", flip_prob},
                       {"decoder", decoder}, {"monte_carlo", monte_carlo},
                       {"trials", trials},   {"mc_seed", seed},
                       {"threads", threads}, {"undetected_only", undetected_only}};
        config.update(code.echo());
        write_output(output, embed_config(take_string(ptr), config).dump(2) + "\n");
        return kExitOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"P-CSS quantum codes: construction, bounds, and simulation"};
    app.require_subcommand(1);

    ConstructCmd construct_cmd;
    auto* construct =
        app.add_subcommand("construct", "build a P-CSS code and print its stabilizers");
    construct_cmd.code.attach(construct);
    construct_cmd.hash.attach(construct);
    construct->add_flag("--canonical", construct_cmd.canonical,
                        "echelonize the stabilizer generator sets");
    construct->add_option("--output", construct_cmd.output, "write the code descriptor JSON");

    DistanceCmd distance_cmd;
    auto* distance = app.add_subcommand("distance", "exact distance of a P-CSS code");
    distance_cmd.code.attach(distance);
    distance_cmd.hash.attach(distance);
    distance->add_option("--output", distance_cmd.output, "write the distance report JSON");

    BoundsCmd bounds_cmd;
    auto* bounds = app.add_subcommand("bounds", "privacy-amplification error bound at a point");
    bounds_cmd.channel.attach(bounds);
    bounds->add_option("--n", bounds_cmd.n, "block length");
    bounds->add_option("--k", bounds_cmd.k, "classical code dimension");
    bounds->add_option("--m", bounds_cmd.m, "logical qubits");
    bounds->add_option("--epsilon", bounds_cmd.epsilon, "classical block-error probability");
    bounds->add_option("--delta", bounds_cmd.delta, "smoothing parameter (smooth mode)");
    bounds->add_option("--mode", bounds_cmd.mode, "exact|asymptotic|smooth")
        ->capture_default_str();
    bounds->add_option("--preset", bounds_cmd.preset, "named parameter set: gallager-paper");
    bounds->add_option("--output", bounds_cmd.output, "write the bound JSON");

    CurveCmd curve_cmd;
    auto* curve = app.add_subcommand("curve", "eta vs quantum code rate as CSV");
    curve_cmd.channel.attach(curve);
    curve->add_option("--n", curve_cmd.n, "block length");
    curve->add_option("--k", curve_cmd.k, "classical code dimension");
    curve->add_option("--epsilon", curve_cmd.epsilon, "classical block-error probability");
    curve->add_option("--delta", curve_cmd.delta, "smoothing parameter (smooth mode)");
    curve->add_option("--points", curve_cmd.points, "grid size over (0, k/n]")
        ->capture_default_str();
    curve->add_option("--mode", curve_cmd.mode, "exact|asymptotic|smooth")
        ->capture_default_str();
    curve->add_option("--preset", curve_cmd.preset, "named parameter set: gallager-paper");
    curve->add_option("--output", curve_cmd.output, "write the CSV");

    SimulateCmd simulate_cmd;
    simulate_cmd.channel.channel = "depolarizing:0.01";
    auto* simulate = app.add_subcommand("simulate", "logical error rate of a P-CSS code");
    simulate_cmd.code.attach(simulate);
    simulate_cmd.hash.attach(simulate);
    simulate_cmd.channel.attach(simulate);
    simulate->add_flag("--exhaustive", simulate_cmd.exhaustive,
                       "sum all 4^n error patterns instead of sampling");
    simulate->add_option("--trials", simulate_cmd.trials, "Monte Carlo trials")
        ->capture_default_str();
    simulate->add_option("--sim-seed", simulate_cmd.seed, "Monte Carlo master seed")
        ->capture_default_str();
    simulate->add_option("--threads", simulate_cmd.threads,
                         "worker threads (default: PCSS_THREADS or 1)");
    simulate->add_option("--bound-mode", simulate_cmd.bound_mode,
                         "eta mode for the comparison: exact|asymptotic|smooth|none")
        ->capture_default_str();
    simulate->add_option("--classical-epsilon", simulate_cmd.classical_epsilon,
                         "classical block-error probability for the bound (default: derived)");
    simulate->add_option("--output", simulate_cmd.output, "write the report JSON");

    EpsilonCmd epsilon_cmd;
    auto* epsilon = app.add_subcommand("epsilon", "classical bit-flip block-error statistics");
    epsilon_cmd.code.attach(epsilon);
    epsilon->add_option("--flip-prob", epsilon_cmd.flip_prob, "bit-flip probability")
        ->capture_default_str();
    epsilon->add_option("--decoder", epsilon_cmd.decoder, "leader|bp")->capture_default_str();
    epsilon->add_option("--bp-max-iters", epsilon_cmd.bp_max_iters, "BP iteration cap")
        ->capture_default_str();
    epsilon->add_flag("--mc", epsilon_cmd.monte_carlo, "Monte Carlo instead of exact");
    epsilon->add_flag("--undetected-only", epsilon_cmd.undetected_only,
                      "count only undetected failures");
    epsilon->add_option("--trials", epsilon_cmd.trials, "Monte Carlo trials")
        ->capture_default_str();
    epsilon->add_option("--mc-seed", epsilon_cmd.seed, "Monte Carlo master seed")
        ->capture_default_str();
    epsilon->add_option("--threads", epsilon_cmd.threads,
                        "worker threads (default: PCSS_THREADS or 1)");
    epsilon->add_option("--output", epsilon_cmd.output, "write the stats JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (construct->parsed()) {
            return construct_cmd.run("construct");
        }
        if (distance->parsed()) {
            return distance_cmd.run("distance");
        }
        if (bounds->parsed()) {
            return bounds_cmd.run("bounds");
        }
        if (curve->parsed()) {
            return curve_cmd.run("curve");
        }
        if (simulate->parsed()) {
            return simulate_cmd.run("simulate");
        }
        if (epsilon->parsed()) {
            return epsilon_cmd.run("epsilon");
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
