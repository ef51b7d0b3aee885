#include "pcss/capi.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "pcss/bounds.hpp"
#include "pcss/error.hpp"
#include "pcss/gf2k.hpp"
#include "pcss/linear_code.hpp"
#include "pcss/pcss_code.hpp"
#include "pcss/serialize.hpp"
#include "pcss/sim.hpp"

struct pcss_code {
    pcss::LinearCode impl;
};
struct pcss_hash {
    pcss::HashRealization impl;
};
struct pcss_qcode {
    pcss::PcssCode impl;
};
struct pcss_channel {
    pcss::SingleQubitPauli single;
    std::size_t n;
};

namespace {

thread_local std::string g_last_error;

pcss_status status_from(pcss::ErrorCode code) {
    switch (code) {
        case pcss::ErrorCode::InvalidArgument:
            return PCSS_ERR_INVALID_ARGUMENT;
        case pcss::ErrorCode::DimensionMismatch:
            return PCSS_ERR_DIMENSION_MISMATCH;
        case pcss::ErrorCode::RankDeficient:
            return PCSS_ERR_RANK_DEFICIENT;
        case pcss::ErrorCode::TooLarge:
            return PCSS_ERR_TOO_LARGE;
        case pcss::ErrorCode::ParseError:
            return PCSS_ERR_PARSE;
    }
    return PCSS_ERR_INTERNAL;
}

template <typename Fn>
pcss_status guard(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return PCSS_OK;
    } catch (const pcss::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PCSS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return PCSS_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) {
        std::memcpy(out, s.c_str(), s.size() + 1);
    }
    return out;
}

void require_ptr(const void* p, const char* what) {
    pcss::require(p != nullptr, pcss::ErrorCode::InvalidArgument,
                  std::string(what) + " must not be null");
}

pcss::FieldSpec parse_field_spec_arg(const char* field_spec) {
    require_ptr(field_spec, "field spec");
    std::string text(field_spec);
    if (text.find(':') == std::string::npos) {
        int k = 0;
        try {
            k = std::stoi(text);
        } catch (...) {
            pcss::fail(pcss::ErrorCode::ParseError, "field spec: expected \"k\" or \"k:bits\"");
        }
        return pcss::FieldSpec::with_default_modulus(k);
    }
    return pcss::FieldSpec::parse(text);
}

pcss::BoundInputs make_inputs(const pcss_channel* channel, int n, int k, int m, double epsilon,
                              double delta) {
    require_ptr(channel, "channel");
    pcss::require(n >= 1 && k >= 0 && m >= 0, pcss::ErrorCode::InvalidArgument,
                  "n, k, m must be nonnegative (n >= 1)");
    pcss::BoundInputs inp;
    inp.n = static_cast<std::size_t>(n);
    inp.k = static_cast<std::size_t>(k);
    inp.m = static_cast<std::size_t>(m);
    inp.epsilon = epsilon;
    inp.channel = channel->single;
    inp.delta = delta;
    return inp;
}

const pcss::SyndromeDecoder* make_decoder(const pcss::LinearCode& code, const char* name,
                                          double flip_prob, int bp_max_iters,
                                          std::unique_ptr<pcss::SyndromeDecoder>& holder) {
    std::string decoder = name == nullptr ? "leader" : name;
    if (decoder == "leader") {
        holder = std::make_unique<pcss::CosetLeaderTable>(pcss::CosetLeaderTable::build(code));
    } else if (decoder == "bp") {
        holder = std::make_unique<pcss::BpDecoder>(code, flip_prob,
                                                   bp_max_iters > 0 ? bp_max_iters : 100);
    } else {
        pcss::fail(pcss::ErrorCode::InvalidArgument,
                   "decoder must be \"leader\" or \"bp\", got \"" + decoder + "\"");
    }
    return holder.get();
}

}  // namespace

extern "C" {

const char* pcss_status_name(pcss_status status) {
    switch (status) {
        case PCSS_OK:
            return "ok";
        case PCSS_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case PCSS_ERR_DIMENSION_MISMATCH:
            return "dimension mismatch";
        case PCSS_ERR_RANK_DEFICIENT:
            return "rank deficient";
        case PCSS_ERR_TOO_LARGE:
            return "instance too large";
        case PCSS_ERR_PARSE:
            return "parse error";
        case PCSS_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown";
}

const char* pcss_last_error(void) {
    return g_last_error.c_str();
}

void pcss_string_free(char* str) {
    std::free(str);
}

pcss_status pcss_code_from_generator(const char* text, pcss_code** out) {
    return guard([&] {
        require_ptr(text, "text");
        require_ptr(out, "out");
        *out = new pcss_code{pcss::LinearCode::from_generator(pcss::BitMatrix::from_text(text))};
    });
}

pcss_status pcss_code_from_parity(const char* text, pcss_code** out) {
    return guard([&] {
        require_ptr(text, "text");
        require_ptr(out, "out");
        *out = new pcss_code{pcss::LinearCode::from_parity(pcss::BitMatrix::from_text(text))};
    });
}

pcss_status pcss_code_from_alist(const char* text, pcss_code** out) {
    return guard([&] {
        require_ptr(text, "text");
        require_ptr(out, "out");
        *out = new pcss_code{pcss::LinearCode::from_parity(pcss::load_alist(text))};
    });
}

pcss_status pcss_code_hamming7(pcss_code** out) {
    return guard([&] {
        require_ptr(out, "out");
        *out = new pcss_code{pcss::LinearCode::hamming7()};
    });
}

void pcss_code_free(pcss_code* code) {
    delete code;
}

int pcss_code_n(const pcss_code* code) {
    return code == nullptr ? -1 : static_cast<int>(code->impl.n());
}

int pcss_code_k(const pcss_code* code) {
    return code == nullptr ? -1 : static_cast<int>(code->impl.k());
}

pcss_status pcss_code_epsilon_exact(const pcss_code* code, double flip_prob,
                                    const char* decoder, int bp_max_iters,
                                    int include_detected, char** json_out) {
    return guard([&] {
        require_ptr(code, "code");
        require_ptr(json_out, "json_out");
        std::unique_ptr<pcss::SyndromeDecoder> holder;
        const pcss::SyndromeDecoder* dec =
            make_decoder(code->impl, decoder, flip_prob, bp_max_iters, holder);
        pcss::BitflipStats stats =
            pcss::epsilon_exact(code->impl, *dec, flip_prob, include_detected != 0);
        *json_out = dup_string(pcss::stats_to_json(stats));
    });
}

pcss_status pcss_code_epsilon_monte_carlo(const pcss_code* code, double flip_prob,
                                          const char* decoder, int bp_max_iters,
                                          int include_detected, uint64_t trials, uint64_t seed,
                                          int threads, char** json_out) {
    return guard([&] {
        require_ptr(code, "code");
        require_ptr(json_out, "json_out");
        std::unique_ptr<pcss::SyndromeDecoder> holder;
        const pcss::SyndromeDecoder* dec =
            make_decoder(code->impl, decoder, flip_prob, bp_max_iters, holder);
        pcss::BitflipStats stats = pcss::epsilon_monte_carlo(
            code->impl, *dec, flip_prob, trials, seed, threads, include_detected != 0);
        *json_out = dup_string(pcss::stats_to_json(stats));
    });
}

pcss_status pcss_hash_from_field(const char* field_spec, const char* a_text,
                                 const char* b_text, int m, pcss_hash** out) {
    return guard([&] {
        require_ptr(a_text, "a");
        require_ptr(out, "out");
        pcss::FieldSpec spec = parse_field_spec_arg(field_spec);
        pcss::FieldElement a = pcss::parse_field_element(spec, a_text);
        pcss::FieldElement b =
            b_text == nullptr ? 0 : pcss::parse_field_element(spec, b_text);
        *out = new pcss_hash{pcss::HashRealization::from_field(spec, a, b, m)};
    });
}

pcss_status pcss_hash_sample(const char* field_spec, int m, uint64_t seed, pcss_hash** out) {
    return guard([&] {
        require_ptr(out, "out");
        pcss::FieldSpec spec = parse_field_spec_arg(field_spec);
        *out = new pcss_hash{pcss::sample_hash(spec, m, seed)};
    });
}

pcss_status pcss_hash_from_json(const char* json_text, pcss_hash** out) {
    return guard([&] {
        require_ptr(json_text, "json");
        require_ptr(out, "out");
        *out = new pcss_hash{pcss::hash_from_json(json_text)};
    });
}

pcss_status pcss_hash_to_json(const pcss_hash* hash, char** json_out) {
    return guard([&] {
        require_ptr(hash, "hash");
        require_ptr(json_out, "json_out");
        *json_out = dup_string(pcss::hash_to_json(hash->impl));
    });
}

void pcss_hash_free(pcss_hash* hash) {
    delete hash;
}

pcss_status pcss_qcode_construct(const pcss_code* code, const pcss_hash* hash,
                                 pcss_qcode** out) {
    return guard([&] {
        require_ptr(code, "code");
        require_ptr(hash, "hash");
        require_ptr(out, "out");
        *out = new pcss_qcode{pcss::construct(code->impl, hash->impl)};
    });
}

void pcss_qcode_free(pcss_qcode* qcode) {
    delete qcode;
}

pcss_status pcss_qcode_stabilizers(const pcss_qcode* qcode, int canonical, char** text_out) {
    return guard([&] {
        require_ptr(qcode, "qcode");
        require_ptr(text_out, "text_out");
        std::string text;
        for (const std::string& s : pcss::stabilizer_strings(qcode->impl, canonical != 0)) {
            text += s;
            text += '\n';
        }
        *text_out = dup_string(text);
    });
}

pcss_status pcss_qcode_to_json(const pcss_qcode* qcode, char** json_out) {
    return guard([&] {
        require_ptr(qcode, "qcode");
        require_ptr(json_out, "json_out");
        *json_out = dup_string(pcss::qcode_to_json(qcode->impl));
    });
}

pcss_status pcss_qcode_verify(const pcss_qcode* qcode, char** json_out) {
    return guard([&] {
        require_ptr(qcode, "qcode");
        require_ptr(json_out, "json_out");
        *json_out = dup_string(pcss::css_report_to_json(pcss::verify_css(qcode->impl)));
    });
}

pcss_status pcss_qcode_distance(const pcss_qcode* qcode, char** json_out) {
    return guard([&] {
        require_ptr(qcode, "qcode");
        require_ptr(json_out, "json_out");
        *json_out = dup_string(pcss::distance_to_json(pcss::distance(qcode->impl)));
    });
}

pcss_status pcss_channel_create(double p_i, double p_x, double p_y, double p_z, int n,
                                pcss_channel** out) {
    return guard([&] {
        require_ptr(out, "out");
        pcss::require(n >= 1, pcss::ErrorCode::InvalidArgument, "channel width must be >= 1");
        *out = new pcss_channel{pcss::SingleQubitPauli::from_probs(p_i, p_x, p_y, p_z),
                                static_cast<std::size_t>(n)};
    });
}

pcss_status pcss_channel_depolarizing(double p, int n, pcss_channel** out) {
    return guard([&] {
        require_ptr(out, "out");
        pcss::require(n >= 1, pcss::ErrorCode::InvalidArgument, "channel width must be >= 1");
        *out = new pcss_channel{pcss::SingleQubitPauli::depolarizing(p),
                                static_cast<std::size_t>(n)};
    });
}

void pcss_channel_free(pcss_channel* channel) {
    delete channel;
}

pcss_status pcss_channel_entropies(const pcss_channel* channel, char** json_out) {
    return guard([&] {
        require_ptr(channel, "channel");
        require_ptr(json_out, "json_out");
        pcss::ChannelEntropies ent =
            pcss::compute_entropies(pcss::PauliChannelIID{channel->single, channel->n});
        *json_out = dup_string(
            pcss::entropies_to_json(ent, &channel->single));
    });
}

pcss_status pcss_bounds_point(const pcss_channel* channel, int n, int k, int m, double epsilon,
                              const char* mode, double delta, char** json_out) {
    return guard([&] {
        require_ptr(mode, "mode");
        require_ptr(json_out, "json_out");
        pcss::BoundInputs inp = make_inputs(channel, n, k, m, epsilon, delta);
        pcss::EtaResult point = pcss::bound_point(inp, pcss::bound_mode_from_string(mode));
        *json_out = dup_string(pcss::bound_to_json(point));
    });
}

pcss_status pcss_rate_curve(const pcss_channel* channel, int n, int k, double epsilon,
                            const char* mode, double delta, int points, char** csv_out) {
    return guard([&] {
        require_ptr(channel, "channel");
        require_ptr(mode, "mode");
        require_ptr(csv_out, "csv_out");
        pcss::require(points >= 1, pcss::ErrorCode::InvalidArgument, "points must be >= 1");
        pcss::BoundMode bmode = pcss::bound_mode_from_string(mode);
        std::vector<double> grid = pcss::uniform_rate_grid(
            static_cast<std::size_t>(n), static_cast<std::size_t>(k),
            static_cast<std::size_t>(points));
        std::vector<pcss::RatePoint> curve =
            pcss::rate_curve(channel->single, static_cast<std::size_t>(n),
                             static_cast<std::size_t>(k), epsilon, grid, bmode, delta);
        *csv_out = dup_string(pcss::rate_curve_to_csv(curve, bmode));
    });
}

namespace {

void simulate_impl(const pcss_qcode* qcode, const pcss_channel* channel, bool exhaustive,
                   uint64_t trials, uint64_t seed, int threads, double classical_epsilon,
                   const char* bounds_mode, char** json_out) {
    require_ptr(qcode, "qcode");
    require_ptr(channel, "channel");
    require_ptr(json_out, "json_out");
    pcss::PauliChannelIID ch{channel->single, channel->n};
    pcss::PauliFrameContext ctx = pcss::PauliFrameContext::build(qcode->impl);
    pcss::LogicalErrorReport report =
        exhaustive ? pcss::logical_error_exhaustive(qcode->impl, ch, ctx)
                   : pcss::logical_error_mc(qcode->impl, ch, ctx, trials, seed, threads);
    if (bounds_mode == nullptr) {
        *json_out = dup_string(pcss::sim_report_to_json(report));
        return;
    }
    pcss::BoundInputs inp;
    inp.n = qcode->impl.n();
    inp.k = qcode->impl.k();
    inp.m = qcode->impl.m();
    inp.epsilon = classical_epsilon;
    inp.channel = channel->single;
    pcss::EtaResult bound = pcss::bound_point(inp, pcss::bound_mode_from_string(bounds_mode));
    pcss::EtaVerdict verdict = pcss::compare_to_eta(report, bound);
    *json_out = dup_string(pcss::sim_report_to_json(report, &verdict, &bound));
}

}  // namespace

pcss_status pcss_simulate_exhaustive(const pcss_qcode* qcode, const pcss_channel* channel,
                                     double classical_epsilon, const char* bounds_mode,
                                     char** json_out) {
    return guard([&] {
        simulate_impl(qcode, channel, true, 0, 0, 1, classical_epsilon, bounds_mode, json_out);
    });
}

pcss_status pcss_simulate_monte_carlo(const pcss_qcode* qcode, const pcss_channel* channel,
                                      uint64_t trials, uint64_t seed, int threads,
                                      double classical_epsilon, const char* bounds_mode,
                                      char** json_out) {
    return guard([&] {
        simulate_impl(qcode, channel, false, trials, seed, threads, classical_epsilon,
                      bounds_mode, json_out);
    });
}

}  // extern "C"
