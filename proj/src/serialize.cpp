#include "pcss/serialize.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "pcss/error.hpp"

namespace pcss {

namespace {

using nlohmann::json;

json matrix_rows(const BitMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(m.row(r).to_string());
    }
    return rows;
}

BitMatrix matrix_from_rows(const json& rows, std::size_t cols_hint) {
    std::vector<std::string> lines;
    for (const auto& row : rows) {
        lines.push_back(row.get<std::string>());
    }
    if (lines.empty()) {
        return BitMatrix(0, cols_hint);
    }
    return BitMatrix::from_rows(lines);
}

// JSON has no infinities; pin the exponent to the double range edge instead
double clamp_finite(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return v > 0 ? 1e308 : -1e308;
}

}  // namespace

std::string hash_to_json(const HashRealization& hash) {
    json j;
    j["m"] = hash.m();
    j["k"] = hash.k();
    j["A"] = matrix_rows(hash.matrix());
    j["s0"] = hash.offset().to_string();
    if (hash.provenance()) {
        const HashProvenance& prov = *hash.provenance();
        j["a"] = element_to_bits(prov.spec, prov.a).to_string();
        j["b"] = element_to_bits(prov.spec, prov.b).to_string();
        j["modulus"] = prov.spec.to_string();
    }
    return j.dump(2);
}

HashRealization hash_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ParseError, std::string("hash JSON: ") + e.what());
    }
    require(j.contains("A") && j.contains("s0"), ErrorCode::ParseError,
            "hash JSON needs fields A and s0");
    if (j.contains("modulus") && j.contains("a")) {
        FieldSpec spec = FieldSpec::parse(j["modulus"].get<std::string>());
        FieldElement a = element_from_bits(spec, BitVector::from_string(j["a"].get<std::string>()));
        FieldElement b = 0;
        if (j.contains("b")) {
            b = element_from_bits(spec, BitVector::from_string(j["b"].get<std::string>()));
        }
        int m = static_cast<int>(BitVector::from_string(j["s0"].get<std::string>()).size());
        HashRealization from_prov = HashRealization::from_field(spec, a, b, m);
        // the serialized matrix wins if it disagrees (it should not)
        require(from_prov.matrix() == matrix_from_rows(j["A"], from_prov.matrix().cols()),
                ErrorCode::ParseError, "hash JSON: A does not match its provenance");
        return from_prov;
    }
    BitVector s0 = BitVector::from_string(j["s0"].get<std::string>());
    BitMatrix a = matrix_from_rows(j["A"], 0);
    return HashRealization(std::move(a), std::move(s0));
}

std::string qcode_to_json(const PcssCode& code) {
    json j;
    j["n"] = code.n();
    j["k"] = code.k();
    j["m"] = code.m();
    j["G"] = matrix_rows(code.code.generator());
    j["H"] = matrix_rows(code.code.parity());
    j["F"] = matrix_rows(code.f);
    std::vector<std::string> stabs = stabilizer_strings(code);
    json z = json::array(), x = json::array();
    for (std::size_t i = 0; i < code.z_stabs.rows(); ++i) {
        z.push_back(stabs[i]);
    }
    for (std::size_t i = code.z_stabs.rows(); i < stabs.size(); ++i) {
        x.push_back(stabs[i]);
    }
    j["z_stabs"] = z;
    j["x_stabs"] = x;
    json reps = json::array();
    for (const BitVector& rep : code.coset_reps) {
        reps.push_back(rep.to_string());
    }
    j["coset_reps"] = reps;
    if (code.hash.provenance()) {
        const HashProvenance& prov = *code.hash.provenance();
        j["a"] = element_to_bits(prov.spec, prov.a).to_string();
        j["modulus"] = prov.spec.to_string();
    }
    return j.dump(2);
}

std::string css_report_to_json(const CssReport& report) {
    json j;
    j["pass"] = report.pass;
    j["failures"] = report.failures;
    return j.dump(2);
}

std::string distance_to_json(const DistanceReport& report) {
    json j;
    j["d"] = report.d;
    j["d_x"] = report.d_x;
    j["d_z"] = report.d_z;
    j["witness_x"] = report.witness_x.to_string();
    j["witness_z"] = report.witness_z.to_string();
    return j.dump(2);
}

std::string stats_to_json(const BitflipStats& stats) {
    json j;
    j["epsilon"] = stats.epsilon;
    j["method"] = stats.method == BitflipStats::Method::Exact ? "exact" : "monte-carlo";
    j["include_detected"] = stats.include_detected;
    j["flip_prob"] = stats.flip_prob;
    if (stats.ci) {
        j["ci"] = *stats.ci;
    }
    if (stats.method == BitflipStats::Method::MonteCarlo) {
        j["trials"] = stats.trials;
        j["seed"] = stats.seed;
        j["detected"] = stats.detected;
        j["undetected"] = stats.undetected;
    }
    return j.dump(2);
}

std::string channel_to_json(const SingleQubitPauli& single, std::size_t n) {
    json j;
    j["pI"] = single.p_i;
    j["pX"] = single.p_x;
    j["pY"] = single.p_y;
    j["pZ"] = single.p_z;
    j["n"] = n;
    return j.dump(2);
}

std::string entropies_to_json(const ChannelEntropies& ent, const SingleQubitPauli* single) {
    json j;
    j["h2_XE"] = ent.h2_XE;
    j["h0_E"] = ent.h0_E;
    j["i_XB"] = ent.i_XB;
    j["i_XE"] = ent.i_XE;
    j["hashing_C"] = ent.hashing_C;
    j["n"] = ent.n;
    if (single != nullptr) {
        j["channel"] = json::parse(channel_to_json(*single, ent.n));
    }
    return j.dump(2);
}

std::string bound_to_json(const EtaResult& point) {
    json j;
    j["mode"] = to_string(point.mode);
    j["epsilon_prime"] = point.epsilon_prime;
    j["log2_epsilon_prime"] = clamp_finite(point.log2_epsilon_prime);
    j["eta"] = point.eta;
    j["n"] = point.inputs.n;
    j["k"] = point.inputs.k;
    j["m"] = point.inputs.m;
    j["epsilon"] = point.inputs.epsilon;
    j["hashing_C"] = hashing_bound(point.inputs.channel);
    j["i_XE"] = mutual_info_XE(point.inputs.channel);
    if (point.mode == BoundMode::Smooth) {
        j["delta"] = point.inputs.delta;
    }
    return j.dump(2);
}

std::string sim_report_to_json(const LogicalErrorReport& report, const EtaVerdict* verdict,
                               const EtaResult* bound) {
    json j;
    j["p_fail"] = report.p_fail;
    j["p_x_fail"] = report.p_x_fail;
    j["p_z_fail"] = report.p_z_fail;
    j["method"] =
        report.method == LogicalErrorReport::Method::Exhaustive ? "exhaustive" : "monte-carlo";
    if (report.ci) {
        j["ci"] = *report.ci;
    }
    if (report.method == LogicalErrorReport::Method::MonteCarlo) {
        j["trials"] = report.trials;
        j["seed"] = report.seed;
    }
    j["n"] = report.n;
    if (bound != nullptr) {
        j["eta"] = bound->eta;
    }
    if (verdict != nullptr) {
        json v;
        v["holds"] = verdict->holds;
        v["two_p_fail"] = verdict->lhs;
        v["eta"] = verdict->rhs;
        v["slack"] = verdict->slack;
        v["margin"] = verdict->margin;
        j["verdict"] = v;
    }
    return j.dump(2);
}

std::string rate_curve_to_csv(const std::vector<RatePoint>& points, BoundMode mode) {
    std::ostringstream out;
    out << "r_q,eta,epsilon_prime,mode\n";
    out.precision(10);
    for (const RatePoint& p : points) {
        out << p.r_q << ',' << p.eta << ',' << p.epsilon_prime << ',' << to_string(mode)
            << '\n';
    }
    return out.str();
}

}  // namespace pcss
