#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "martkit/condexp.hpp"
#include "martkit/errors.hpp"
#include "martkit/martingale.hpp"
#include "martkit/measure.hpp"
#include "martkit/partition.hpp"
#include "martkit/process.hpp"

namespace martkit {

// A workspace bundles everything one analysis needs: the measure space, the
// process, how to obtain the filtration, and optionally a betting process
// for the martingale transform. Parsing validates every cross-reference
// (universe sizes, horizons, dimensions) so analyses can assume coherence.
struct FiltrationSpec {
    enum class Kind { natural, constant, explicit_parts };
    Kind kind = Kind::natural;
    std::optional<Partition> constant_partition;
    std::vector<Partition> partitions;
};

struct Workspace {
    std::size_t dimension;
    MeasureSpace space;
    ProcessTable process;
    FiltrationSpec filtration;
    std::optional<ProcessTable> transform_process;

    [[nodiscard]] Filtration resolve_filtration() const {
        switch (filtration.kind) {
            case FiltrationSpec::Kind::natural: return natural_filtration(process);
            case FiltrationSpec::Kind::constant:
                return Filtration::constant(process.horizon(), *filtration.constant_partition);
            default: return Filtration(filtration.partitions);
        }
    }
};

namespace ws_detail {

using json = nlohmann::json;

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw parse_error(path + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw parse_error(path + ": missing field \"" + key + "\"");
    return *it;
}

inline Rat parse_rat(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return Rat::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rat(j.get<long long>());
    } catch (const error& e) {
        throw parse_error(path + ": " + e.what());
    }
    throw parse_error(path + ": expected a rational like \"-3/4\" or \"2\"");
}

inline VecD parse_vec(const json& j, std::size_t dimension, const std::string& path) {
    if (!j.is_array() || j.empty()) throw parse_error(path + ": expected a nonempty array of rationals");
    if (j.size() != dimension)
        throw parse_error(path + ": expected " + std::to_string(dimension) + " components, got " +
                          std::to_string(j.size()));
    std::vector<Rat> comps;
    comps.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        comps.push_back(parse_rat(j[i], path + "[" + std::to_string(i) + "]"));
    return VecD(std::move(comps));
}

inline FnTable parse_table(const json& j, int n, std::size_t dimension, const std::string& path) {
    if (!j.is_array()) throw parse_error(path + ": expected an array of vectors");
    if (static_cast<int>(j.size()) != n)
        throw parse_error(path + ": expected one vector per outcome (" + std::to_string(n) + "), got " +
                          std::to_string(j.size()));
    std::vector<VecD> values;
    values.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        values.push_back(parse_vec(j[i], dimension, path + "[" + std::to_string(i) + "]"));
    return FnTable(std::move(values));
}

inline ProcessTable parse_process(const json& j, int n, std::size_t dimension, const std::string& path) {
    const auto& times = field(j, "times", path);
    if (!times.is_number_integer() || times.get<long long>() < 1)
        throw parse_error(path + ".times: expected a positive integer");
    const auto& values = field(j, "values", path);
    if (!values.is_array() || values.size() != times.get<std::size_t>())
        throw parse_error(path + ".values: expected exactly " + times.dump() + " time slices");
    std::vector<FnTable> tables;
    tables.reserve(values.size());
    for (std::size_t t = 0; t < values.size(); ++t)
        tables.push_back(parse_table(values[t], n, dimension, path + ".values[" + std::to_string(t) + "]"));
    return ProcessTable(std::move(tables));
}

inline Partition parse_partition(const json& j, int n, const std::string& path) {
    if (!j.is_array()) throw parse_error(path + ": expected an array of atoms");
    std::vector<std::vector<int>> atoms;
    atoms.reserve(j.size());
    for (std::size_t a = 0; a < j.size(); ++a) {
        const auto& atom = j[a];
        if (!atom.is_array()) throw parse_error(path + "[" + std::to_string(a) + "]: expected an array");
        std::vector<int> members;
        members.reserve(atom.size());
        for (const auto& w : atom) {
            if (!w.is_number_integer())
                throw parse_error(path + "[" + std::to_string(a) + "]: outcomes must be integers");
            members.push_back(w.get<int>());
        }
        atoms.push_back(std::move(members));
    }
    try {
        return Partition(n, std::move(atoms));
    } catch (const error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline json rat_to_json(const Rat& r) { return r.to_string(); }

inline json vec_to_json(const VecD& v) {
    json arr = json::array();
    for (const auto& c : v.components()) arr.push_back(rat_to_json(c));
    return arr;
}

inline json table_to_json(const FnTable& f) {
    json arr = json::array();
    for (const auto& v : f.values()) arr.push_back(vec_to_json(v));
    return arr;
}

inline json process_to_json(const ProcessTable& x) {
    json values = json::array();
    for (const auto& t : x.tables()) values.push_back(table_to_json(t));
    return json{{"times", x.times()}, {"values", std::move(values)}};
}

inline json partition_to_json(const Partition& p) {
    json arr = json::array();
    for (const auto& atom : p.atoms()) arr.push_back(atom);
    return arr;
}

// Canonical rendering: objects one key per line (keys already sorted),
// arrays inline while they stay short and contain no objects. Keeping the
// renderer deterministic is what makes serialize(parse(file)) byte-stable.
inline void render_inline(const json& j, std::string& out) {
    if (j.is_array()) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ", ";
            render_inline(j[i], out);
        }
        out += ']';
        return;
    }
    out += j.dump();
}

inline bool inline_fits(const json& j) {
    if (j.is_object()) return false;
    if (j.is_array())
        for (const auto& child : j)
            if (!inline_fits(child)) return false;
    std::string probe;
    render_inline(j, probe);
    return probe.size() <= 72;
}

inline void render_canonical(const json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            out += pad;
            out += json(it.key()).dump();
            out += ": ";
            render_canonical(it.value(), out, indent + 2);
            if (i + 1 < j.size()) out += ',';
            out += '\n';
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
        return;
    }
    if (j.is_array() && !inline_fits(j)) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            render_canonical(j[i], out, indent + 2);
            if (i + 1 < j.size()) out += ',';
            out += '\n';
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
        return;
    }
    render_inline(j, out);
}

inline std::string dump_canonical(const json& j) {
    std::string out;
    render_canonical(j, out, 0);
    out += '\n';
    return out;
}

} // namespace ws_detail

inline Workspace parse_workspace(const std::string& text) {
    using ws_detail::field;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw parse_error("workspace: expected a JSON object");

    const auto& dim_j = field(doc, "dimension", "workspace");
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1)
        throw parse_error("dimension: expected a positive integer");
    const auto dimension = dim_j.get<std::size_t>();

    const auto& space_j = field(doc, "space", "workspace");
    const auto& weights_j = field(space_j, "weights", "space");
    if (!weights_j.is_array() || weights_j.empty())
        throw parse_error("space.weights: expected a nonempty array of rationals");
    const int n = static_cast<int>(weights_j.size());

    std::vector<std::string> labels;
    if (space_j.contains("outcomes")) {
        const auto& outcomes_j = space_j["outcomes"];
        if (!outcomes_j.is_array() || static_cast<int>(outcomes_j.size()) != n)
            throw parse_error("space.outcomes: expected one label per outcome");
        for (const auto& l : outcomes_j) {
            if (!l.is_string()) throw parse_error("space.outcomes: labels must be strings");
            labels.push_back(l.get<std::string>());
        }
    }

    std::vector<Rat> weights;
    weights.reserve(weights_j.size());
    for (int w = 0; w < n; ++w) {
        const std::string path = "space.weights[" + std::to_string(w) + "]";
        Rat r = ws_detail::parse_rat(weights_j[static_cast<std::size_t>(w)], path);
        if (r.sign() < 0) {
            const std::string name = labels.empty() ? std::to_string(w) : "\"" + labels[static_cast<std::size_t>(w)] + "\"";
            throw parse_error(path + ": negative weight " + r.to_string() + " at outcome " + name);
        }
        weights.push_back(std::move(r));
    }
    MeasureSpace space(n, std::move(weights), std::move(labels));

    ProcessTable process = ws_detail::parse_process(field(doc, "process", "workspace"), n, dimension, "process");

    const auto& filt_j = field(doc, "filtration", "workspace");
    const auto& type_j = field(filt_j, "type", "filtration");
    if (!type_j.is_string()) throw parse_error("filtration.type: expected a string");
    const std::string type = type_j.get<std::string>();
    FiltrationSpec filtration;
    if (type == "natural") {
        filtration.kind = FiltrationSpec::Kind::natural;
    } else if (type == "constant") {
        filtration.kind = FiltrationSpec::Kind::constant;
        filtration.constant_partition =
            ws_detail::parse_partition(field(filt_j, "partition", "filtration"), n, "filtration.partition");
    } else if (type == "explicit") {
        filtration.kind = FiltrationSpec::Kind::explicit_parts;
        const auto& parts_j = field(filt_j, "partitions", "filtration");
        if (!parts_j.is_array() || static_cast<int>(parts_j.size()) != process.times())
            throw parse_error("filtration.partitions: expected one partition per time (" +
                              std::to_string(process.times()) + ")");
        for (std::size_t t = 0; t < parts_j.size(); ++t)
            filtration.partitions.push_back(ws_detail::parse_partition(
                parts_j[t], n, "filtration.partitions[" + std::to_string(t) + "]"));
        // information may only accumulate over time
        for (int i = 0; i < process.times(); ++i)
            for (int j = i + 1; j < process.times(); ++j)
                if (!refines(filtration.partitions[static_cast<std::size_t>(j)],
                             filtration.partitions[static_cast<std::size_t>(i)]))
                    throw parse_error("filtration.partitions: not monotone, F_" + std::to_string(j) +
                                      " does not refine F_" + std::to_string(i) + " (violating pair (" +
                                      std::to_string(i) + ", " + std::to_string(j) + "))");
    } else {
        throw parse_error("filtration.type: expected \"natural\", \"constant\" or \"explicit\"");
    }

    std::optional<ProcessTable> transform_process;
    if (doc.contains("transform")) {
        transform_process = ws_detail::parse_process(doc["transform"], n, 1, "transform");
        if (transform_process->times() != process.times())
            throw parse_error("transform.times: must match process.times");
    }

    return Workspace{dimension, std::move(space), std::move(process), std::move(filtration),
                     std::move(transform_process)};
}

inline std::string serialize_workspace(const Workspace& ws) {
    using ws_detail::json;
    json doc;
    doc["dimension"] = ws.dimension;
    json space;
    if (!ws.space.labels().empty()) space["outcomes"] = ws.space.labels();
    json weights = json::array();
    for (const auto& w : ws.space.weights()) weights.push_back(ws_detail::rat_to_json(w));
    space["weights"] = std::move(weights);
    doc["space"] = std::move(space);
    doc["process"] = ws_detail::process_to_json(ws.process);
    switch (ws.filtration.kind) {
        case FiltrationSpec::Kind::natural: doc["filtration"] = json{{"type", "natural"}}; break;
        case FiltrationSpec::Kind::constant:
            doc["filtration"] = json{{"partition", ws_detail::partition_to_json(*ws.filtration.constant_partition)},
                                     {"type", "constant"}};
            break;
        case FiltrationSpec::Kind::explicit_parts: {
            json parts = json::array();
            for (const auto& p : ws.filtration.partitions) parts.push_back(ws_detail::partition_to_json(p));
            doc["filtration"] = json{{"partitions", std::move(parts)}, {"type", "explicit"}};
            break;
        }
    }
    if (ws.transform_process) doc["transform"] = ws_detail::process_to_json(*ws.transform_process);
    return ws_detail::dump_canonical(doc);
}

// --- report rendering ---------------------------------------------------------

/// Deterministic pretty rendering (sorted keys, short arrays inline).
inline std::string render_json(const nlohmann::json& j) { return ws_detail::dump_canonical(j); }

inline nlohmann::json counterexample_to_json(const Counterexample& c) {
    nlohmann::json j;
    j["i"] = c.time_i;
    j["j"] = c.time_j;
    j[c.where_is_event ? "event" : "atom"] = c.where;
    j["lhs"] = ws_detail::vec_to_json(c.lhs);
    j["rhs"] = ws_detail::vec_to_json(c.rhs);
    return j;
}

inline nlohmann::json characterization_to_json(const CharacterizationReport& r) {
    if (!r.supported) return "unsupported_order";
    nlohmann::json j;
    const auto put = [&](const char* key, const std::optional<bool>& v) {
        j[key] = v.has_value() ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    put("pairwise", r.pairwise);
    put("successor", r.successor);
    put("set_integral", r.set_integral);
    put("difference", r.difference);
    put("verdict", r.verdict);
    if (r.capacity_hit) j["capacity_hit"] = true;
    if (r.counterexample) j["counterexample"] = counterexample_to_json(*r.counterexample);
    return j;
}

inline nlohmann::json classification_to_json(const ClassificationReport& r) {
    nlohmann::json j;
    j["adapted"] = r.adapted;
    j["dimension"] = r.dimension;
    if (r.adapted_violation_time) j["adapted_violation_time"] = *r.adapted_violation_time;
    const auto put = [&](const char* key, const std::optional<CharacterizationReport>& s) {
        j[key] = s.has_value() ? characterization_to_json(*s) : nlohmann::json(nullptr);
    };
    put("martingale", r.martingale);
    put("submartingale", r.submartingale);
    put("supermartingale", r.supermartingale);
    return j;
}

inline nlohmann::json cond_exp_to_json(const CondExpResult& r) {
    nlohmann::json j;
    j["table"] = ws_detail::table_to_json(r.table);
    nlohmann::json nulls = nlohmann::json::array();
    for (const auto& atom : r.null_atoms) nulls.push_back(atom);
    j["null_atoms"] = std::move(nulls);
    return j;
}

} // namespace martkit
