#include "duality/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "duality/errors.hpp"

namespace duality {

using nlohmann::json;

StateFileError::StateFileError(std::string message, std::string location, ValidationReport report)
    : Error(message + (location.empty() ? "" : " at " + location)), location_(std::move(location)),
      report_(std::move(report)) {}

namespace {

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& pointer) {
    for (const auto& [key, value] : object.items()) {
        (void)value;
        bool found = false;
        for (const char* k : known)
            if (key == k) {
                found = true;
                break;
            }
        if (!found) throw StateFileError("unknown key '" + key + "'", pointer);
    }
}

const json& require(const json& object, const char* key, const std::string& pointer) {
    const auto it = object.find(key);
    if (it == object.end()) throw StateFileError(std::string("missing key '") + key + "'", pointer);
    return *it;
}

InternalTuple parse_tuple(const json& node, int m, int n_particles, const std::string& pointer) {
    InternalTuple tuple;
    if (node.is_string()) {
        for (char c : node.get<std::string>()) {
            if (c < 'a' || c >= 'a' + m)
                throw StateFileError(std::string("letter '") + c + "' outside a..", pointer);
            tuple.push_back(c - 'a');
        }
    } else if (node.is_array()) {
        for (const auto& entry : node) {
            if (!entry.is_number_integer())
                throw StateFileError("tuple entries must be integers", pointer);
            const int letter = entry.get<int>();
            if (letter < 1 || letter > m)
                throw StateFileError("letter " + std::to_string(letter) + " outside 1.." +
                                         std::to_string(m),
                                     pointer);
            tuple.push_back(letter - 1);
        }
    } else {
        throw StateFileError("tuple must be an array of letters or a string", pointer);
    }
    if (static_cast<int>(tuple.size()) != n_particles)
        throw StateFileError("tuple length " + std::to_string(tuple.size()) + " != N = " +
                                 std::to_string(n_particles),
                             pointer);
    return tuple;
}

} // namespace

PreparedState read_state(std::istream& in, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw StateFileError(std::string("JSON syntax error in ") + origin + ": " + err.what(),
                             "");
    }
    const std::string root = origin;
    if (!doc.is_object()) throw StateFileError("state document must be a JSON object", root);
    reject_unknown_keys(doc, {"kind", "occupation", "internal", "preparation"}, "/");

    const json& kind_node = require(doc, "kind", "/");
    ParticleKind kind;
    if (kind_node == "boson")
        kind = ParticleKind::boson;
    else if (kind_node == "fermion")
        kind = ParticleKind::fermion;
    else
        throw StateFileError("kind must be 'boson' or 'fermion'", "/kind");

    const json& occ_node = require(doc, "occupation", "/");
    if (!occ_node.is_array() || occ_node.empty())
        throw StateFileError("occupation must be a non-empty array", "/occupation");
    std::vector<int> counts;
    for (const auto& entry : occ_node) {
        if (!entry.is_number_integer() || entry.get<int>() < 0)
            throw StateFileError("occupation entries must be non-negative integers", "/occupation");
        counts.push_back(entry.get<int>());
    }
    ModeOccupation occ(std::move(counts));
    const int n_particles = occ.particle_count();

    const json& internal_node = require(doc, "internal", "/");
    reject_unknown_keys(internal_node, {"m", "components"}, "/internal");
    const json& m_node = require(internal_node, "m", "/internal");
    if (!m_node.is_number_integer() || m_node.get<int>() < 1)
        throw StateFileError("internal.m must be a positive integer", "/internal/m");
    const int m = m_node.get<int>();

    const json& components_node = require(internal_node, "components", "/internal");
    if (!components_node.is_array() || components_node.empty())
        throw StateFileError("internal.components must be a non-empty array",
                             "/internal/components");

    std::vector<InternalComponent> components;
    for (std::size_t j = 0; j < components_node.size(); ++j) {
        const std::string pointer = "/internal/components/" + std::to_string(j);
        const json& comp_node = components_node[j];
        reject_unknown_keys(comp_node, {"q", "amps"}, pointer);
        InternalComponent component;
        const json& q_node = require(comp_node, "q", pointer);
        if (!q_node.is_number()) throw StateFileError("q must be a number", pointer + "/q");
        component.weight = q_node.get<double>();

        const json& amps_node = require(comp_node, "amps", pointer);
        if (!amps_node.is_array() || amps_node.empty())
            throw StateFileError("amps must be a non-empty array", pointer + "/amps");
        for (std::size_t a = 0; a < amps_node.size(); ++a) {
            const std::string amp_pointer = pointer + "/amps/" + std::to_string(a);
            const json& amp_node = amps_node[a];
            reject_unknown_keys(amp_node, {"tuple", "re", "im"}, amp_pointer);
            const InternalTuple tuple =
                parse_tuple(require(amp_node, "tuple", amp_pointer), m, n_particles, amp_pointer);
            const double re = require(amp_node, "re", amp_pointer).get<double>();
            const double im = amp_node.contains("im") ? amp_node["im"].get<double>() : 0.0;
            if (component.amps.count(tuple))
                throw StateFileError("duplicate tuple", amp_pointer + "/tuple");
            component.amps[tuple] = Complex(re, im);
        }
        components.push_back(std::move(component));
    }

    Permutation preparation = Permutation::identity(n_particles);
    if (doc.contains("preparation")) {
        const json& prep_node = doc["preparation"];
        if (!prep_node.is_string())
            throw StateFileError("preparation must be a cycle-notation string", "/preparation");
        try {
            preparation = Permutation::from_cycles(prep_node.get<std::string>(), n_particles);
        } catch (const ConfigError& err) {
            throw StateFileError(err.what(), "/preparation");
        }
    }

    try {
        InternalState internal(m, n_particles, std::move(components));
        return PreparedState(std::move(occ), kind, std::move(internal), std::move(preparation));
    } catch (const StateValidationError& err) {
        throw StateFileError(err.what(), "/internal/components", err.report());
    } catch (const DimensionError& err) {
        throw StateFileError(err.what(), "/internal");
    }
}

PreparedState read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StateFileError("cannot open state file '" + path + "'", "");
    return read_state(in, path);
}

std::string write_state(const PreparedState& state) {
    json doc;
    doc["kind"] = to_string(state.kind());
    doc["occupation"] = state.occupation().counts();
    json internal;
    internal["m"] = state.internal().letter_count();
    json components = json::array();
    for (const auto& component : state.internal().components()) {
        json comp;
        comp["q"] = component.weight;
        json amps = json::array();
        for (const auto& [tuple, amp] : component.amps) {
            json entry;
            std::vector<int> one_based;
            one_based.reserve(tuple.size());
            for (int letter : tuple) one_based.push_back(letter + 1);
            entry["tuple"] = one_based;
            entry["re"] = amp.real();
            entry["im"] = amp.imag();
            amps.push_back(std::move(entry));
        }
        comp["amps"] = std::move(amps);
        components.push_back(std::move(comp));
    }
    internal["components"] = std::move(components);
    doc["internal"] = std::move(internal);
    doc["preparation"] = state.preparation().cycle_string();
    return doc.dump(2);
}

} // namespace duality
