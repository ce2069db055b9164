#include "coarse_ends/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "coarse_ends/errors.hpp"
#include "coarse_ends/window.hpp"

namespace coarse_ends {
namespace {

using nlohmann::json;

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::size_t line_of_key(const std::string& text, const std::string& key) {
    auto pos = text.find("\"" + key + "\"");
    return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

template <class T>
T get_as(const json& j, const std::string& key, const std::string& text, const char* what) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("'" + key + "' must be " + what, line_of_key(text, key));
    }
}

}  // namespace

std::vector<Norm> parse_radii(const std::string& spec) {
    std::vector<Norm> out;
    auto dots = spec.find("..");
    try {
        if (dots != std::string::npos) {
            Norm a = std::stoll(spec.substr(0, dots));
            Norm b = std::stoll(spec.substr(dots + 2));
            if (b < a) throw InvalidRadii("empty radius range '" + spec + "'");
            for (Norm r = a; r <= b; ++r) out.push_back(r);
        } else {
            std::stringstream ss(spec);
            std::string tok;
            while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
        }
    } catch (const std::logic_error&) {
        throw InvalidRadii("cannot parse radii '" + spec + "'");
    }
    if (out.empty()) throw InvalidRadii("empty radii schedule");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw InvalidRadii("radii must be strictly increasing");
    if (out.front() < 0) throw InvalidRadii("radii must be non-negative");
    return out;
}

ResolvedRadii resolve_radii(const RunConfig& cfg, const Group& group) {
    if (cfg.radii != "auto") return {parse_radii(cfg.radii), "explicit schedule"};
    const std::size_t budget = std::min<std::size_t>(cfg.memory_cap, 250000);
    const Norm want = static_cast<Norm>(std::ceil(cfg.horizon_factor * 20.0 - 1e-9));
    const Norm reach = largest_ball_within(group, want, budget);
    Norm top = static_cast<Norm>(std::floor(static_cast<double>(reach) / cfg.horizon_factor + 1e-9));
    top = std::clamp<Norm>(top, 1, 20);
    ResolvedRadii out;
    for (Norm r = 1; r <= top; ++r) out.radii.push_back(r);
    out.note = "auto: radii 1.." + std::to_string(top) + " fit a ball budget of " + std::to_string(budget) +
               " elements (window radius " + std::to_string(reach) + ")";
    return out;
}

void validate(const RunConfig& cfg) {
    if (cfg.window_w < 2) throw ConfigError("stabilisation window must be >= 2");
    if (!(cfg.horizon_factor >= 1.0)) throw ConfigError("horizon factor must be >= 1");
    if (cfg.memory_cap < 1) throw ConfigError("memory cap must be positive");
    if (!(cfg.epsilon > 0)) throw ConfigError("epsilon must be positive");
    if (cfg.radii != "auto") parse_radii(cfg.radii);
    for (Norm m : cfg.M)
        if (m < 1) throw ConfigError("M values must be >= 1");
    for (std::size_t i = 1; i < cfg.cover_radii.size(); ++i)
        if (cfg.cover_radii[i] <= cfg.cover_radii[i - 1]) throw ConfigError("cover radii must be increasing");
}

RunConfig parse_config(const std::string& text, RunConfig cfg) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!j.is_object()) throw ConfigError("top level must be an object", 1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "command") cfg.command = get_as<std::string>(j, k, text, "a string");
        else if (k == "group") cfg.group = get_as<std::string>(j, k, text, "a string");
        else if (k == "radii") {
            if (it->is_array()) {
                auto v = get_as<std::vector<Norm>>(j, k, text, "an integer list");
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
                cfg.radii = s;
            } else {
                cfg.radii = get_as<std::string>(j, k, text, "a string or integer list");
            }
        } else if (k == "horizon_factor") cfg.horizon_factor = get_as<double>(j, k, text, "a number");
        else if (k == "window") cfg.window_w = get_as<std::size_t>(j, k, text, "a positive integer");
        else if (k == "memory_cap") cfg.memory_cap = get_as<std::size_t>(j, k, text, "a positive integer");
        else if (k == "seed") cfg.seed = get_as<std::uint64_t>(j, k, text, "a non-negative integer");
        else if (k == "M") cfg.M = get_as<std::vector<Norm>>(j, k, text, "an integer list");
        else if (k == "epsilon") cfg.epsilon = get_as<double>(j, k, text, "a number");
        else if (k == "core_base") cfg.core_base = get_as<Norm>(j, k, text, "an integer");
        else if (k == "schedule") cfg.schedule = get_as<std::vector<Norm>>(j, k, text, "an integer list");
        else if (k == "set") cfg.set = get_as<std::string>(j, k, text, "a string");
        else if (k == "set_radius") cfg.set_radius = get_as<Norm>(j, k, text, "an integer");
        else if (k == "fixtures") cfg.fixtures = get_as<std::vector<std::string>>(j, k, text, "a list of names");
        else if (k == "space") cfg.space = get_as<std::string>(j, k, text, "a string");
        else if (k == "cover_radii") cfg.cover_radii = get_as<std::vector<Norm>>(j, k, text, "an integer list");
        else if (k == "trials") cfg.trials = get_as<std::size_t>(j, k, text, "a non-negative integer");
        else if (k == "trial_points") cfg.trial_points = get_as<std::size_t>(j, k, text, "a positive integer");
        else if (k == "max_certify") cfg.max_certify = get_as<std::size_t>(j, k, text, "a positive integer");
        else if (k == "product_samples") cfg.product_samples = get_as<std::size_t>(j, k, text, "a non-negative integer");
        else if (k == "output") cfg.output = get_as<std::string>(j, k, text, "a path");
        else if (k == "dot") cfg.dot = get_as<std::string>(j, k, text, "a path");
        else throw ConfigError("unknown key '" + k + "'", line_of_key(text, k));
    }
    try {
        validate(cfg);
    } catch (const InvalidRadii& e) {
        throw ConfigError(e.what(), line_of_key(text, "radii"));
    }
    return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

}  // namespace coarse_ends
