#ifndef RGGPLAN_WORLD_IO_HPP
#define RGGPLAN_WORLD_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core.hpp"

/// JSON (de)serialization of worlds. ordered_json keeps key order fixed so
/// regenerated files are byte-identical.
namespace rggplan {

using ordered_json = nlohmann::ordered_json;

class WorldIoError : public std::runtime_error {
public:
    explicit WorldIoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline StateVec parse_coords(const ordered_json& j, std::size_t n, const std::string& what) {
    if (!j.is_array() || j.size() != n)
        throw WorldIoError(what + ": expected an array of " + std::to_string(n) + " numbers");
    StateVec out;
    out.reserve(n);
    for (const auto& v : j) {
        if (!v.is_number())
            throw WorldIoError(what + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

inline Box parse_box(const ordered_json& j, std::size_t n, const std::string& what) {
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
        throw WorldIoError(what + ": expected an object with \"lo\" and \"hi\"");
    try {
        return Box(parse_coords(j.at("lo"), n, what + ".lo"),
                   parse_coords(j.at("hi"), n, what + ".hi"));
    } catch (const ContractViolation& e) {
        throw WorldIoError(what + ": " + e.what());
    }
}

}  // namespace detail

inline World world_from_json(const ordered_json& j) {
    if (!j.is_object())
        throw WorldIoError("world: expected a JSON object");
    for (const char* key : {"dimension", "bounds", "obstacles", "start", "goal"})
        if (!j.contains(key))
            throw WorldIoError(std::string("world: missing key \"") + key + "\"");
    if (!j.at("dimension").is_number_unsigned() || j.at("dimension").get<std::uint64_t>() == 0)
        throw WorldIoError("world: \"dimension\" must be a positive integer");
    const auto n = j.at("dimension").get<std::size_t>();

    Box bounds = detail::parse_box(j.at("bounds"), n, "bounds");
    const auto& obs_json = j.at("obstacles");
    if (!obs_json.is_array())
        throw WorldIoError("world: \"obstacles\" must be an array");
    std::vector<Box> obstacles;
    obstacles.reserve(obs_json.size());
    for (std::size_t i = 0; i < obs_json.size(); ++i)
        obstacles.push_back(detail::parse_box(obs_json[i], n, "obstacles[" + std::to_string(i) + "]"));

    try {
        return World(std::move(bounds), std::move(obstacles),
                     detail::parse_coords(j.at("start"), n, "start"),
                     detail::parse_coords(j.at("goal"), n, "goal"));
    } catch (const ContractViolation& e) {
        throw WorldIoError(e.what());
    }
}

inline ordered_json world_to_json(const World& world) {
    ordered_json j;
    j["dimension"] = world.dimension();
    j["bounds"] = {{"lo", world.bounds().lo}, {"hi", world.bounds().hi}};
    j["obstacles"] = ordered_json::array();
    for (const Box& obs : world.obstacles())
        j["obstacles"].push_back({{"lo", obs.lo}, {"hi", obs.hi}});
    j["start"] = world.start();
    j["goal"] = world.goal();
    return j;
}

inline World load_world(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw WorldIoError("cannot open world file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw WorldIoError("invalid JSON in " + path + ": " + e.what());
    }
    try {
        return world_from_json(j);
    } catch (const WorldIoError& e) {
        throw WorldIoError(path + ": " + e.what());
    }
}

inline void save_world(const World& world, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw WorldIoError("cannot write world file: " + path);
    out << world_to_json(world).dump(2) << '\n';
}

}  // namespace rggplan

#endif  // RGGPLAN_WORLD_IO_HPP
