#pragma once

#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperfractal/city.hpp"

namespace hyperfractal::io {

/// City configuration document (JSON). Example:
///
///   {
///     "n": 3,
///     "p0": 0.2,
///     "lambdas": [1.0, 1.0, 2.0],
///     "ps": [0.5, 0.5, 0.7],
///     "max_depth": 6,
///     "seed": 42,
///     "gaussian": {
///       "mean": [0.5, 0.5],
///       "covariance": [[0.1, 0.0], [0.0, 0.1]],
///       "seed": 7,
///       "max_rejects": 100000
///     }
///   }
///
/// Exactly one of "gaussian" or "centers" (a list of [x,y] pairs) selects the
/// center source. Unknown keys are rejected.

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& object,
                                std::initializer_list<const char*> allowed,
                                const char* where) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (const char* name : allowed)
            if (key == name) known = true;
        if (!known)
            throw std::runtime_error(std::string("city config: unknown key '") + key +
                                     "' in " + where);
    }
}

inline Point2 parse_point(const nlohmann::json& value, const char* what) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
        throw std::runtime_error(std::string("city config: ") + what +
                                 " must be a [x, y] number pair");
    return Point2{value[0].get<double>(), value[1].get<double>()};
}

}  // namespace detail

inline CityConfig parse_city_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::runtime_error("city config: document must be an object");
    detail::reject_unknown_keys(
        doc, {"n", "p0", "lambdas", "ps", "max_depth", "seed", "centers", "gaussian"},
        "the top-level object");
    for (const char* required : {"n", "p0", "lambdas", "ps", "max_depth", "seed"})
        if (!doc.contains(required))
            throw std::runtime_error(std::string("city config: missing key '") + required +
                                     "'");

    CityConfig config;
    if (!doc["n"].is_number_unsigned())
        throw std::runtime_error("city config: n must be a nonnegative integer");
    config.n = doc["n"].get<std::size_t>();
    config.p0 = doc["p0"].get<double>();
    config.lambdas = doc["lambdas"].get<std::vector<double>>();
    config.ps = doc["ps"].get<std::vector<double>>();
    config.max_depth = doc["max_depth"].get<int>();
    config.seed = doc["seed"].get<std::uint64_t>();

    const bool has_centers = doc.contains("centers");
    const bool has_gaussian = doc.contains("gaussian");
    if (has_centers == has_gaussian)
        throw std::runtime_error(
            "city config: exactly one of 'centers' or 'gaussian' must be present");

    if (has_centers) {
        std::vector<Point2> centers;
        for (const auto& entry : doc["centers"])
            centers.push_back(detail::parse_point(entry, "each center"));
        config.center_source = std::move(centers);
    } else {
        const nlohmann::json& g = doc["gaussian"];
        if (!g.is_object())
            throw std::runtime_error("city config: 'gaussian' must be an object");
        detail::reject_unknown_keys(g, {"mean", "covariance", "seed", "max_rejects"},
                                    "'gaussian'");
        for (const char* required : {"mean", "covariance", "seed", "max_rejects"})
            if (!g.contains(required))
                throw std::runtime_error(std::string("city config: missing key 'gaussian.") +
                                         required + "'");
        GaussianCenters gaussian;
        gaussian.mean = detail::parse_point(g["mean"], "gaussian.mean");
        const auto& cov = g["covariance"];
        if (!cov.is_array() || cov.size() != 2 || cov[0].size() != 2 || cov[1].size() != 2)
            throw std::runtime_error("city config: gaussian.covariance must be 2x2");
        const double sxx = cov[0][0].get<double>();
        const double sxy = cov[0][1].get<double>();
        const double syx = cov[1][0].get<double>();
        const double syy = cov[1][1].get<double>();
        if (std::abs(sxy - syx) > 1e-12)
            throw std::runtime_error("city config: gaussian.covariance must be symmetric");
        gaussian.covariance = CovarianceSpec{sxx, sxy, syy};
        gaussian.seed = g["seed"].get<std::uint64_t>();
        gaussian.max_rejects = g["max_rejects"].get<std::size_t>();
        config.center_source = gaussian;
    }
    return config;
}

inline CityConfig parse_city_config(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& error) {
        throw std::runtime_error(std::string("city config: invalid JSON: ") + error.what());
    }
    return parse_city_config(doc);
}

inline CityConfig load_city_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("city config: cannot open '" + path + "'");
    return parse_city_config(in);
}

}  // namespace hyperfractal::io
