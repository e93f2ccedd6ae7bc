#include "mtm/model_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mtm {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::invalid_argument, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Rational value_to_rational(const json& v) {
    if (v.is_string()) return num::parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) return Rational(v.get<double>());
    fail(Errc::invalid_argument, "expected a number or rational string");
}

std::vector<Point> parse_points(const json& j, PointId fallback_count) {
    std::vector<Point> points;
    if (j.is_number_integer()) {
        points.resize(j.get<int>());
        for (PointId i = 0; i < static_cast<PointId>(points.size()); ++i) points[i].id = i;
        return points;
    }
    if (j.is_array()) {
        points.resize(j.size());
        for (const auto& pj : j) {
            PointId id = pj.at("id").get<PointId>();
            if (id < 0 || id >= static_cast<PointId>(points.size()))
                fail(Errc::invalid_argument, "point ids must be dense from 0");
            points[id].id = id;
            if (pj.contains("coords")) {
                auto c = pj.at("coords");
                points[id].coords = GridCoord{c.at(0).get<int>(), c.at(1).get<int>()};
            }
        }
        return points;
    }
    points.resize(fallback_count);
    for (PointId i = 0; i < fallback_count; ++i) points[i].id = i;
    return points;
}

}  // namespace

MTModel<Rational> load_model_json(const std::string& text) {
    json j = json::parse(text, nullptr, true, true);
    if (!j.contains("traces")) fail(Errc::invalid_argument, "model needs a traces array");
    std::vector<Trace> traces;
    PointId max_point = -1;
    for (const auto& tj : j.at("traces")) {
        Trace t;
        for (const auto& pj : tj) {
            t.points.push_back(pj.get<PointId>());
            max_point = std::max(max_point, t.points.back());
        }
        traces.push_back(std::move(t));
    }
    std::vector<Point> points =
        parse_points(j.contains("points") ? j.at("points") : json(), max_point + 1);
    TraceSet ts = TraceSet::build(std::move(points), std::move(traces));

    if (!j.contains("rule") || (j.at("rule").is_string() && j.at("rule") == "uniform"))
        return uniform_rule<Rational>(std::move(ts));

    const json& rule = j.at("rule");
    if (!rule.is_object() || !rule.contains("weights"))
        fail(Errc::invalid_argument, "rule must be \"uniform\" or {\"weights\": {...}}");
    std::vector<Rational> weight(ts.trace_count(), Rational(-1));
    bool any_float = false;
    for (const auto& [key, v] : rule.at("weights").items()) {
        std::size_t idx = std::stoul(key);
        if (idx >= weight.size()) fail(Errc::invalid_argument, "weight for unknown trace " + key);
        weight[idx] = value_to_rational(v);
        if (v.is_number_float()) any_float = true;
    }
    for (TraceId t = 0; t < ts.trace_count(); ++t)
        if (weight[t] < 0)
            fail(Errc::invalid_argument, "missing weight for trace " + std::to_string(t));
    if (any_float) {
        // float inputs rarely sum to 1 exactly; renormalize per start point
        for (PointId u : ts.start_points()) {
            Rational sum(0);
            for (TraceId t : ts.out(u)) sum += weight[t];
            if (num::is_zero(sum)) fail(Errc::invalid_argument, "zero weights at a point");
            if (num::abs_val(Rational(sum - 1)).get_d() > 1e-9)
                fail(Errc::invalid_argument,
                     "weights at point " + std::to_string(u) + " do not sum to 1");
            for (TraceId t : ts.out(u)) weight[t] /= sum;
        }
    }
    return make_model(std::move(ts), std::move(weight));
}

MTModel<Rational> load_model_file(const std::string& path) { return load_model_json(slurp(path)); }

std::string model_to_json(const MTModel<Rational>& m) {
    const TraceSet& ts = m.ts();
    json j;
    json points = json::array();
    for (const Point& p : ts.points()) {
        json pj{{"id", p.id}};
        if (p.coords) pj["coords"] = {p.coords->i, p.coords->j};
        points.push_back(pj);
    }
    j["points"] = points;
    json traces = json::array();
    for (const Trace& t : ts.traces()) traces.push_back(t.points);
    j["traces"] = traces;
    if (m.rule.uniformly_selective(ts)) {
        j["rule"] = "uniform";
    } else {
        json w;
        for (TraceId t = 0; t < ts.trace_count(); ++t)
            w[std::to_string(t)] = m.rule.prob(t).get_str();
        j["rule"] = {{"weights", w}};
    }
    return j.dump(2);
}

RouteSystem load_route_system_json(const std::string& text) {
    json j = json::parse(text, nullptr, true, true);
    std::vector<Bundle> bundles;
    for (const auto& bj : j.at("bundles")) {
        if (bj.contains("segments")) {
            std::vector<std::pair<Segment, std::int64_t>> segs;
            for (const auto& sj : bj.at("segments")) {
                Segment seg;
                for (const auto& pj : sj.at("points")) seg.push_back(pj.get<PointId>());
                segs.emplace_back(std::move(seg),
                                  sj.contains("count") ? sj.at("count").get<std::int64_t>() : 1);
            }
            bundles.push_back(Bundle::make(std::move(segs)));
        } else if (bj.contains("shadow") && bj.contains("slowness")) {
            Segment shadow;
            for (const auto& pj : bj.at("shadow")) shadow.push_back(pj.get<PointId>());
            std::vector<Rational> slowness;
            for (const auto& sj : bj.at("slowness")) slowness.push_back(value_to_rational(sj));
            bundles.push_back(bundle_from_slowness(shadow, slowness));
        } else {
            fail(Errc::invalid_argument, "bundle needs segments or shadow+slowness");
        }
    }
    PointId max_point = -1;
    for (const Bundle& b : bundles)
        for (const auto& [u, c] : b.chi) max_point = std::max(max_point, u);
    PointId count = max_point + 1;
    if (j.contains("points")) {
        const auto& pj = j.at("points");
        if (pj.is_number_integer()) count = std::max<PointId>(count, pj.get<int>());
    }
    std::vector<std::pair<Route, std::int64_t>> routes;
    for (const auto& rj : j.at("routes")) {
        Route r;
        for (const auto& pj : rj.at("paths")) {
            BundlePath path;
            for (const auto& bj : pj.at("bundles")) path.bundles.push_back(bj.get<BundleId>());
            r.paths.push_back(
                {std::move(path), pj.contains("count") ? pj.at("count").get<std::int64_t>() : 1});
        }
        routes.push_back({std::move(r), rj.contains("count") ? rj.at("count").get<std::int64_t>() : 1});
    }
    return RouteSystem::make(count, std::move(bundles), std::move(routes));
}

RouteSystem load_route_system_file(const std::string& path) {
    return load_route_system_json(slurp(path));
}

}  // namespace mtm
