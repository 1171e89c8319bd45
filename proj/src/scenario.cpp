#include "hapticguide/scenario.hpp"

#include "hapticguide/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>

namespace hapticguide {

using nlohmann::json;

namespace {

constexpr double kDeg = kPi / 180.0;

// Reads one JSON object section, remembering which keys were consumed.
class Section {
public:
    Section(const json& doc, std::string name) : name_(std::move(name)) {
        if (doc.contains(name_)) {
            node_ = &doc.at(name_);
            if (!node_->is_object()) throw ConfigError("section '" + name_ + "' must be an object");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return node_ && node_->contains(key); }

    void number(const std::string& key, double& out) {
        if (!has(key)) return;
        const json& v = take(key);
        if (!v.is_number()) fail(key, "must be a number");
        out = v.get<double>();
    }

    void angle_deg(const std::string& key, double& out_rad) {
        double deg = out_rad / kDeg;
        number(key, deg);
        out_rad = deg * kDeg;
    }

    void boolean(const std::string& key, bool& out) {
        if (!has(key)) return;
        const json& v = take(key);
        if (!v.is_boolean()) fail(key, "must be true or false");
        out = v.get<bool>();
    }

    void point(const std::string& key, Vec2& out) {
        if (!has(key)) return;
        out = to_point(take(key), key);
    }

    void points(const std::string& key, std::vector<Vec2>& out) {
        if (!has(key)) return;
        const json& v = take(key);
        if (!v.is_array()) fail(key, "must be an array of [x, y] points");
        out.clear();
        for (const auto& p : v) out.push_back(to_point(p, key));
    }

    const json* raw(const std::string& key) { return has(key) ? &take(key) : nullptr; }

    void finish() const {
        if (!node_) return;
        for (const auto& [key, _] : node_->items()) {
            if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
                throw ConfigError("unknown key '" + name_ + "." + key + "'");
            }
        }
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError("'" + name_ + "." + key + "' " + what);
    }

    Vec2 to_point(const json& v, const std::string& key) const {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            fail(key, "must be a [x, y] pair of numbers");
        }
        return {v[0].get<double>(), v[1].get<double>()};
    }

private:
    const json& take(const std::string& key) {
        used_.push_back(key);
        return node_->at(key);
    }

    const json* node_{nullptr};
    std::string name_;
    std::vector<std::string> used_;
};

json point_json(const Vec2& p) { return json::array({p.x, p.y}); }

json points_json(const std::vector<Vec2>& ps) {
    json arr = json::array();
    for (const auto& p : ps) arr.push_back(point_json(p));
    return arr;
}

PolygonObstacle block(const std::string& id, Vec2 center, double half) {
    return PolygonObstacle{id,
                           {{center.x - half, center.y - half},
                            {center.x + half, center.y - half},
                            {center.x + half, center.y + half},
                            {center.x - half, center.y + half}}};
}

}  // namespace

const char* to_string(Condition c) { return c == Condition::Guided ? "guided" : "unguided"; }

Condition parse_condition(std::string_view text) {
    if (text == "guided") return Condition::Guided;
    if (text == "unguided") return Condition::Unguided;
    throw ConfigError("unknown condition '" + std::string(text) + "' (expected guided or unguided)");
}

void Scenario::validate() const {
    try {
        steer.validate();
        reset.validate();
        companion.validate();
        robot.validate();
        user.validate();
        leash.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(hz > 0.0)) throw ConfigError("run.hz must be positive");
    if (!(time_limit > 0.0)) throw ConfigError("run.time_limit must be positive");
    if (start_jitter_radius < 0.0) throw ConfigError("run.start_jitter_radius must be non-negative");
    if (!pe.contains(physical_start)) throw ConfigError("pe.start lies outside the tracked space");

    auto inside_any = [&](const Vec2& p) {
        return std::any_of(ve.obstacles.begin(), ve.obstacles.end(),
                           [&](const PolygonObstacle& o) { return point_in_polygon(o, p); });
    };
    if (inside_any(task.goal)) throw ConfigError("ve.goal lies inside an obstacle");
    if (inside_any(task.start)) throw ConfigError("ve.start lies inside an obstacle");
    for (const auto& g : ve.potential_goals) {
        if (inside_any(g)) throw ConfigError("a potential goal lies inside an obstacle");
    }
    const std::string entities[] = {"dog"};
    try {
        Environment pe_env;
        pe_env.users.resize(1);
        Environment ve_env = ve;
        ve_env.users.resize(1);
        validate_environments(pe_env, ve_env, entities);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

Scenario default_city_scenario() {
    Scenario s;
    s.pe = TrackedSpace{{0.0, 0.0}, {2.0, 2.0}};
    s.physical_start = {0.0, 0.0};
    s.physical_start_heading = 0.0;

    constexpr double pitch = 25.0;
    constexpr double half_block = 8.5;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const std::string id = "block_" + std::to_string(i + 1) + std::to_string(j + 1);
            s.ve.obstacles.push_back(block(id, {pitch * (i + 0.5), pitch * (j + 0.5)}, half_block));
        }
    }
    // hydrants and lamp posts along the sidewalks of the two streets meeting at the start
    for (double along = -20.0; along <= 45.0; along += 5.0) {
        s.ve.potential_goals.push_back({along, 3.5});
        s.ve.potential_goals.push_back({along, -3.5});
        s.ve.potential_goals.push_back({3.5, along});
        s.ve.potential_goals.push_back({-3.5, along});
    }
    s.ve.objects_of_interest = {"dog"};

    s.task.start = {0.0, 0.0};
    s.task.start_heading = 0.0;
    s.task.goal = {pitch, 0.0};
    return s;
}

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        static const std::initializer_list<std::string_view> known = {"pe",    "ve",   "redirection", "companion",
                                                                    "robot", "user", "leash",       "run"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown section '" + key + "'");
        }
    }

    Scenario s;
    try {
        Section pe(doc, "pe");
        Vec2 center{}, size{4.0, 4.0};
        pe.point("center", center);
        pe.point("size", size);
        s.pe = TrackedSpace{center, size * 0.5};
        s.physical_start = center;
        pe.point("start", s.physical_start);
        pe.angle_deg("start_heading_deg", s.physical_start_heading);
        pe.finish();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("pe: ") + e.what());
    }

    Section ve(doc, "ve");
    ve.point("start", s.task.start);
    ve.angle_deg("start_heading_deg", s.task.start_heading);
    if (!ve.has("goal")) throw ConfigError("'ve.goal' is required");
    ve.point("goal", s.task.goal);
    ve.points("route", s.task.route);
    ve.points("potential_goals", s.ve.potential_goals);
    if (const json* obstacles = ve.raw("obstacles")) {
        if (!obstacles->is_array()) ve.fail("obstacles", "must be an array");
        for (const auto& o : *obstacles) {
            if (!o.is_object() || !o.contains("vertices")) ve.fail("obstacles", "entries need 'vertices'");
            std::vector<Vec2> vertices;
            for (const auto& v : o.at("vertices")) vertices.push_back(ve.to_point(v, "obstacles"));
            const std::string id = o.value("id", "obstacle_" + std::to_string(s.ve.obstacles.size()));
            try {
                s.ve.obstacles.emplace_back(id, std::move(vertices));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("ve.obstacles: ") + e.what());
            }
        }
    }
    if (const json* ooi = ve.raw("objects_of_interest")) {
        if (!ooi->is_array()) ve.fail("objects_of_interest", "must be an array of ids");
        for (const auto& id : *ooi) {
            if (!id.is_string()) ve.fail("objects_of_interest", "must be an array of ids");
            s.ve.objects_of_interest.push_back(id.get<std::string>());
        }
    }
    ve.finish();

    Section rd(doc, "redirection");
    rd.number("kappa_max", s.steer.kappa_max);
    rd.number("rot_gain_spread", s.steer.rot_gain_spread);
    rd.number("rho_max", s.steer.rho_max);
    rd.number("distract_boost", s.steer.distract_boost);
    rd.number("reset_trigger_distance", s.reset.trigger_distance);
    rd.angle_deg("reset_completion_tolerance_deg", s.reset.completion_tolerance);
    rd.angle_deg("reset_turn_rate_deg", s.reset.turn_rate);
    rd.finish();

    Section cp(doc, "companion");
    cp.number("speed_follow", s.companion.speed_follow);
    cp.number("speed_run", s.companion.speed_run);
    cp.point("lead_offset", s.companion.lead_offset);
    cp.number("snap_radius", s.companion.snap_radius);
    cp.number("clearance", s.companion.clearance);
    cp.number("user_speed_deadband", s.companion.user_speed_deadband);
    cp.number("goal_reached_radius", s.companion.goal_reached_radius);
    cp.finish();

    Section rb(doc, "robot");
    rb.number("wheelbase", s.robot.wheelbase);
    rb.number("v_max", s.robot.v_max);
    rb.number("deadband", s.robot.deadband);
    rb.number("replan_distance", s.robot.replan_distance);
    rb.number("noise_std", s.robot.noise_std);
    rb.finish();

    Section us(doc, "user");
    us.number("walk_speed", s.user.walk_speed);
    us.number("turn_rate_max", s.user.turn_rate_max);
    us.number("compliance", s.user.compliance);
    us.number("arrived_radius", s.user.arrived_radius);
    us.finish();

    Section ls(doc, "leash");
    ls.number("rest_length", s.leash.rest_length);
    ls.number("stiffness", s.leash.stiffness);
    ls.boolean("engaged", s.leash.engaged);
    ls.finish();

    Section run(doc, "run");
    if (const json* cond = run.raw("condition")) {
        if (!cond->is_string()) run.fail("condition", "must be a string");
        s.condition = parse_condition(cond->get<std::string>());
    }
    run.number("hz", s.hz);
    run.number("time_limit", s.time_limit);
    run.number("start_jitter_radius", s.start_jitter_radius);
    run.boolean("random_start_heading", s.random_start_heading);
    run.finish();

    s.validate();
    return s;
}

json scenario_to_json(const Scenario& s) {
    json obstacles = json::array();
    for (const auto& o : s.ve.obstacles) obstacles.push_back({{"id", o.id()}, {"vertices", points_json(o.vertices())}});
    return json{
        {"pe",
         {{"center", point_json(s.pe.center())},
          {"size", point_json(s.pe.half_extents() * 2.0)},
          {"start", point_json(s.physical_start)},
          {"start_heading_deg", s.physical_start_heading / kDeg}}},
        {"ve",
         {{"start", point_json(s.task.start)},
          {"start_heading_deg", s.task.start_heading / kDeg},
          {"goal", point_json(s.task.goal)},
          {"route", points_json(s.task.route)},
          {"obstacles", obstacles},
          {"potential_goals", points_json(s.ve.potential_goals)},
          {"objects_of_interest", s.ve.objects_of_interest}}},
        {"redirection",
         {{"kappa_max", s.steer.kappa_max},
          {"rot_gain_spread", s.steer.rot_gain_spread},
          {"rho_max", s.steer.rho_max},
          {"distract_boost", s.steer.distract_boost},
          {"reset_trigger_distance", s.reset.trigger_distance},
          {"reset_completion_tolerance_deg", s.reset.completion_tolerance / kDeg},
          {"reset_turn_rate_deg", s.reset.turn_rate / kDeg}}},
        {"companion",
         {{"speed_follow", s.companion.speed_follow},
          {"speed_run", s.companion.speed_run},
          {"lead_offset", point_json(s.companion.lead_offset)},
          {"snap_radius", s.companion.snap_radius},
          {"clearance", s.companion.clearance},
          {"user_speed_deadband", s.companion.user_speed_deadband},
          {"goal_reached_radius", s.companion.goal_reached_radius}}},
        {"robot",
         {{"wheelbase", s.robot.wheelbase},
          {"v_max", s.robot.v_max},
          {"deadband", s.robot.deadband},
          {"replan_distance", s.robot.replan_distance},
          {"noise_std", s.robot.noise_std}}},
        {"user",
         {{"walk_speed", s.user.walk_speed},
          {"turn_rate_max", s.user.turn_rate_max},
          {"compliance", s.user.compliance},
          {"arrived_radius", s.user.arrived_radius}}},
        {"leash", {{"rest_length", s.leash.rest_length}, {"stiffness", s.leash.stiffness}, {"engaged", s.leash.engaged}}},
        {"run",
         {{"condition", to_string(s.condition)},
          {"hz", s.hz},
          {"time_limit", s.time_limit},
          {"start_jitter_radius", s.start_jitter_radius},
          {"random_start_heading", s.random_start_heading}}},
    };
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("scenario file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

}  // namespace hapticguide
