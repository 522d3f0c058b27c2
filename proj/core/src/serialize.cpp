#include "ddorbit/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace ddorbit {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

json breakdown_to_json(const ActionBreakdown& a) {
    return json{{"total", a.total},   {"kinetic", a.kinetic},
                {"potential", a.potential}, {"a12", a.a12},
                {"a13", a.a13},       {"a14", a.a14},
                {"a23", a.a23}};
}

ActionBreakdown breakdown_from_json(const json& j) {
    ActionBreakdown a;
    a.total = j.at("total");
    a.kinetic = j.at("kinetic");
    a.potential = j.at("potential");
    a.a12 = j.at("a12");
    a.a13 = j.at("a13");
    a.a14 = j.at("a14");
    a.a23 = j.at("a23");
    return a;
}

}  // namespace

std::string solution_to_json(const Solution& sol) {
    json nodes = json::array();
    for (const ReducedConfig& c : sol.path.nodes)
        nodes.push_back({c.q1.x, c.q1.y, c.q2.x, c.q2.y});
    json j{
        {"theta", sol.theta},
        {"family", sol.family == Family::Prograde ? "prograde" : "retrograde"},
        {"n_segments", sol.n},
        {"action", breakdown_to_json(sol.action)},
        {"start_params", {{"a1", sol.start.a1}, {"a2", sol.start.a2}}},
        {"end_params", {{"b1", sol.end.b1}, {"b2", sol.end.b2}, {"theta", sol.end.theta}}},
        {"grad_norm", sol.grad_norm},
        {"iterations", sol.iterations},
        {"converged", sol.converged},
        {"nodes", nodes},
    };
    return j.dump(2);
}

Solution solution_from_json(const std::string& text) {
    // json's own exception hierarchy sits outside logic/runtime_error;
    // translate so callers see malformed input as invalid_argument
    try {
        json j = json::parse(text);
        Solution sol;
        sol.theta = j.at("theta");
        std::string fam = j.at("family");
        if (fam == "prograde") sol.family = Family::Prograde;
        else if (fam == "retrograde") sol.family = Family::Retrograde;
        else throw std::invalid_argument("solution: unknown family " + fam);
        sol.n = j.at("n_segments");
        sol.action = breakdown_from_json(j.at("action"));
        sol.start = {j.at("start_params").at("a1"), j.at("start_params").at("a2")};
        sol.end = {j.at("end_params").at("b1"), j.at("end_params").at("b2"),
                   j.at("end_params").at("theta")};
        sol.grad_norm = j.at("grad_norm");
        sol.iterations = j.at("iterations");
        sol.converged = j.at("converged");
        const json& nodes = j.at("nodes");
        if (static_cast<int>(nodes.size()) != sol.n + 1)
            throw std::invalid_argument(
                "solution: node count does not match n_segments");
        sol.path.nodes.reserve(nodes.size());
        for (const json& row : nodes)
            sol.path.nodes.push_back({{row.at(0), row.at(1)}, {row.at(2), row.at(3)}});
        return sol;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("solution: malformed JSON: ") +
                                    e.what());
    }
}

void save_solution(const Solution& sol, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open " + path + " for writing");
    os << solution_to_json(sol) << "\n";
    if (!os) throw std::invalid_argument("write failed: " + path);
}

Solution load_solution(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::invalid_argument("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
    return solution_from_json(text);
}

void write_cert_csv(const CertReport& rep, std::ostream& os) {
    os << "theta,a_test,g1,margin\n";
    for (size_t i = 0; i < rep.theta_grid.size(); ++i)
        os << format_double(rep.theta_grid[i]) << ',' << format_double(rep.a_test[i])
           << ',' << format_double(rep.g1_curve[i]) << ','
           << format_double(rep.margin[i]) << '\n';
}

void write_orbit_csv(const ExtendedOrbit& orb, std::ostream& os) {
    os << "t,q1x,q1y,q2x,q2y,q3x,q3y,q4x,q4y\n";
    const DiscretePath& f = orb.full;
    for (size_t i = 0; i < f.nodes.size(); ++i) {
        double t = f.t_start + (f.t_end - f.t_start) * i / f.segments();
        const ReducedConfig& c = f.nodes[i];
        os << format_double(t) << ',' << format_double(c.q1.x) << ','
           << format_double(c.q1.y) << ',' << format_double(c.q2.x) << ','
           << format_double(c.q2.y) << ',' << format_double(c.q3().x) << ','
           << format_double(c.q3().y) << ',' << format_double(c.q4().x) << ','
           << format_double(c.q4().y) << '\n';
    }
}

void write_tables_csv(std::ostream& os) {
    os << "table,theta0,theta_lo,theta_hi,t,q1x,q1y,q2x,q2y\n";
    for (const TestPathTable& tab : builtin_tables()) {
        for (int j = 0; j <= 10; ++j) {
            os << tab.index + 1 << ',' << format_double(tab.theta0) << ','
               << format_double(tab.theta_lo) << ',' << format_double(tab.theta_hi)
               << ',' << format_double(j / 10.0) << ','
               << format_double(tab.nodes[j].q1.x) << ','
               << format_double(tab.nodes[j].q1.y) << ','
               << format_double(tab.nodes[j].q2.x) << ','
               << format_double(tab.nodes[j].q2.y) << '\n';
        }
    }
}

}  // namespace ddorbit
