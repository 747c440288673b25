#include "contagion/config.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "contagion/survival.hpp"

namespace contagion::config {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what) {
    std::ostringstream os;
    os << "config";
    if (line > 0) os << " line " << line;
    os << ": key '" << key << "': " << what;
    throw std::invalid_argument(os.str());
}

double parse_number(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(line, key, "malformed number '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
    if (value == "1" || value == "true" || value == "on") return true;
    if (value == "0" || value == "false" || value == "off") return false;
    fail(line, key, "expected a boolean (true/false/1/0), got '" + value + "'");
}

using Setter = std::function<void(RunSpec&, double)>;

const std::map<std::string, Setter>& numeric_setters() {
    static const std::map<std::string, Setter> m = {
        {"sigma", [](RunSpec& s, double v) { s.sigma1 = s.sigma2 = v; }},
        {"sigma1", [](RunSpec& s, double v) { s.sigma1 = v; }},
        {"sigma2", [](RunSpec& s, double v) { s.sigma2 = v; }},
        {"q", [](RunSpec& s, double v) { s.q1 = s.q2 = v; }},
        {"q1", [](RunSpec& s, double v) { s.q1 = v; }},
        {"q2", [](RunSpec& s, double v) { s.q2 = v; }},
        {"gamma", [](RunSpec& s, double v) { s.gamma1 = s.gamma2 = v; }},
        {"gamma1", [](RunSpec& s, double v) { s.gamma1 = v; }},
        {"gamma2", [](RunSpec& s, double v) { s.gamma2 = v; }},
        {"quality", [](RunSpec& s, double v) { s.quality1 = s.quality2 = v; }},
        {"quality1", [](RunSpec& s, double v) { s.quality1 = v; }},
        {"quality2", [](RunSpec& s, double v) { s.quality2 = v; }},
        {"face", [](RunSpec& s, double v) { s.face = v; }},
        {"notional", [](RunSpec& s, double v) { s.notional = v; }},
        {"rf", [](RunSpec& s, double v) { s.rf = v; }},
        {"rho", [](RunSpec& s, double v) { s.rho = v; }},
        {"T", [](RunSpec& s, double v) { s.maturity = v; s.t = std::min(s.t, v); }},
        {"t", [](RunSpec& s, double v) { s.t = v; }},
        {"omega", [](RunSpec& s, double v) { s.omega = v; }},
        {"recovery", [](RunSpec& s, double v) { s.recovery = v; }},
        {"R", [](RunSpec& s, double v) { s.recovery = v; }},
        {"series_tol", [](RunSpec& s, double v) { s.numerics.series_tol = v; }},
        {"n_max", [](RunSpec& s, double v) { s.numerics.n_max = static_cast<int>(v); }},
        {"theta_nodes", [](RunSpec& s, double v) { s.numerics.theta_nodes = static_cast<int>(v); }},
        {"r_nodes", [](RunSpec& s, double v) { s.numerics.r_nodes = static_cast<int>(v); }},
        {"inner_nodes", [](RunSpec& s, double v) { s.numerics.inner_nodes = static_cast<int>(v); }},
        {"sparse_level", [](RunSpec& s, double v) { s.numerics.sparse_level = static_cast<int>(v); }},
        {"time_nodes", [](RunSpec& s, double v) { s.numerics.time_nodes = static_cast<int>(v); }},
        {"paths", [](RunSpec& s, double v) { s.mc.paths = static_cast<std::int64_t>(v); }},
        {"steps_per_year", [](RunSpec& s, double v) { s.mc.steps_per_year = static_cast<int>(v); }},
        {"seed", [](RunSpec& s, double v) { s.mc.seed = static_cast<std::uint64_t>(v); }},
    };
    return m;
}

void apply_key(RunSpec& spec, const std::string& key, const std::string& value, int line) {
    if (key == "command") {
        try {
            spec.command = command_from_string(value);
        } catch (const std::exception& e) {
            fail(line, key, e.what());
        }
        return;
    }
    if (key == "target") {
        try {
            spec.target = command_from_string(value);
        } catch (const std::exception& e) {
            fail(line, key, e.what());
        }
        if (spec.target == Command::sweep || spec.target == Command::validate)
            fail(line, key, "sweep target must be survival, bond or cds");
        return;
    }
    if (key == "flavor") {
        try {
            spec.flavor = cds::flavor_from_string(value);
        } catch (const std::exception& e) {
            fail(line, key, e.what());
        }
        return;
    }
    if (key == "grid") {
        if (value == "tensor") spec.numerics.grid_kind = GridKind::tensor;
        else if (value == "sparse") spec.numerics.grid_kind = GridKind::sparse;
        else fail(line, key, "expected tensor or sparse, got '" + value + "'");
        return;
    }
    if (key == "bridge") {
        spec.mc.bridge = parse_bool(key, value, line);
        return;
    }
    if (key == "antithetic") {
        spec.mc.antithetic = parse_bool(key, value, line);
        return;
    }
    if (key == "out") {
        spec.out = value;
        return;
    }
    if (key == "sweep") {
        auto colon = value.find(':');
        if (colon == std::string::npos)
            fail(line, key, "expected 'axis: v1,v2,...', got '" + value + "'");
        std::string axis = trim(value.substr(0, colon));
        if (!numeric_setters().count(axis))
            fail(line, key, "sweep axis '" + axis + "' is not a numeric parameter");
        std::vector<double> values;
        std::stringstream ss(value.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) values.push_back(parse_number(key, item, line));
        }
        if (values.empty()) fail(line, key, "sweep axis has no values");
        spec.sweep_key = axis;
        spec.sweep_values = std::move(values);
        return;
    }
    auto it = numeric_setters().find(key);
    if (it == numeric_setters().end()) fail(line, key, "unknown key");
    it->second(spec, parse_number(key, value, line));
}

void check_range(bool ok, const std::string& key, const std::string& what) {
    if (!ok) fail(0, key, what);
}

void validate_spec(const RunSpec& spec) {
    check_range(spec.sigma1 > 0.0 && spec.sigma2 > 0.0, "sigma", "must be > 0");
    check_range(std::abs(spec.rho) <= 0.99, "rho",
                "value " + fmt(spec.rho) + " outside admissible interval [-0.99, 0.99]");
    check_range(spec.quality1 >= 1.0 && spec.quality2 >= 1.0, "quality",
                "initial credit quality must be >= 1");
    check_range(spec.face > 0.0, "face", "must be > 0");
    check_range(spec.notional > 0.0, "notional", "must be > 0");
    check_range(spec.maturity > 0.0, "T", "must be > 0");
    check_range(spec.t > 0.0 && spec.t <= spec.maturity, "t", "must lie in (0, T]");
    check_range(spec.omega > 0.0 && spec.omega <= 1.0, "omega", "must lie in (0, 1]");
    check_range(spec.recovery >= 0.0 && spec.recovery <= 1.0, "recovery", "must lie in [0, 1]");
    spec.numerics.validate();
    spec.mc.validate();
    if (spec.command == Command::sweep && spec.sweep_key.empty())
        fail(0, "sweep", "sweep command requires exactly one sweep axis");
    if (spec.command != Command::sweep && !spec.sweep_key.empty())
        fail(0, "sweep", "sweep axis is only valid with command=sweep");
}

}  // namespace

Command command_from_string(const std::string& s) {
    if (s == "survival") return Command::survival;
    if (s == "bond") return Command::bond;
    if (s == "cds") return Command::cds;
    if (s == "sweep") return Command::sweep;
    if (s == "validate") return Command::validate;
    throw std::invalid_argument("unknown command: " + s);
}

std::string to_string(Command c) {
    switch (c) {
        case Command::survival: return "survival";
        case Command::bond: return "bond";
        case Command::cds: return "cds";
        case Command::sweep: return "sweep";
        case Command::validate: return "validate";
    }
    return "?";
}

PairModel RunSpec::model() const {
    PairModel m;
    m.firm1 = {quality1 * face * std::exp(-gamma1 * maturity), sigma1, q1, gamma1, face};
    m.firm2 = {quality2 * face * std::exp(-gamma2 * maturity), sigma2, q2, gamma2, face};
    m.rho = rho;
    m.rf = rf;
    m.horizon = maturity;
    return m;
}

bond::BondContract RunSpec::bond_contract() const { return {face, maturity, omega}; }

cds::CdsContract RunSpec::cds_contract() const { return {notional, maturity, recovery, flavor}; }

RunSpec parse_config(const std::string& text) {
    RunSpec spec;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = trim(raw);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line) +
                                        ": expected 'key = value'");
        apply_key(spec, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line);
    }
    validate_spec(spec);
    return spec;
}

std::string render(const RunSpec& spec) {
    std::ostringstream os;
    auto num = [&](const char* k, double v) { os << k << " = " << fmt(v, "%.17g") << "\n"; };
    os << "command = " << to_string(spec.command) << "\n";
    os << "target = " << to_string(spec.target) << "\n";
    num("sigma1", spec.sigma1);
    num("sigma2", spec.sigma2);
    num("q1", spec.q1);
    num("q2", spec.q2);
    num("gamma1", spec.gamma1);
    num("gamma2", spec.gamma2);
    num("quality1", spec.quality1);
    num("quality2", spec.quality2);
    num("face", spec.face);
    num("notional", spec.notional);
    num("rf", spec.rf);
    num("rho", spec.rho);
    num("T", spec.maturity);
    num("t", spec.t);
    num("omega", spec.omega);
    num("recovery", spec.recovery);
    os << "flavor = " << cds::to_string(spec.flavor) << "\n";
    num("series_tol", spec.numerics.series_tol);
    num("n_max", spec.numerics.n_max);
    num("theta_nodes", spec.numerics.theta_nodes);
    num("r_nodes", spec.numerics.r_nodes);
    num("inner_nodes", spec.numerics.inner_nodes);
    os << "grid = " << (spec.numerics.grid_kind == GridKind::tensor ? "tensor" : "sparse") << "\n";
    num("sparse_level", spec.numerics.sparse_level);
    num("time_nodes", spec.numerics.time_nodes);
    num("paths", static_cast<double>(spec.mc.paths));
    num("steps_per_year", spec.mc.steps_per_year);
    num("seed", static_cast<double>(spec.mc.seed));
    os << "bridge = " << (spec.mc.bridge ? "true" : "false") << "\n";
    os << "antithetic = " << (spec.mc.antithetic ? "true" : "false") << "\n";
    if (!spec.sweep_key.empty()) {
        os << "sweep = " << spec.sweep_key << ":";
        for (std::size_t i = 0; i < spec.sweep_values.size(); ++i)
            os << (i ? "," : " ") << fmt(spec.sweep_values[i], "%.17g");
        os << "\n";
    }
    if (!spec.out.empty()) os << "out = " << spec.out << "\n";
    return os.str();
}

namespace {

std::string survival_header() { return "t,rho,P"; }
std::string bond_header() { return "rho,T,omega,yield_bp_over_rf,yield"; }
std::string cds_header() { return "flavor,rho,T,R,spread_bp"; }

std::string survival_row(const RunSpec& s) {
    std::string prefix = fmt(s.t) + "," + fmt(s.rho) + ",";
    try {
        double P = survival::joint_survival(s.model(), s.t, s.numerics);
        return prefix + fmt(P);
    } catch (const std::exception&) {
        return prefix + "failed";
    }
}

std::string bond_row(const RunSpec& s) {
    std::string prefix = fmt(s.rho) + "," + fmt(s.maturity) + "," + fmt(s.omega) + ",";
    try {
        double y = bond::bond_yield(s.model(), s.bond_contract(), s.numerics);
        return prefix + fmt((y - s.rf) * 1e4) + "," + fmt(y);
    } catch (const std::exception&) {
        return prefix + "failed,failed";
    }
}

std::string cds_row(const RunSpec& s) {
    std::string prefix = cds::to_string(s.flavor) + "," + fmt(s.rho) + "," + fmt(s.maturity) +
                         "," + fmt(s.recovery) + ",";
    try {
        double c = cds::spread(s.model(), s.cds_contract(), s.numerics);
        return prefix + fmt(c * 1e4);
    } catch (const std::exception&) {
        return prefix + "failed";
    }
}

std::string row_for(Command target, const RunSpec& s) {
    switch (target) {
        case Command::survival: return survival_row(s);
        case Command::bond: return bond_row(s);
        case Command::cds: return cds_row(s);
        default: throw std::logic_error("unsupported sweep target");
    }
}

std::string header_for(Command target) {
    switch (target) {
        case Command::survival: return survival_header();
        case Command::bond: return bond_header();
        case Command::cds: return cds_header();
        default: throw std::logic_error("unsupported sweep target");
    }
}

std::string validate_rows(const RunSpec& s) {
    std::ostringstream os;
    auto row = [&](const std::string& name, const std::function<double()>& analytic,
                   const std::function<mc::McEstimate()>& oracle) {
        os << name << ",";
        try {
            double a = analytic();
            mc::McEstimate e = oracle();
            double z = e.std_error > 0.0 ? (e.mean - a) / e.std_error : 0.0;
            os << fmt(a) << "," << fmt(e.mean) << "," << fmt(e.std_error) << "," << fmt(z);
        } catch (const std::exception&) {
            os << "failed,failed,failed,failed";
        }
        os << "\n";
    };
    PairModel m = s.model();
    row("joint_survival",
        [&] { return survival::joint_survival(m, s.maturity, s.numerics); },
        [&] { return mc::estimate_joint_survival(m, s.maturity, s.mc); });
    row("bond_price",
        [&] {
            return bond::discounted_maturity_payment(m, s.bond_contract(), s.numerics) +
                   bond::discounted_default_payment(m, s.bond_contract(), s.numerics);
        },
        [&] { return mc::estimate_bond_price(m, s.bond_contract(), s.mc); });
    for (cds::Flavor f : {cds::Flavor::first, cds::Flavor::second,
                          cds::Flavor::second_contagion, cds::Flavor::counterparty_homogeneous}) {
        cds::CdsContract c = s.cds_contract();
        c.flavor = f;
        row("cds_" + cds::to_string(f),
            [&] { return cds::spread(m, c, s.numerics); },
            [&] { return mc::estimate_cds_legs(m, c, s.mc).spread; });
    }
    return os.str();
}

}  // namespace

std::string run(const RunSpec& spec) {
    validate_spec(spec);
    std::ostringstream os;
    switch (spec.command) {
        case Command::survival:
            os << survival_header() << "\n" << survival_row(spec) << "\n";
            break;
        case Command::bond:
            os << bond_header() << "\n" << bond_row(spec) << "\n";
            break;
        case Command::cds:
            os << cds_header() << "\n" << cds_row(spec) << "\n";
            break;
        case Command::sweep: {
            os << header_for(spec.target) << "\n";
            for (double v : spec.sweep_values) {
                RunSpec point = spec;
                point.sweep_key.clear();
                point.sweep_values.clear();
                point.command = spec.target;
                numeric_setters().at(spec.sweep_key)(point, v);
                os << row_for(spec.target, point) << "\n";
            }
            break;
        }
        case Command::validate:
            os << "quantity,analytic,mc_mean,mc_se,z_score\n" << validate_rows(spec);
            break;
    }
    return os.str();
}

}  // namespace contagion::config
