#include "plw/run_config.hpp"

#include "plw/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace plw {

namespace {

constexpr std::array<std::pair<Suite, const char*>, 6> kSuiteNames{{
    {Suite::Difference, "difference"},
    {Suite::DiffDiff, "diffdiff"},
    {Suite::Compat, "compat"},
    {Suite::Ladder, "ladder"},
    {Suite::Asym, "asym"},
    {Suite::Pearson, "pearson"},
}};

// Precision used only to validate decimal strings.
constexpr Bits kCheckPrecision = 128;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t end = text.find(sep, begin);
        out.push_back(text.substr(begin, end - begin));
        if (end == std::string::npos) return out;
        begin = end + 1;
    }
}

int parse_int(const std::string& text, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(std::string(what) + ": not an integer: '" + text + "'");
    return value;
}

template <class T>
T get_field(const nlohmann::ordered_json& doc, const char* key) {
    if (!doc.contains(key)) throw ConfigError(std::string("config: missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: field '") + key + "': " + e.what());
    }
}

}  // namespace

const char* to_string(Suite suite) {
    for (const auto& [s, name] : kSuiteNames)
        if (s == suite) return name;
    return "?";
}

const char* to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

const char* to_string(Spacing spacing) { return spacing == Spacing::Linear ? "linear" : "log"; }

Suite parse_suite(const std::string& name) {
    for (const auto& [s, n] : kSuiteNames)
        if (name == n) return s;
    throw ConfigError("unknown suite '" + name + "'");
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("unknown format '" + name + "' (expected csv or json)");
}

Spacing parse_spacing(const std::string& name) {
    if (name == "linear") return Spacing::Linear;
    if (name == "log") return Spacing::Log;
    throw ConfigError("unknown spacing '" + name + "' (expected linear or log)");
}

const std::vector<Suite>& all_suites() {
    static const std::vector<Suite> suites = [] {
        std::vector<Suite> out;
        for (const auto& entry : kSuiteNames) out.push_back(entry.first);
        return out;
    }();
    return suites;
}

std::vector<Suite> default_suites() {
    std::vector<Suite> out;
    for (Suite s : all_suites())
        if (s != Suite::Asym) out.push_back(s);
    return out;
}

Real parse_decimal(const std::string& text, Bits prec, const char* what) {
    try {
        return Real::from_string(text, prec);
    } catch (const std::invalid_argument&) {
        throw ConfigError(std::string(what) + ": not a decimal number: '" + text + "'");
    }
}

TGridSpec TGridSpec::parse(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() < 3 || parts.size() > 4)
        throw ConfigError("t-grid must be start:stop:count[:spacing], got '" + text + "'");
    TGridSpec spec;
    spec.start = parts[0];
    spec.stop = parts[1];
    spec.count = parse_int(parts[2], "t-grid count");
    if (parts.size() == 4) spec.spacing = parse_spacing(parts[3]);
    return spec;
}

void RunConfig::validate() {
    const Real l = parse_decimal(lambda, kCheckPrecision, "lambda");
    if (l < 0L) throw ConfigError("lambda must be >= 0");
    if (t_grid) {
        const Real a = parse_decimal(t_grid->start, kCheckPrecision, "t-grid start");
        const Real b = parse_decimal(t_grid->stop, kCheckPrecision, "t-grid stop");
        if (a <= 0L || b <= 0L) throw ConfigError("t-grid endpoints must be > 0");
        if (b < a) throw ConfigError("t-grid stop must be >= start");
        if (t_grid->count < 1) throw ConfigError("t-grid count must be >= 1");
    } else if (parse_decimal(t, kCheckPrecision, "t") <= 0L) {
        throw ConfigError("t must be > 0");
    }
    if (n_max < 2) throw ConfigError("nmax must be >= 2");
    if (target_digits < 10) throw ConfigError("digits must be >= 10");
    if (h && parse_decimal(*h, kCheckPrecision, "h") <= 0L) throw ConfigError("h must be > 0");
    if (corrupt_beta && (*corrupt_beta < 1 || *corrupt_beta > n_max))
        throw ConfigError("corrupt-beta index must lie in [1, nmax]");

    std::vector<Suite> canonical;
    for (Suite s : all_suites())
        if (std::find(suites.begin(), suites.end(), s) != suites.end()) canonical.push_back(s);
    suites = std::move(canonical);
    policy().validate();
}

std::vector<Suite> RunConfig::effective_suites() const { return suites.empty() ? default_suites() : suites; }

bool RunConfig::has_suite(Suite suite) const {
    const auto s = effective_suites();
    return std::find(s.begin(), s.end(), suite) != s.end();
}

NumericPolicy RunConfig::policy() const { return make_policy(n_max + 1, target_digits); }

Real RunConfig::lambda_value(Bits prec) const { return parse_decimal(lambda, prec, "lambda"); }

std::vector<Real> RunConfig::t_values(Bits prec) const {
    if (!t_grid) return {parse_decimal(t, prec, "t")};
    const Real a = parse_decimal(t_grid->start, prec, "t-grid start");
    const Real b = parse_decimal(t_grid->stop, prec, "t-grid stop");
    const int count = t_grid->count;
    std::vector<Real> out;
    for (int i = 0; i < count; ++i) {
        if (count == 1) {
            out.push_back(a);
        } else if (i == count - 1) {
            out.push_back(b);
        } else if (t_grid->spacing == Spacing::Linear) {
            out.push_back(a + (b - a) * static_cast<long>(i) / static_cast<long>(count - 1));
        } else {
            const Real u = Real(static_cast<long>(i), prec) / static_cast<long>(count - 1);
            out.push_back(a * exp(u * log(b / a)));
        }
    }
    return out;
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["lambda"] = lambda;
    j["t"] = t;
    if (t_grid) {
        j["t_grid"] = {{"start", t_grid->start},
                       {"stop", t_grid->stop},
                       {"count", t_grid->count},
                       {"spacing", to_string(t_grid->spacing)}};
    } else {
        j["t_grid"] = nullptr;
    }
    j["n_max"] = n_max;
    j["target_digits"] = target_digits;
    nlohmann::ordered_json s = nlohmann::ordered_json::array();
    for (Suite suite : suites) s.push_back(to_string(suite));
    j["suites"] = std::move(s);
    j["format"] = to_string(format);
    j["out"] = out_dir;
    j["h"] = h ? nlohmann::ordered_json(*h) : nlohmann::ordered_json(nullptr);
    j["richardson"] = richardson;
    j["corrupt_beta"] = corrupt_beta ? nlohmann::ordered_json(*corrupt_beta) : nlohmann::ordered_json(nullptr);
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::ordered_json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    RunConfig c;
    c.lambda = get_field<std::string>(doc, "lambda");
    c.t = get_field<std::string>(doc, "t");
    if (const auto& g = doc.at("t_grid"); !g.is_null()) {
        TGridSpec spec;
        spec.start = get_field<std::string>(g, "start");
        spec.stop = get_field<std::string>(g, "stop");
        spec.count = get_field<int>(g, "count");
        spec.spacing = parse_spacing(get_field<std::string>(g, "spacing"));
        c.t_grid = spec;
    }
    c.n_max = get_field<int>(doc, "n_max");
    c.target_digits = get_field<int>(doc, "target_digits");
    for (const auto& name : get_field<std::vector<std::string>>(doc, "suites")) c.suites.push_back(parse_suite(name));
    c.format = parse_format(get_field<std::string>(doc, "format"));
    c.out_dir = get_field<std::string>(doc, "out");
    if (const auto& h = doc.at("h"); !h.is_null()) c.h = get_field<std::string>(doc, "h");
    c.richardson = get_field<bool>(doc, "richardson");
    if (const auto& cb = doc.at("corrupt_beta"); !cb.is_null()) c.corrupt_beta = get_field<int>(doc, "corrupt_beta");
    c.validate();
    return c;
}

std::string RunConfig::serialize() const { return to_json().dump(2) + "\n"; }

}  // namespace plw
