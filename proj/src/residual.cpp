#include "plw/residual.hpp"

#include <algorithm>
#include <ostream>

namespace plw {

Real Tracked::normalized() const {
    Real r = abs(value_);
    if (!magnitude_.is_zero()) r /= magnitude_;
    return r;
}

ResidualEntry make_entry(std::string identity, int n, const Real& lambda, const Real& t, const Real& residual,
                         const Real& scale, const Real& tolerance) {
    ResidualEntry e;
    e.identity = std::move(identity);
    e.n = n;
    e.lambda = lambda;
    e.t = t;
    e.residual = residual;
    e.scale = scale;
    e.tolerance = tolerance;
    e.pass = residual.is_finite() && residual <= tolerance;
    return e;
}

ResidualEntry make_entry(std::string identity, int n, const Real& lambda, const Real& t, const Tracked& identity_value,
                         const Real& tolerance) {
    return make_entry(std::move(identity), n, lambda, t, identity_value.normalized(), identity_value.magnitude(),
                      tolerance);
}

void ResidualReport::append(const ResidualReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool ResidualReport::all_pass() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const ResidualEntry& e) { return e.pass; });
}

std::size_t ResidualReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](const ResidualEntry& e) { return !e.pass; }));
}

std::vector<ResidualReport::Summary> ResidualReport::summary() const {
    std::vector<Summary> out;
    for (const auto& e : entries_) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Summary& s) { return s.identity == e.identity; });
        if (it == out.end()) {
            out.push_back({e.identity, e.residual, 0, 0});
            it = std::prev(out.end());
        }
        if (it->max_residual < e.residual || !e.residual.is_finite()) it->max_residual = e.residual;
        ++it->count;
        if (!e.pass) ++it->failed;
    }
    return out;
}

nlohmann::ordered_json ResidualReport::to_json() const {
    const int digits = policy_.target_digits;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
        nlohmann::ordered_json item;
        item["identity"] = e.identity;
        item["n"] = e.n;
        item["lambda"] = e.lambda.to_string(digits);
        item["t"] = e.t.to_string(digits);
        item["residual"] = e.residual.to_string(digits);
        item["tolerance"] = e.tolerance.to_string(digits);
        item["pass"] = e.pass;
        list.push_back(std::move(item));
    }
    return list;
}

void ResidualReport::write_csv(std::ostream& os) const {
    const int digits = policy_.target_digits;
    os << "# precision_bits = " << policy_.precision_bits << '\n'
       << "# target_digits = " << digits << '\n'
       << "identity,n,lambda,t,residual,tolerance,pass\n";
    for (const auto& e : entries_)
        os << e.identity << ',' << e.n << ',' << e.lambda.to_string(digits) << ',' << e.t.to_string(digits) << ','
           << e.residual.to_string(digits) << ',' << e.tolerance.to_string(digits) << ','
           << (e.pass ? "true" : "false") << '\n';
}

}  // namespace plw
