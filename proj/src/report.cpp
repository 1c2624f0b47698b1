#include "blochlab/report.hpp"

#include <cmath>
#include <cstdio>

namespace blochlab {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void dump_into(const json& j, int indent, int level, std::string& out) {
    const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (level + 1)), ' ') : "";
    const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * level), ' ') : "";
    const char* sep = indent > 0 ? ": " : ":";
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += pad;
                out += json(it.key()).dump();
                out += sep;
                dump_into(it.value(), indent, level + 1, out);
            }
            out += close;
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ',';
                first = false;
                out += pad;
                dump_into(el, indent, level + 1, out);
            }
            out += close;
            out += ']';
            return;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            // JSON has no infinities or NaN.
            out += std::isfinite(v) ? fmt17(v) : "null";
            return;
        }
        default: out += j.dump(); return;
    }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
    std::string out;
    dump_into(j, indent, 0, out);
    return out;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CriterionReport& r) {
    json shells = json::array();
    for (const auto& s : r.shell_sups)
        shells.push_back({{"shell", s.shell}, {"sup", s.sup}, {"arg", to_json(s.arg)}, {"count", s.count}});
    return {{"name", r.name},
            {"bucketing", r.by_phi ? "phi" : "z"},
            {"sup_value", r.sup_value},
            {"arg_sup", to_json(r.arg_sup)},
            {"boundary_limsup_estimate", r.boundary_limsup_estimate},
            {"vacuous_boundary", r.vacuous_boundary},
            {"shell_sups", shells}};
}

json to_json(const Thresholds& t) { return {{"divergence", t.divergence}, {"compact_tol", t.compact_tol}}; }

json to_json(const Verdict& v) {
    json ev = json::array();
    for (const auto& r : v.evidence) ev.push_back(to_json(r));
    json out = {{"theorem", to_string(v.theorem)},
                {"conclusion", to_string(v.conclusion)},
                {"thresholds", to_json(v.thresholds)},
                {"evidence", ev},
                {"note", v.note}};
    out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
    return out;
}

}  // namespace blochlab
