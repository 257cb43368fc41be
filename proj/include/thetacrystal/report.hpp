#pragma once

#include <chrono>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "approx.hpp"
#include "exact.hpp"

namespace tc {

using json = nlohmann::json;

enum class Status { Pass, Fail, Inconclusive };

inline std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "fail";
}

inline Status parse_status(const std::string& s) {
    if (s == "pass") return Status::Pass;
    if (s == "fail") return Status::Fail;
    if (s == "inconclusive") return Status::Inconclusive;
    throw std::invalid_argument("unknown status: " + s);
}

struct Claim {
    std::string id, anchor;
    Status status = Status::Fail;
    json computed, expected;
    std::string tol;  // "exact" or a pinned numeric tolerance
    double ms = 0;

    friend bool operator==(const Claim& a, const Claim& b) {
        return a.id == b.id && a.anchor == b.anchor && a.status == b.status && a.computed == b.computed &&
               a.expected == b.expected && a.tol == b.tol && a.ms == b.ms;
    }
};

struct VerificationReport {
    std::string command;
    json params = json::object();
    std::vector<Claim> claims;

    bool any(Status s) const {
        for (const auto& c : claims)
            if (c.status == s) return true;
        return false;
    }
    // 1 on any failure, else 3 on any inconclusive claim, else 0
    int exit_code() const { return any(Status::Fail) ? 1 : any(Status::Inconclusive) ? 3 : 0; }

    void append(const VerificationReport& other) { claims.insert(claims.end(), other.claims.begin(), other.claims.end()); }

    friend bool operator==(const VerificationReport& a, const VerificationReport& b) {
        return a.command == b.command && a.params == b.params && a.claims == b.claims;
    }
};

inline void to_json(json& j, const Claim& c) {
    j = json{{"id", c.id},           {"anchor", c.anchor}, {"status", status_name(c.status)},
             {"computed", c.computed}, {"expected", c.expected}, {"tol", c.tol}, {"ms", c.ms}};
}

inline void from_json(const json& j, Claim& c) {
    c.id = j.at("id").get<std::string>();
    c.anchor = j.at("anchor").get<std::string>();
    c.status = parse_status(j.at("status").get<std::string>());
    c.computed = j.at("computed");
    c.expected = j.at("expected");
    c.tol = j.at("tol").get<std::string>();
    c.ms = j.at("ms").get<double>();
}

inline void to_json(json& j, const VerificationReport& r) {
    j = json{{"command", r.command}, {"params", r.params}, {"claims", r.claims}};
}

inline void from_json(const json& j, VerificationReport& r) {
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    r.claims = j.at("claims").get<std::vector<Claim>>();
}

inline std::string emit_json(const VerificationReport& r, int indent = 2) { return json(r).dump(indent); }
inline VerificationReport parse_json(const std::string& s) { return json::parse(s).get<VerificationReport>(); }

// ---- value encodings ----

// decimal strings to the full working precision
inline json complex_json(const ApproxComplex& z) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", z.err);
    return json{{"re", z.re_str()}, {"im", z.im_str()}, {"err", std::string(buf)}};
}

template <class T>
json exact_json(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

// ---- text output ----

inline std::string format_value(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && v.contains("re") && v.contains("im") && v.contains("err") && v.size() == 3) {
        auto s = [](const json& x) {
            std::string t = x.get<std::string>();
            double d = std::strtod(t.c_str(), nullptr);
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.12g", d);
            return std::string(buf);
        };
        return s(v["re"]) + " + " + s(v["im"]) + "i +/- " + v["err"].get<std::string>();
    }
    return v.dump();
}

inline void print_text(std::ostream& os, const VerificationReport& r) {
    os << r.command;
    if (!r.params.empty()) os << " " << r.params.dump();
    os << "\n";
    std::size_t pass = 0, fail = 0, inc = 0;
    for (const auto& c : r.claims) {
        const char* tag = c.status == Status::Pass ? "PASS" : c.status == Status::Fail ? "FAIL" : "INCONCLUSIVE";
        os << "  [" << tag << "] " << c.id << " (" << c.anchor << ")\n";
        os << "      computed: " << format_value(c.computed) << "\n";
        os << "      expected: " << format_value(c.expected) << "\n";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", c.ms);
        os << "      tol: " << c.tol << "  time: " << buf << " ms\n";
        (c.status == Status::Pass ? pass : c.status == Status::Fail ? fail : inc)++;
    }
    os << pass << " passed, " << fail << " failed, " << inc << " inconclusive\n";
}

// ---- building reports ----

struct Outcome {
    Status status;
    json computed, expected;
};

inline Outcome outcome(bool ok, json computed, json expected) {
    return {ok ? Status::Pass : Status::Fail, std::move(computed), std::move(expected)};
}

class ReportBuilder {
public:
    explicit ReportBuilder(std::string command, json params = json::object()) {
        rep_.command = std::move(command);
        rep_.params = std::move(params);
    }

    // runs f, timing it; exceptions turn into a failed claim carrying the message
    template <class F>
    const Claim& check(const std::string& id, const std::string& anchor, const std::string& tol, F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        Claim c;
        c.id = id;
        c.anchor = anchor;
        c.tol = tol;
        try {
            Outcome o = f();
            c.status = o.status;
            c.computed = std::move(o.computed);
            c.expected = std::move(o.expected);
        } catch (const std::exception& e) {
            c.status = Status::Fail;
            c.computed = std::string("error: ") + e.what();
            c.expected = nullptr;
        }
        c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep_.claims.push_back(std::move(c));
        return rep_.claims.back();
    }

    VerificationReport& report() { return rep_; }
    VerificationReport take() { return std::move(rep_); }

private:
    VerificationReport rep_;
};

}  // namespace tc
