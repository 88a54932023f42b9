#include "cosupp/cli/report.hpp"

#include <sstream>

namespace cosupp {

std::pair<int, int> parse_degree_range(const std::string& text) {
    size_t dots = text.find("..");
    if (dots == std::string::npos) fail(ErrorKind::DegreeRange, "expected LO..HI, got '" + text + "'");
    int lo = 0, hi = 0;
    try {
        size_t u1 = 0, u2 = 0;
        std::string a = text.substr(0, dots), b = text.substr(dots + 2);
        lo = std::stoi(a, &u1);
        hi = std::stoi(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        fail(ErrorKind::DegreeRange, "expected LO..HI, got '" + text + "'");
    }
    if (lo > hi) fail(ErrorKind::DegreeRange, "empty degree range " + text);
    if (hi - lo + 1 > kMaxDegreeSpan) fail(ErrorKind::DegreeRange, "degree range " + text + " is wider than " + std::to_string(kMaxDegreeSpan));
    return {lo, hi};
}

CohomologyTable restrict_table(const CohomologyTable& t, const DegreeRange& r) {
    if (!r) return t;
    auto out_of = [&](int d) { return d < r->first || d > r->second; };
    CohomologyTable o = t;
    auto prune = [&](auto& m) { std::erase_if(m, [&](const auto& kv) { return out_of(kv.first); }); };
    for (auto& l : o.local) {
        prune(l.raw);
        prune(l.inner);
        prune(l.inner2);
        prune(l.status);
    }
    prune(o.generic.ranks);
    return o;
}

Certificate restrict_certificate(const Certificate& c, bool nonvanishing, const DegreeRange& r) {
    if (!r) return c;
    Certificate o;
    bool nonzero = false, unsure = false;
    std::string first_nz, first_unsure;
    for (const auto& t : c.tables) {
        CohomologyTable rt = restrict_table(t, r);
        std::string s = rt.overall();
        if (s == "nonzero" && first_nz.empty()) first_nz = rt.first_nonzero();
        if (s == "inconclusive" && first_unsure.empty()) first_unsure = rt.first_nonzero();
        nonzero |= s == "nonzero";
        unsure |= s == "inconclusive";
        o.tables.push_back(std::move(rt));
    }
    if (nonvanishing) {
        o.status = nonzero ? "certified" : unsure ? "inconclusive" : "failed";
        o.detail = nonzero ? first_nz : unsure ? first_unsure : "cohomology vanishes in the degree range";
    } else {
        o.status = nonzero ? "failed" : unsure ? "inconclusive" : "certified";
        o.detail = nonzero ? first_nz : first_unsure;
    }
    return o;
}

Json invariants_json(const LocalResult& r, const std::vector<int>& lengths, const SpecFragment& F) {
    Json a = Json::array();
    const PrimeIdeal& p = F.prime(r.pi);
    bool integral = family(F.home()) == Family::Z && p.kind == PrimeIdeal::Kind::Principal;
    for (int len : lengths) {
        if (r.monomial) {
            a.push_back("k");
        } else if (integral) {
            std::string g = r.prime.substr(1, r.prime.size() - 2);
            mpz_class v;
            mpz_pow_ui(v.get_mpz_t(), mpz_class(g).get_mpz_t(), static_cast<unsigned long>(len));
            a.push_back(v.get_str());
        } else {
            a.push_back(r.prime + "^" + std::to_string(len));
        }
    }
    return a;
}

namespace {

Json degree_map(const std::map<int, std::vector<int>>& m) {
    Json o = Json::object();
    for (const auto& [d, v] : m) o[std::to_string(d)] = v;
    return o;
}

} // namespace

Json table_json(const CohomologyTable& t, const SpecFragment& F) {
    Json j;
    j["window"] = {{"a", t.w.a}, {"b", t.w.b}, {"g", t.w.g}};
    j["overall"] = t.overall();
    Json loc = Json::array();
    for (const auto& r : t.local) {
        Json e;
        e["prime"] = r.prime;
        e["model"] = r.monomial ? "residue-field dimensions" : "invariant lengths";
        e["raw"] = degree_map(r.raw);
        e["persistent"] = degree_map(r.inner);
        e["persistent_larger"] = degree_map(r.inner2);
        Json inv = Json::object();
        for (const auto& [d, v] : r.raw) inv[std::to_string(d)] = invariants_json(r, v, F);
        e["raw_invariants"] = inv;
        Json st = Json::object();
        for (const auto& [d, s] : r.status) st[std::to_string(d)] = s;
        e["status"] = st;
        loc.push_back(e);
    }
    j["local"] = loc;
    Json g;
    g["checked"] = t.generic.checked;
    if (t.generic.checked) {
        Json ranks = Json::object();
        for (const auto& [d, n] : t.generic.ranks) ranks[std::to_string(d)] = n;
        g["ranks"] = ranks;
    } else {
        g["note"] = t.generic.note;
    }
    j["generic"] = g;
    return j;
}

Json certificate_json(const Certificate& c, const SpecFragment& F) {
    Json j;
    j["status"] = c.status;
    j["detail"] = c.detail;
    Json ts = Json::array();
    for (const auto& t : c.tables) ts.push_back(table_json(t, F));
    j["tables"] = ts;
    return j;
}

Json complex_json(const Complex& X) {
    const SpecFragment& F = *X.F;
    const Ring& R = F.home();
    Json j;
    j["lo"] = X.lo;
    Json terms = Json::array();
    for (int i = X.lo; i <= X.hi(); ++i) {
        Json atoms = Json::array();
        for (const auto& a : X.term(i)) atoms.push_back(atom_str(F, a));
        terms.push_back({{"degree", i}, {"term", term_str(F, X.term(i))}, {"atoms", atoms}});
    }
    j["terms"] = terms;
    Json ds = Json::array();
    for (int i = X.lo; i < X.hi(); ++i) {
        Mat M = X.diff(i);
        Json rows = Json::array();
        for (size_t r = 0; r < M.rows(); ++r) {
            Json row = Json::array();
            for (size_t c = 0; c < M.cols(); ++c) row.push_back(element_str(M(r, c), R));
            rows.push_back(row);
        }
        ds.push_back({{"from", i}, {"matrix", rows}});
    }
    j["d"] = ds;
    return j;
}

Json slices_json(const SpecFragment& F, const Slices& S) {
    Json j = Json::array();
    for (const auto& s : S) {
        Json row = Json::array();
        for (int p : s) row.push_back(F.name(p));
        j.push_back(row);
    }
    return j;
}

Json cech_json(const CechComplex& C) {
    const SpecFragment& F = *C.tot.F;
    Json j;
    j["slices"] = slices_json(F, C.slices);
    j["tot"] = complex_json(C.tot);
    Json labels = Json::array();
    for (int i = C.tot.lo; i <= C.tot.hi(); ++i) {
        const auto& ls = C.labels_at(i);
        const Term& t = C.tot.term(i);
        for (size_t k = 0; k < ls.size(); ++k) {
            const CechLabel& l = ls[k];
            std::string word;
            for (size_t s = l.choice.size(); s-- > 0;) word += "lambda^" + F.name(l.choice[s]) + " ";
            Json e;
            e["degree"] = i;
            e["column"] = l.column();
            e["sequence"] = l.seq;
            e["word"] = word + "X^" + std::to_string(l.xdeg) + "[" + std::to_string(l.xatom) + "]";
            e["atom"] = k < t.size() ? atom_str(F, t[k]) : "";
            labels.push_back(e);
        }
    }
    j["labels"] = labels;
    return j;
}

Json scene_json(const Scene& s) {
    Json j;
    j["ring"] = s.ring;
    j["fragment"] = s.fragment;
    Json names = Json::array();
    for (const auto& [n, m] : s.modules) names.push_back(n);
    for (const auto& [n, c] : s.complexes) names.push_back(n);
    j["objects"] = names;
    Json subs = Json::object();
    for (const auto& [n, ps] : s.subsets) subs[n] = ps;
    j["subsets"] = subs;
    return j;
}

namespace {

void render_table(std::ostringstream& os, const Json& t) {
    const Json& w = t["window"];
    os << "  window (a=" << w["a"] << ",b=" << w["b"] << ",g=" << w["g"] << "): " << t["overall"].get<std::string>() << "\n";
    for (const auto& l : t["local"]) {
        os << "    at " << l["prime"].get<std::string>() << ":";
        for (auto it = l["raw_invariants"].begin(); it != l["raw_invariants"].end(); ++it) {
            os << "  H^" << it.key() << "=";
            if (it.value().empty()) os << "0";
            for (size_t k = 0; k < it.value().size(); ++k) os << (k ? "+" : "") << it.value()[k].get<std::string>();
            os << " (" << l["status"][it.key()].get<std::string>() << ")";
        }
        os << "\n";
    }
    const Json& g = t["generic"];
    if (g["checked"].get<bool>()) {
        os << "    at (0):";
        for (auto it = g["ranks"].begin(); it != g["ranks"].end(); ++it) os << "  rank H^" << it.key() << "=" << it.value();
        os << "\n";
    } else {
        os << "    " << g["note"].get<std::string>() << "\n";
    }
}

void render_complex(std::ostringstream& os, const Json& c) {
    for (const auto& t : c["terms"]) os << "    " << t["degree"] << ": " << t["term"].get<std::string>() << "\n";
}

void render_value(std::ostringstream& os, const std::string& key, const Json& v, int indent);

void render_object(std::ostringstream& os, const Json& o, int indent) {
    for (auto it = o.begin(); it != o.end(); ++it) render_value(os, it.key(), it.value(), indent);
}

void render_value(std::ostringstream& os, const std::string& key, const Json& v, int indent) {
    std::string pad(static_cast<size_t>(indent), ' ');
    if (v.is_object() && v.contains("tables") && v.contains("status")) {
        os << pad << key << ": " << v["status"].get<std::string>();
        if (!v["detail"].get<std::string>().empty()) os << " (" << v["detail"].get<std::string>() << ")";
        os << "\n";
        for (const auto& t : v["tables"]) render_table(os, t);
    } else if (v.is_object() && v.contains("terms") && v.contains("d")) {
        os << pad << key << ":\n";
        render_complex(os, v);
    } else if (v.is_object() && v.contains("local") && v.contains("window")) {
        os << pad << key << ":\n";
        render_table(os, v);
    } else if (v.is_object()) {
        os << pad << key << ":\n";
        render_object(os, v, indent + 2);
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
        os << pad << key << ":\n";
        for (const auto& e : v) {
            if (e.contains("local") && e.contains("window")) {
                render_table(os, e);
            } else {
                os << pad << "  -\n";
                render_object(os, e, indent + 4);
            }
        }
    } else {
        os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

} // namespace

std::string render_text(const Json& report) {
    std::ostringstream os;
    os << "command: " << report["command"].get<std::string>() << "\n";
    os << "status: " << report["status"].get<std::string>() << "\n";
    if (report.contains("error")) os << "error: " << report["error"].get<std::string>() << "\n";
    if (report.contains("result")) render_object(os, report["result"], 0);
    return os.str();
}

} // namespace cosupp
