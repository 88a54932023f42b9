#include "cosupp/cli/scene.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace cosupp {

namespace {

[[noreturn]] void at(const YAML::Node& n, ErrorKind k, const std::string& what) {
    YAML::Mark m = n.Mark();
    if (m.line >= 0) fail(k, "line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ": " + what);
    fail(k, what);
}

// Runs fn and re-raises library errors with the node's position.
template <class Fn>
auto located(const YAML::Node& n, Fn fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        std::string what = e.what(), kind = std::string(error_kind_name(e.kind())) + ": ";
        if (what.rfind(kind, 0) == 0) what.erase(0, kind.size());
        at(n, e.kind(), what);
    }
}

void only_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& where) {
    if (!n.IsMap()) at(n, ErrorKind::Parse, where + " must be a mapping");
    for (auto it = n.begin(); it != n.end(); ++it) {
        std::string k = it->first.as<std::string>();
        if (!allowed.count(k)) at(it->first, ErrorKind::Parse, "unknown key '" + k + "' in " + where);
    }
}

std::string scalar(const YAML::Node& n, const std::string& what) {
    if (!n.IsScalar()) at(n, ErrorKind::Parse, what + " must be a scalar");
    return n.Scalar();
}

long integer(const YAML::Node& n, const std::string& what) {
    std::string s = scalar(n, what);
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        at(n, ErrorKind::Parse, what + " must be an integer, got '" + s + "'");
    }
}

std::vector<std::string> scalars(const YAML::Node& n, const std::string& what) {
    if (n.IsScalar()) return {n.Scalar()};
    if (!n.IsSequence()) at(n, ErrorKind::Parse, what + " must be a list");
    std::vector<std::string> out;
    for (const auto& x : n) out.push_back(scalar(x, what + " entry"));
    return out;
}

std::string canon_element(const std::string& text, const Ring& R) { return element_str(parse_element(text, R), R); }

MatrixText canon_matrix(const YAML::Node& n, const Ring& R, const std::string& what) {
    if (!n.IsSequence()) at(n, ErrorKind::Parse, what + " must be a list of rows");
    MatrixText m;
    for (const auto& row : n) {
        if (!row.IsSequence()) at(row, ErrorKind::Parse, what + " rows must be lists");
        std::vector<std::string> r;
        for (const auto& e : row) r.push_back(located(e, [&] { return canon_element(scalar(e, "matrix entry"), R); }));
        if (!m.empty() && r.size() != m[0].size()) at(row, ErrorKind::Parse, what + " rows have different lengths");
        m.push_back(r);
    }
    return m;
}

Window parse_window(const YAML::Node& n, const std::string& what) {
    only_keys(n, {"a", "b", "g"}, what);
    Window w;
    if (n["a"]) w.a = static_cast<int>(integer(n["a"], "a"));
    if (n["b"]) w.b = static_cast<int>(integer(n["b"], "b"));
    if (n["g"]) w.g = static_cast<int>(integer(n["g"], "g"));
    located(n, [&] {
        validate_window(w, true);
        return 0;
    });
    return w;
}

// Resolves a prime reference: a declared name or a literal like "(5)".
std::string canon_prime(const std::string& ref, const std::map<std::string, std::string>& names, const Ring& R) {
    auto it = names.find(ref);
    if (it != names.end()) return it->second;
    return prime_str(*parse_prime(ref, R));
}

// Splits at top-level occurrences of sep (outside brackets and parentheses).
std::vector<std::string> split_top(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth == 0 && s.compare(i, sep.size(), sep) == 0) {
            out.push_back(s.substr(start, i - start));
            i += sep.size() - 1;
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// index just past the bracket group opening at s[i]
size_t close_of(const std::string& s, size_t i) {
    int depth = 0;
    for (size_t j = i; j < s.size(); ++j) {
        if (s[j] == '(' || s[j] == '[') ++depth;
        if ((s[j] == ')' || s[j] == ']') && --depth == 0) return j + 1;
    }
    fail(ErrorKind::Parse, "unbalanced brackets in '" + s + "'");
}

} // namespace

Term parse_term(const std::string& text0, const SpecFragment& F) {
    const Ring& R = F.home();
    std::string text = trim(text0);
    Term out;
    if (text.empty() || text == "0") return out;
    for (std::string piece : split_top(text, " x ")) {
        piece = trim(piece);
        size_t i = 0;
        Base base;
        if (piece.compare(0, 2, "T[") == 0) {
            size_t e = close_of(piece, 1);
            Chain c;
            for (auto& ps : split_top(piece.substr(2, e - 3), ",")) {
                int k = F.index_of(trim(ps));
                if (k < 0) fail(ErrorKind::Validation, "prime " + trim(ps) + " is not in the fragment");
                c.push_back(k);
            }
            for (size_t k = 0; k + 1 < c.size(); ++k)
                if (!F.lt(c[k + 1], c[k])) fail(ErrorKind::Validation, "block chain in '" + piece + "' is not strictly decreasing");
            base = Base::block(c);
            i = e;
        } else if (piece[0] == 'Q') {
            base = Base::localized(complement_of(zero_prime(R)));
            i = 1;
        } else if (piece[0] == 'R') {
            i = 1;
            Localizer S;
            bool loc = false;
            if (piece.compare(i, 2, "_(") == 0) {
                size_t e = close_of(piece, i + 1);
                S.complement = parse_prime(piece.substr(i + 1, e - i - 1), R);
                loc = true;
                i = e;
            }
            if (i < piece.size() && piece[i] == '[') {
                size_t e = close_of(piece, i);
                for (auto& inv : split_top(piece.substr(i + 1, e - i - 2), ",")) {
                    std::string t = trim(inv);
                    if (t.compare(0, 2, "1/") != 0) fail(ErrorKind::Parse, "expected 1/element in '" + piece + "'");
                    S.inverted.push_back(parse_element(t.substr(2), R));
                }
                loc = true;
                i = e;
            }
            if (loc) base = Base::localized(S);
        } else {
            fail(ErrorKind::Parse, "unknown atom '" + piece + "' (expected R, Q or T[...])");
        }
        Element ann = ring_zero(R);
        if (piece.compare(i, 2, "/(") == 0) {
            size_t e = close_of(piece, i + 1);
            ann = parse_element(piece.substr(i + 2, e - i - 3), R);
            i = e;
        }
        long count = 1;
        if (i < piece.size() && piece[i] == '^') {
            try {
                count = std::stol(piece.substr(i + 1));
            } catch (const std::exception&) {
                fail(ErrorKind::Parse, "bad multiplicity in '" + piece + "'");
            }
            i = piece.size();
        }
        if (i != piece.size()) fail(ErrorKind::Parse, "trailing text in atom '" + piece + "'");
        if (count < 0) fail(ErrorKind::Parse, "negative multiplicity in '" + piece + "'");
        for (long k = 0; k < count; ++k) out.push_back(Atom{base, ann});
    }
    return out;
}

Mat parse_matrix(const MatrixText& m, const Ring& R) {
    size_t cols = m.empty() ? 0 : m[0].size();
    Mat M(m.size(), cols, ring_zero(R));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < cols; ++j) M(i, j) = parse_element(m[i][j], R);
    return M;
}

bool Scene::operator==(const Scene& o) const {
    auto same_w = [](const std::optional<Window>& a, const std::optional<Window>& b) {
        if (bool(a) != bool(b)) return false;
        return !a || (a->a == b->a && a->b == b->b && a->g == b->g);
    };
    return ring == o.ring && primes == o.primes && fragment == o.fragment && modules == o.modules && complexes == o.complexes &&
           subsets == o.subsets && same_w(window, o.window) && same_w(second, o.second) && command == o.command;
}

Scene parse_scene(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        fail(ErrorKind::Parse, "line " + std::to_string(e.mark.line + 1) + ", column " + std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    if (!root.IsMap()) fail(ErrorKind::Parse, "a scene is a mapping of stanzas");
    only_keys(root, {"ring", "primes", "fragment", "modules", "complexes", "subsets", "window", "second_window", "command"}, "scene");
    Scene s;
    if (!root["ring"]) fail(ErrorKind::Parse, "missing 'ring' stanza");
    Ring R = located(root["ring"], [&] { return parse_ring(scalar(root["ring"], "ring")); });
    s.ring = ring_str(R);

    if (auto P = root["primes"]) {
        if (!P.IsMap()) at(P, ErrorKind::Parse, "primes must map names to primes");
        for (auto it = P.begin(); it != P.end(); ++it) {
            std::string name = it->first.as<std::string>();
            s.primes[name] = located(it->second, [&] { return prime_str(*parse_prime(scalar(it->second, "prime"), R)); });
        }
    }

    if (!root["fragment"]) fail(ErrorKind::Parse, "missing 'fragment' stanza");
    for (const auto& p : root["fragment"]) s.fragment.push_back(located(p, [&] { return canon_prime(scalar(p, "fragment prime"), s.primes, R); }));
    if (!root["fragment"].IsSequence()) at(root["fragment"], ErrorKind::Parse, "fragment must be a list of primes");
    auto F = located(root["fragment"], [&] {
        std::vector<Prime> ps;
        for (auto& t : s.fragment) ps.push_back(parse_prime(t, R));
        return std::make_shared<const SpecFragment>(R, ps);
    });

    if (auto M = root["modules"]) {
        if (!M.IsMap()) at(M, ErrorKind::Parse, "modules must map names to declarations");
        for (auto it = M.begin(); it != M.end(); ++it) {
            std::string name = it->first.as<std::string>();
            const YAML::Node& n = it->second;
            only_keys(n, {"kind", "rank", "ann", "gens", "rel", "term"}, "module " + name);
            ModuleDecl d;
            if (!n["kind"]) at(n, ErrorKind::Parse, "module " + name + " needs a kind");
            d.kind = scalar(n["kind"], "kind");
            if (d.kind == "free") {
                d.rank = n["rank"] ? integer(n["rank"], "rank") : 1;
                if (d.rank < 0) at(n["rank"], ErrorKind::Validation, "rank must be non-negative");
            } else if (d.kind == "cyclic") {
                if (!n["ann"]) at(n, ErrorKind::Parse, "cyclic module " + name + " needs ann");
                d.ann = located(n["ann"], [&] { return canon_element(scalar(n["ann"], "ann"), R); });
            } else if (d.kind == "presented") {
                if (!n["gens"] || !n["rel"]) at(n, ErrorKind::Parse, "presented module " + name + " needs gens and rel");
                d.gens = integer(n["gens"], "gens");
                d.rel = canon_matrix(n["rel"], R, "rel");
                if (static_cast<long>(d.rel.size()) != d.gens && !(d.rel.empty()))
                    at(n["rel"], ErrorKind::Validation, "rel needs one row per generator");
            } else if (d.kind == "flat") {
                if (!n["term"]) at(n, ErrorKind::Parse, "flat module " + name + " needs term");
                d.term = located(n["term"], [&] { return term_str(*F, parse_term(scalar(n["term"], "term"), *F)); });
            } else {
                at(n["kind"], ErrorKind::Parse, "module kind must be free, cyclic, presented or flat");
            }
            s.modules[name] = d;
        }
    }

    if (auto C = root["complexes"]) {
        if (!C.IsMap()) at(C, ErrorKind::Parse, "complexes must map names to declarations");
        for (auto it = C.begin(); it != C.end(); ++it) {
            std::string name = it->first.as<std::string>();
            const YAML::Node& n = it->second;
            only_keys(n, {"lo", "terms", "modules", "d"}, "complex " + name);
            ComplexDecl d;
            if (n["lo"]) d.lo = static_cast<int>(integer(n["lo"], "lo"));
            if (bool(n["terms"]) == bool(n["modules"])) at(n, ErrorKind::Parse, "complex " + name + " needs exactly one of terms or modules");
            if (n["terms"]) {
                if (!n["terms"].IsSequence()) at(n["terms"], ErrorKind::Parse, "terms must be a list");
                for (const auto& t : n["terms"])
                    d.terms.push_back(located(t, [&] { return term_str(*F, parse_term(scalar(t, "term"), *F)); }));
            } else {
                for (auto& m : scalars(n["modules"], "modules")) {
                    if (!s.modules.count(m)) at(n["modules"], ErrorKind::Validation, "unknown module '" + m + "'");
                    if (s.modules[m].kind == "flat") at(n["modules"], ErrorKind::Validation, "module '" + m + "' is flat; use terms");
                    d.modules.push_back(m);
                }
            }
            if (n["d"]) {
                if (!n["d"].IsSequence()) at(n["d"], ErrorKind::Parse, "d must be a list of matrices");
                for (const auto& m : n["d"]) d.d.push_back(canon_matrix(m, R, "differential"));
            }
            if (s.modules.count(name)) at(it->first, ErrorKind::Validation, "name '" + name + "' is already a module");
            s.complexes[name] = d;
        }
    }

    if (auto S = root["subsets"]) {
        if (!S.IsMap()) at(S, ErrorKind::Parse, "subsets must map names to prime lists");
        for (auto it = S.begin(); it != S.end(); ++it) {
            std::string name = it->first.as<std::string>();
            std::vector<std::string> ps;
            if (it->second.IsScalar() && it->second.Scalar() == "all") {
                ps = s.fragment;
            } else {
                for (auto& t : scalars(it->second, "subset")) {
                    std::string c = located(it->second, [&] { return canon_prime(t, s.primes, R); });
                    if (std::find(s.fragment.begin(), s.fragment.end(), c) == s.fragment.end())
                        at(it->second, ErrorKind::Validation, "subset " + name + " contains " + c + ", which is not in the fragment");
                    ps.push_back(c);
                }
            }
            s.subsets[name] = ps;
        }
    }

    if (auto W = root["window"]) s.window = parse_window(W, "window");
    if (auto W = root["second_window"]) s.second = parse_window(W, "second_window");

    if (auto C = root["command"]) {
        only_keys(C, {"run", "input", "W", "W0", "W1", "x", "gens", "prime"}, "command");
        if (C["run"]) s.command.run = scalar(C["run"], "run");
        if (C["input"]) {
            s.command.input = scalar(C["input"], "input");
            if (!s.modules.count(s.command.input) && !s.complexes.count(s.command.input))
                at(C["input"], ErrorKind::Validation, "unknown input '" + s.command.input + "'");
        }
        for (const char* k : {"W", "W0", "W1"})
            if (C[k]) {
                std::string v = scalar(C[k], k);
                if (!s.subsets.count(v)) at(C[k], ErrorKind::Validation, "unknown subset '" + v + "'");
                s.command.subsets[k] = v;
            }
        if (C["x"]) s.command.x = located(C["x"], [&] { return canon_element(scalar(C["x"], "x"), R); });
        if (C["gens"])
            for (auto& g : scalars(C["gens"], "gens")) s.command.gens.push_back(located(C["gens"], [&] { return canon_element(g, R); }));
        if (C["prime"]) {
            std::string p = located(C["prime"], [&] { return canon_prime(scalar(C["prime"], "prime"), s.primes, R); });
            if (std::find(s.fragment.begin(), s.fragment.end(), p) == s.fragment.end())
                at(C["prime"], ErrorKind::Validation, "prime " + p + " is not in the fragment");
            s.command.prime = p;
        }
    }

    // resolve once so that every declaration is checked now
    try {
        build_scene(s);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        fail(ErrorKind::Validation, std::string(e.what()));
    }
    return s;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Validation, "cannot read scene file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str());
}

namespace {

void emit_matrix(YAML::Emitter& e, const MatrixText& m) {
    e << YAML::Flow << YAML::BeginSeq;
    for (auto& row : m) {
        e << YAML::Flow << YAML::BeginSeq;
        for (auto& x : row) e << YAML::DoubleQuoted << x;
        e << YAML::EndSeq;
    }
    e << YAML::EndSeq;
}

void emit_window(YAML::Emitter& e, const Window& w) {
    e << YAML::Flow << YAML::BeginMap << YAML::Key << "a" << YAML::Value << w.a << YAML::Key << "b" << YAML::Value << w.b
      << YAML::Key << "g" << YAML::Value << w.g << YAML::EndMap;
}

} // namespace

std::string print_scene(const Scene& s) {
    YAML::Emitter e;
    e << YAML::BeginMap;
    e << YAML::Key << "ring" << YAML::Value << YAML::DoubleQuoted << s.ring;
    if (!s.primes.empty()) {
        e << YAML::Key << "primes" << YAML::Value << YAML::BeginMap;
        for (auto& [k, v] : s.primes) e << YAML::Key << k << YAML::Value << YAML::DoubleQuoted << v;
        e << YAML::EndMap;
    }
    e << YAML::Key << "fragment" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto& p : s.fragment) e << YAML::DoubleQuoted << p;
    e << YAML::EndSeq;
    if (!s.modules.empty()) {
        e << YAML::Key << "modules" << YAML::Value << YAML::BeginMap;
        for (auto& [name, m] : s.modules) {
            e << YAML::Key << name << YAML::Value << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << m.kind;
            if (m.kind == "free") e << YAML::Key << "rank" << YAML::Value << m.rank;
            if (m.kind == "cyclic") e << YAML::Key << "ann" << YAML::Value << YAML::DoubleQuoted << m.ann;
            if (m.kind == "presented") {
                e << YAML::Key << "gens" << YAML::Value << m.gens << YAML::Key << "rel" << YAML::Value;
                emit_matrix(e, m.rel);
            }
            if (m.kind == "flat") e << YAML::Key << "term" << YAML::Value << YAML::DoubleQuoted << m.term;
            e << YAML::EndMap;
        }
        e << YAML::EndMap;
    }
    if (!s.complexes.empty()) {
        e << YAML::Key << "complexes" << YAML::Value << YAML::BeginMap;
        for (auto& [name, c] : s.complexes) {
            e << YAML::Key << name << YAML::Value << YAML::BeginMap << YAML::Key << "lo" << YAML::Value << c.lo;
            if (!c.modules.empty()) {
                e << YAML::Key << "modules" << YAML::Value << YAML::Flow << YAML::BeginSeq;
                for (auto& m : c.modules) e << m;
                e << YAML::EndSeq;
            } else {
                e << YAML::Key << "terms" << YAML::Value << YAML::BeginSeq;
                for (auto& t : c.terms) e << YAML::DoubleQuoted << t;
                e << YAML::EndSeq;
            }
            if (!c.d.empty()) {
                e << YAML::Key << "d" << YAML::Value << YAML::BeginSeq;
                for (auto& m : c.d) emit_matrix(e, m);
                e << YAML::EndSeq;
            }
            e << YAML::EndMap;
        }
        e << YAML::EndMap;
    }
    if (!s.subsets.empty()) {
        e << YAML::Key << "subsets" << YAML::Value << YAML::BeginMap;
        for (auto& [name, ps] : s.subsets) {
            e << YAML::Key << name << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (auto& p : ps) e << YAML::DoubleQuoted << p;
            e << YAML::EndSeq;
        }
        e << YAML::EndMap;
    }
    if (s.window) {
        e << YAML::Key << "window" << YAML::Value;
        emit_window(e, *s.window);
    }
    if (s.second) {
        e << YAML::Key << "second_window" << YAML::Value;
        emit_window(e, *s.second);
    }
    const CommandDecl& c = s.command;
    if (!(c == CommandDecl{})) {
        e << YAML::Key << "command" << YAML::Value << YAML::BeginMap;
        if (!c.run.empty()) e << YAML::Key << "run" << YAML::Value << c.run;
        if (!c.input.empty()) e << YAML::Key << "input" << YAML::Value << c.input;
        for (auto& [k, v] : c.subsets) e << YAML::Key << k << YAML::Value << v;
        if (!c.x.empty()) e << YAML::Key << "x" << YAML::Value << YAML::DoubleQuoted << c.x;
        if (!c.gens.empty()) {
            e << YAML::Key << "gens" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (auto& g : c.gens) e << YAML::DoubleQuoted << g;
            e << YAML::EndSeq;
        }
        if (!c.prime.empty()) e << YAML::Key << "prime" << YAML::Value << YAML::DoubleQuoted << c.prime;
        e << YAML::EndMap;
    }
    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

SceneObjects build_scene(const Scene& s) {
    SceneObjects o;
    o.R = parse_ring(s.ring);
    std::vector<Prime> ps;
    for (auto& t : s.fragment) ps.push_back(parse_prime(t, o.R));
    o.F = std::make_shared<const SpecFragment>(o.R, ps);
    const SpecFragment& F = *o.F;
    auto fg = [&](const ModuleDecl& m) -> FgModule {
        if (m.kind == "free") return FgModule::free(o.R, static_cast<size_t>(m.rank));
        if (m.kind == "cyclic") return FgModule::cyclic(o.R, parse_element(m.ann, o.R));
        Mat rel = m.rel.empty() ? Mat(static_cast<size_t>(m.gens), 0, ring_zero(o.R)) : parse_matrix(m.rel, o.R);
        return FgModule::presented(static_cast<size_t>(m.gens), rel);
    };
    for (auto& [name, m] : s.modules) {
        if (m.kind == "flat")
            o.inputs[name] = concentrated(o.F, parse_term(m.term, F));
        else
            o.inputs[name] = fg_complex(o.F, 0, {fg(m)}, {});
    }
    for (auto& [name, c] : s.complexes) {
        std::vector<Mat> d;
        for (auto& m : c.d) d.push_back(parse_matrix(m, o.R));
        Complex X;
        if (!c.modules.empty()) {
            std::vector<FgModule> mods;
            for (auto& m : c.modules) mods.push_back(fg(s.modules.at(m)));
            X = fg_complex(o.F, c.lo, mods, d);
        } else {
            std::vector<Term> terms;
            for (auto& t : c.terms) terms.push_back(parse_term(t, F));
            if (d.size() + 1 > terms.size() && !d.empty())
                fail(ErrorKind::Validation, "complex " + name + " has more differentials than gaps between terms");
            X = make_complex(o.F, c.lo, terms, d);
            for (auto check : {check_d2(X), check_canonical(X)})
                if (!check.empty()) fail(ErrorKind::Validation, "complex " + name + ": " + check);
        }
        o.inputs[name] = X;
    }
    for (auto& [name, ps2] : s.subsets) {
        std::vector<int> idx;
        for (auto& p : ps2) idx.push_back(F.index_of(p));
        o.subsets[name] = make_subset(idx);
    }
    return o;
}

std::vector<Window> certificate_windows(const Scene& s, const std::optional<Window>& override_w) {
    Window w = override_w ? *override_w : s.window.value_or(Window{});
    Window w2 = s.second && !override_w ? *s.second : Window{w.a + 2, w.b + 4, w.g};
    return {w, w2};
}

} // namespace cosupp
