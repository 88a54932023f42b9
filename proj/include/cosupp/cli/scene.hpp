#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosupp/cech/cech.hpp"

namespace cosupp {

// Declarations as written in a scene file, with every ring element, prime
// and term stored in canonical printed form. Two scenes are equal when
// their canonical declarations are.
using MatrixText = std::vector<std::vector<std::string>>;

struct ModuleDecl {
    std::string kind;  // free | cyclic | presented | flat
    long rank = 0;     // free
    std::string ann;   // cyclic
    long gens = 0;     // presented
    MatrixText rel;    // presented: gens rows, one column per relation
    std::string term;  // flat
    bool operator==(const ModuleDecl&) const = default;
};

struct ComplexDecl {
    int lo = 0;
    std::vector<std::string> terms;    // flat terms, or
    std::vector<std::string> modules;  // names of f.g. modules
    std::vector<MatrixText> d;
    bool operator==(const ComplexDecl&) const = default;
};

struct CommandDecl {
    std::string run;
    std::string input;
    std::map<std::string, std::string> subsets;  // W, W0, W1 -> subset name
    std::string x;                               // element for the adelic triangle
    std::vector<std::string> gens;               // generators for the element Cech oracle
    std::string prime;                           // restricts support/cosupport scans
    bool operator==(const CommandDecl&) const = default;
};

struct Scene {
    std::string ring;
    std::map<std::string, std::string> primes;  // name -> canonical prime
    std::vector<std::string> fragment;
    std::map<std::string, ModuleDecl> modules;
    std::map<std::string, ComplexDecl> complexes;
    std::map<std::string, std::vector<std::string>> subsets;  // canonical primes
    std::optional<Window> window, second;
    CommandDecl command;
    bool operator==(const Scene& o) const;
};

// Resolved objects.
struct SceneObjects {
    Ring R;
    FragPtr F;
    std::map<std::string, Complex> inputs;  // modules and complexes by name
    std::map<std::string, Subset> subsets;
};

Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);
std::string print_scene(const Scene& s);
SceneObjects build_scene(const Scene& s);

// Term literal such as "R^2 x T[(2),(0)] x R_(5)[1/6]/(3)"; "0" is empty.
Term parse_term(const std::string& text, const SpecFragment& F);
Mat parse_matrix(const MatrixText& m, const Ring& R);

// Windows used for certificates: the scene window and a second, larger one.
std::vector<Window> certificate_windows(const Scene& s, const std::optional<Window>& override_w);

} // namespace cosupp
