#include "bpb/spacespec.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace bpb {

namespace {

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad number: " + s);
    }
    if (pos != s.size()) throw ParseError("bad number: " + s);
    return v;
}

const std::vector<std::string> kKinds = {"line",   "linf2",  "l1-2",    "lp",      "euclidean",
                                         "l1sum",  "linfsum", "diamond", "polytopal"};

}  // namespace

NormedSpace SpaceSpec::build() const {
    if (kind == "polytopal") {
        if (vertices.empty()) throw ParseError("polytopal spec without vertices");
        return NormedSpace::make_polytopal(SymmetricPolytope(vertices));
    }
    return NormedSpace::catalog(kind, params);
}

std::string SpaceSpec::print() const {
    std::ostringstream out;
    out << "bpbspace 1\n";
    out << "kind " << kind << "\n";
    if (kind == "diamond") out << "eps " << fmt_double(params.eps) << "\n";
    if (kind == "lp") out << "p " << fmt_double(params.p) << "\n";
    if (kind == "lp" || kind == "euclidean") out << "n " << params.n << "\n";
    if (kind == "l1sum" || kind == "linfsum")
        for (const std::string& part : params.parts) out << "part " << part << "\n";
    if (kind == "polytopal") {
        out << "dim " << dim << "\n";
        for (const Vec& v : vertices) {
            out << "vertex";
            for (double c : v) out << " " << fmt_double(c);
            out << "\n";
        }
    }
    return out.str();
}

std::uint64_t SpaceSpec::hash() const {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : print()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

SpaceSpec SpaceSpec::parse(std::istream& in) {
    SpaceSpec spec;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (!header_seen) {
            int version = -1;
            if (key != "bpbspace" || !(ls >> version) || version != 1)
                throw ParseError("expected header 'bpbspace 1'");
            header_seen = true;
            continue;
        }
        if (key == "kind") {
            ls >> spec.kind;
            bool known = false;
            for (const auto& k : kKinds) known = known || k == spec.kind;
            if (!known) throw ParseError("unknown kind: " + spec.kind);
        } else if (key == "eps") {
            std::string v;
            ls >> v;
            spec.params.eps = parse_double(v);
        } else if (key == "p") {
            std::string v;
            ls >> v;
            spec.params.p = parse_double(v);
        } else if (key == "n") {
            if (!(ls >> spec.params.n)) throw ParseError("bad n");
        } else if (key == "part") {
            std::string part;
            ls >> part;
            if (part.empty()) throw ParseError("empty part name");
            spec.params.parts.push_back(part);
        } else if (key == "dim") {
            if (!(ls >> spec.dim)) throw ParseError("bad dim");
        } else if (key == "vertex") {
            Vec v;
            std::string tok;
            while (ls >> tok) v.push_back(parse_double(tok));
            if (spec.dim > 0 && static_cast<int>(v.size()) != spec.dim)
                throw ParseError("vertex arity does not match dim");
            spec.vertices.push_back(std::move(v));
        } else {
            throw ParseError("unknown key: " + key);
        }
    }
    if (!header_seen) throw ParseError("empty spec file");
    if (spec.kind.empty()) throw ParseError("spec without kind");
    return spec;
}

SpaceSpec SpaceSpec::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

SpaceSpec SpaceSpec::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file: " + path);
    return parse(in);
}

SpaceSpec SpaceSpec::dual() const {
    SpaceSpec d;
    if (kind == "line" || kind == "euclidean") {
        d = *this;
        return d;
    }
    if (kind == "lp") {
        d.kind = "lp";
        d.params.n = params.n;
        double p = params.p;
        d.params.p = p == 1.0 ? std::numeric_limits<double>::infinity()
                              : (std::isinf(p) ? 1.0 : p / (p - 1.0));
        return d;
    }
    if (kind == "l1sum" || kind == "linfsum") {
        d.kind = kind == "l1sum" ? "linfsum" : "l1sum";
        for (const std::string& part : params.parts) {
            if (part == "linf2")
                d.params.parts.push_back("l1-2");
            else if (part == "l1-2")
                d.params.parts.push_back("linf2");
            else
                d.params.parts.push_back(part);  // line, euclidean are self-dual
        }
        return d;
    }
    // linf2, l1-2, diamond, polytopal: emit the polar vertex list.
    NormedSpace S = build();
    d.kind = "polytopal";
    d.dim = S.dim();
    d.vertices = S.geometry().polar_ball.vertices();
    return d;
}

}  // namespace bpb
