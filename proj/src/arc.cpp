#include "nfih/arc.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <sstream>

#include "nfih/errors.hpp"

namespace nfih {

WitnessArc::WitnessArc(std::vector<std::vector<ArcTerm>> coords, double epsilon)
    : coords_(std::move(coords)), epsilon_(epsilon) {}

std::vector<int> WitnessArc::exponents() const {
    std::vector<int> out;
    for (const auto& c : coords_) {
        int best = 0;
        bool any = false;
        for (const auto& t : c)
            if (std::abs(t.coeff) > 0 && (!any || t.exponent < best)) {
                best = t.exponent;
                any = true;
            }
        out.push_back(best);
    }
    return out;
}

bool WitnessArc::escapes() const {
    for (int e : exponents())
        if (e < 0) return true;
    return false;
}

std::vector<cd> WitnessArc::eval(double t) const {
    std::vector<cd> z;
    for (const auto& c : coords_) {
        cd s = 0;
        for (const auto& term : c) s += term.coeff * std::pow(t, term.exponent);
        z.push_back(s);
    }
    return z;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    if (std::abs(v) < 1e-12) v = 0;
    os << std::setprecision(12) << (v == 0 ? 0.0 : v);
    return os.str();
}

}  // namespace

std::string WitnessArc::to_string(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        out += names.at(j) + ":";
        if (coords_[j].empty()) out += " (0+0i)*t^0";
        for (std::size_t k = 0; k < coords_[j].size(); ++k) {
            const auto& t = coords_[j][k];
            double im = t.coeff.imag();
            out += (k ? " + (" : " (") + fmt(t.coeff.real()) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) +
                   "i)*t^" + std::to_string(t.exponent);
        }
        out += "\n";
    }
    return out;
}

namespace {

cd parse_complex(const std::string& s) {
    const char* p = s.c_str();
    char* end = nullptr;
    double re = std::strtod(p, &end);
    if (end == p) throw ParseError("bad complex number", 0);
    if (*end == 'i' && end[1] == '\0') return {0, re};
    if (*end == '\0') return {re, 0};
    const char* q = end;
    double im = std::strtod(q, &end);
    if (end == q || *end != 'i' || end[1] != '\0') throw ParseError("bad complex number", static_cast<std::size_t>(q - p));
    return {re, im};
}

}  // namespace

WitnessArc parse_arc(const std::string& text, const std::vector<std::string>& names) {
    std::map<std::string, std::vector<ArcTerm>> by_name;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto colon = line.find(':');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (colon == std::string::npos) throw ParseError("missing ':' in arc line", 0);
        std::string name = line.substr(0, colon);
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        std::vector<ArcTerm> terms;
        std::size_t pos = colon + 1;
        while (true) {
            auto open = line.find('(', pos);
            if (open == std::string::npos) break;
            auto close = line.find(')', open);
            auto caret = line.find("*t^", close);
            if (close == std::string::npos || caret != close + 1) throw ParseError("expected (c)*t^e", open);
            std::size_t endpos = caret + 3;
            char* stop = nullptr;
            long e = std::strtol(line.c_str() + endpos, &stop, 10);
            if (stop == line.c_str() + endpos) throw ParseError("missing exponent", endpos);
            terms.push_back({parse_complex(line.substr(open + 1, close - open - 1)), static_cast<int>(e)});
            pos = static_cast<std::size_t>(stop - line.c_str());
        }
        by_name[name] = terms;
    }
    std::vector<std::vector<ArcTerm>> coords;
    for (const auto& n : names) {
        auto it = by_name.find(n);
        if (it == by_name.end()) throw ParseError("arc is missing coordinate " + n, 0);
        coords.push_back(it->second);
    }
    return WitnessArc(coords);
}

}  // namespace nfih
