#include "tdmech/graded.hpp"

#include <algorithm>
#include <sstream>

#include "tdmech/errors.hpp"

namespace tdmech {

int GradedMonomial::parity() const {
    int par = 0;
    for (const auto& [g, mult] : factors)
        if (g.odd()) par ^= (mult & 1);
    return par;
}

int GradedMonomial::antighost_number() const {
    int deg = 0;
    for (const auto& [g, mult] : factors)
        if (g.kind == Generator::Kind::Antighost) deg += g.level * mult;
    return deg;
}

void GradedElement::add(const GradedMonomial& mono, const Poly& coeff) {
    if (coeff.is_zero()) return;
    if (coeff.num_q() != num_q || coeff.num_p() != num_p)
        throw DimensionError("graded element coefficient signature mismatch");
    auto it = terms.find(mono);
    if (it == terms.end()) {
        terms.emplace(mono, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms.erase(it);
    }
}

bool GradedElement::operator==(const GradedElement& o) const {
    return num_q == o.num_q && num_p == o.num_p && terms == o.terms;
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
    if (num_q != o.num_q || num_p != o.num_p) throw DimensionError("graded element signature mismatch");
    for (const auto& [m, c] : o.terms) add(m, c);
    return *this;
}

GradedElement GradedElement::operator+(const GradedElement& o) const {
    GradedElement r = *this;
    r += o;
    return r;
}

GradedElement GradedElement::operator-(const GradedElement& o) const {
    GradedElement r = *this;
    r += o.scaled(-1);
    return r;
}

GradedElement GradedElement::scaled(const Rational& c) const {
    GradedElement r(num_q, num_p);
    if (c == 0) return r;
    for (const auto& [m, p] : terms) r.terms.emplace(m, p.scaled(c));
    return r;
}

GradedElement element_from_poly(const Poly& coeff) {
    GradedElement r(coeff.num_q(), coeff.num_p());
    r.add(GradedMonomial{}, coeff);
    return r;
}

GradedElement element_from_generator(int num_q, int num_p, Generator g) {
    GradedElement r(num_q, num_p);
    r.add(GradedMonomial{{{g, 1}}}, Poly::constant(num_q, num_p, 1));
    return r;
}

namespace {

// Merges two normal-ordered factor lists; reports the Koszul sign, or false
// when an odd generator squares to zero.
bool merge_monomials(const GradedMonomial& a, const GradedMonomial& b, GradedMonomial& out, int& sign) {
    sign = 1;
    out.factors.clear();
    // Odd factors of a, kept sorted, for counting crossings.
    std::vector<Generator> odd_a;
    for (const auto& [g, mult] : a.factors)
        if (g.odd()) odd_a.push_back(g);

    for (const auto& [g, mult] : b.factors) {
        if (g.odd()) {
            // Crossing every odd factor of a strictly greater than g.
            size_t greater = odd_a.end() - std::upper_bound(odd_a.begin(), odd_a.end(), g);
            if (greater % 2 == 1) sign = -sign;
        }
    }

    size_t i = 0;
    auto push = [&](Generator g, int mult) {
        if (!out.factors.empty() && out.factors.back().first == g)
            out.factors.back().second += mult;
        else
            out.factors.emplace_back(g, mult);
    };
    for (const auto& [g, mult] : b.factors) {
        while (i < a.factors.size() && a.factors[i].first < g) {
            push(a.factors[i].first, a.factors[i].second);
            ++i;
        }
        if (i < a.factors.size() && a.factors[i].first == g) {
            if (g.odd()) return false;
            push(g, a.factors[i].second + mult);
            ++i;
        } else {
            push(g, mult);
        }
    }
    for (; i < a.factors.size(); ++i) push(a.factors[i].first, a.factors[i].second);
    return true;
}

}  // namespace

GradedElement graded_mul(const GradedElement& a, const GradedElement& b) {
    if (a.num_q != b.num_q || a.num_p != b.num_p) throw DimensionError("graded element signature mismatch");
    GradedElement r(a.num_q, a.num_p);
    GradedMonomial merged;
    int sign = 0;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            if (!merge_monomials(ma, mb, merged, sign)) continue;
            Poly coeff = ca * cb;
            if (sign < 0) coeff = -coeff;
            r.add(merged, coeff);
        }
    return r;
}

GradedElement left_derivative(const GradedElement& x, Generator g) {
    GradedElement r(x.num_q, x.num_p);
    for (const auto& [mono, coeff] : x.terms) {
        int odd_before = 0;
        for (size_t i = 0; i < mono.factors.size(); ++i) {
            const auto& [f, mult] = mono.factors[i];
            if (f == g) {
                GradedMonomial rest = mono;
                if (mult == 1)
                    rest.factors.erase(rest.factors.begin() + static_cast<long>(i));
                else
                    rest.factors[i].second = mult - 1;
                Poly c = coeff.scaled(mult);
                if (g.odd() && odd_before % 2 == 1) c = -c;
                r.add(rest, c);
                break;
            }
            if (f.odd()) odd_before += mult;
        }
    }
    return r;
}

std::string render(const GradedElement& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : x.terms) {
        if (!first) os << " + ";
        first = false;
        std::string cs = coeff.to_string();
        if (coeff.terms().size() > 1) cs = "(" + cs + ")";
        os << cs;
        for (const auto& [g, mult] : mono.factors) {
            os << "*" << (g.kind == Generator::Kind::Ghost ? "cb" : "c") << "[" << g.index << "," << g.level << "]"
               << "^" << mult;
        }
    }
    return os.str();
}

}  // namespace tdmech
